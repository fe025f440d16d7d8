from __future__ import annotations

import itertools

import pytest

from conftest import make_ideal
from ideal_quasi.errors import CapacityError, DomainError, IdealSpecError, TypeACase, UnsupportedTypeError
from ideal_quasi.ideals import (
    Ideal,
    b_partition,
    contraction_list,
    count_ideals_brute_force,
    d_parameter_s,
    derived_ideals_D,
    dual_partition,
    enumerate_ideals,
    height_distribution,
    ideal_from_generators,
    ideal_from_height_cut,
    ideal_from_signed_graph,
    ideal_generators,
    is_ideal,
    parse_ideal_spec,
    reduction,
    rehouse,
    row_chain,
    signed_graph,
    strip_loops,
    tau,
    u_signed_graphs,
)
from ideal_quasi.root_systems import build_positive_system
from ideal_quasi.runtime_constants import MIN_RANK


@pytest.mark.parametrize(
    ("rs_type", "rank", "expected"),
    [("A", 2, 5), ("A", 3, 14), ("B", 2, 6), ("C", 2, 6), ("B", 3, 20), ("D", 3, 14), ("D", 4, 50)],
)
def test_enumeration_matches_brute_force(rs_type: str, rank: int, expected: int) -> None:
    system = build_positive_system(rs_type, rank)
    ideals = list(enumerate_ideals(system))
    assert len(ideals) == expected
    assert count_ideals_brute_force(system) == expected
    assert len({ideal.mask for ideal in ideals}) == expected


@pytest.mark.parametrize(
    ("rs_type", "rank", "expected"),
    [("A", 4, 42), ("B", 4, 70), ("C", 4, 70), ("D", 5, 182), ("B", 5, 252)],
)
def test_enumeration_counts(rs_type: str, rank: int, expected: int) -> None:
    assert sum(1 for _ in enumerate_ideals(build_positive_system(rs_type, rank))) == expected


def test_enumeration_guard() -> None:
    with pytest.raises(CapacityError):
        list(enumerate_ideals(build_positive_system("B", 3), guard=5))


def test_every_enumerated_subset_is_closed() -> None:
    system = build_positive_system("C", 3)
    assert all(is_ideal(ideal.members, system) for ideal in enumerate_ideals(system))
    assert not is_ideal([system.parse_root("e1+e2")], system)


def test_height_cut_of_b5(b5_height_cut: Ideal) -> None:
    assert b5_height_cut.size == 23
    assert height_distribution(b5_height_cut) == (5, 4, 4, 3, 3, 2, 2)
    assert dual_partition(b5_height_cut).d == (7, 7, 5, 3, 1)


def test_dual_partition_examples(c5_enclosed: Ideal, d5_height_cut: Ideal) -> None:
    assert dual_partition(c5_enclosed).d == (6, 5, 4, 3, 1)
    assert dual_partition(d5_height_cut).d == (6, 5, 4, 3, 1)
    assert dual_partition(make_ideal("B", 3, "gen:e1-e3")).d == (2, 1, 0)
    assert dual_partition(make_ideal("B", 4)).d == (7, 5, 3, 1)
    assert dual_partition(make_ideal("D", 4, "ht<=0")).d == (0, 0, 0, 0)


def test_signed_graph_examples(c5_enclosed: Ideal, d5_height_cut: Ideal) -> None:
    assert signed_graph(d5_height_cut).p == (7, 6, 4, 2, 0)
    assert d5_height_cut.size == 19
    summary = signed_graph(c5_enclosed)
    assert summary.p == (4, 6, 5, 3, 1)
    assert summary.p_zero == (0, 0, 1, 1, 1)
    with pytest.raises(UnsupportedTypeError):
        signed_graph(make_ideal("A", 3))


def test_generators_round_trip(b5_height_cut: Ideal) -> None:
    assert [r.literal for r in ideal_generators(b5_height_cut)] == ["e1+e4", "e2+e3"]
    assert b5_height_cut.spec_text == "gen:e1+e4,e2+e3"
    again = parse_ideal_spec(b5_height_cut.system, b5_height_cut.spec_text)
    assert again == b5_height_cut
    assert str(again) == "B5[gen:e1+e4,e2+e3]"


def test_parse_ideal_spec_grammar() -> None:
    system = build_positive_system("D", 4)
    assert parse_ideal_spec(system, "ht<=0").size == 0
    assert parse_ideal_spec(system, "ht <= 1").size == 4
    assert parse_ideal_spec(system, "gen:").size == 0
    assert parse_ideal_spec(system, "gen:e1+e2").mask == system.full_mask
    with pytest.raises(IdealSpecError):
        parse_ideal_spec(system, "")
    with pytest.raises(IdealSpecError):
        parse_ideal_spec(system, "gen:e1")


def test_generators_close_downward() -> None:
    system = build_positive_system("B", 3)
    ideal = ideal_from_generators(system, [system.parse_root("e1")])
    assert {r.literal for r in ideal.members} == {"e1", "e2", "e3", "e1-e2", "e1-e3", "e2-e3"}
    assert system.parse_root("e2") in ideal
    assert ideal.has("short", 3)
    assert not ideal.has("sum", 2, 3)


def test_b_partition_and_strip_loops(b5_height_cut: Ideal) -> None:
    parts = b_partition(b5_height_cut)
    assert (len(parts.loops), len(parts.minus), len(parts.plus)) == (5, 10, 8)
    stripped = strip_loops(b5_height_cut)
    assert stripped.system.label == "D5"
    assert stripped.size == 18
    assert dual_partition(stripped).d == (5, 5, 4, 3, 1)
    with pytest.raises(DomainError):
        strip_loops(make_ideal("B", 3, "ht<=1"))


def test_rehouse_shifts_indices() -> None:
    c3 = build_positive_system("C", 3)
    source = make_ideal("C", 5, "gen:2e3")
    moved = rehouse([r for r in source.members if r.i >= 3], c3, shift=2)
    assert moved.mask == c3.full_mask


def test_reduction_of_c_example(c5_enclosed: Ideal) -> None:
    red = reduction(c5_enclosed)
    assert red.pivot == 3
    assert red.prefix_factors == (4, 6)
    assert red.reduced.system.label == "C3"
    assert red.reduced.mask == red.reduced.system.full_mask


def test_reduction_of_b_example(b5_height_cut: Ideal) -> None:
    red = reduction(b5_height_cut)
    assert red.pivot == 1
    assert red.prefix_factors == ()
    assert red.reduced == b5_height_cut


def test_reduction_signals() -> None:
    with pytest.raises(TypeACase) as plain:
        reduction(make_ideal("B", 3, "ht<=1"))
    assert not plain.value.sign_flip
    with pytest.raises(TypeACase) as flipped:
        reduction(make_ideal("D", 5, "gen:e4+e5"))
    assert flipped.value.sign_flip
    red = reduction(make_ideal("D", 4, "gen:e2+e3,e1-e4"))
    assert red.pivot == 2
    assert red.reduced.system.label == "D3"


def test_row_chains_and_signed_graph_reconstruction() -> None:
    b4 = build_positive_system("B", 4)
    assert [r.literal for r in row_chain(b4, 3)] == ["e3-e4", "e3", "e3+e4"]
    c3 = build_positive_system("C", 3)
    assert [r.literal for r in row_chain(c3, 2)] == ["e2-e3", "e2+e3", "2e2"]
    assert ideal_from_signed_graph(b4, (7, 5, 3, 1)).mask == b4.full_mask
    partial = ideal_from_signed_graph(b4, (6, 5, 3, 1))
    assert b4.parse_root("e1+e2") not in partial
    assert signed_graph(partial).p == (6, 5, 3, 1)
    with pytest.raises(DomainError):
        ideal_from_signed_graph(b4, (7, 0, 3, 1))


def test_d_derived_ideals_of_height_cut(d5_height_cut: Ideal) -> None:
    assert d_parameter_s(d5_height_cut) == 3
    assert u_signed_graphs(d5_height_cut) == (
        (7, 5, 3, 1),
        (7, 5, 3, 1),
        (6, 5, 3, 1),
        (6, 5, 3, 1),
        (6, 5, 3, 1),
    )
    derived = derived_ideals_D(d5_height_cut)
    assert derived.k_ideal.system.label == "B5"
    assert dual_partition(derived.k_ideal).d == (8, 7, 5, 3, 1)
    assert [signed_graph(u).p for u in derived.u_ideals] == list(u_signed_graphs(d5_height_cut))
    assert dual_partition(derived.u_ideals[0]).d == (7, 5, 3, 1)
    assert dual_partition(derived.u_ideals[2]).d == (6, 5, 3, 1)


def test_contraction_list_shape(d5_height_cut: Ideal) -> None:
    a_matrix = contraction_list(d5_height_cut, 2)
    assert a_matrix.rows == 4
    assert a_matrix.cols == d5_height_cut.size + 3
    with pytest.raises(DomainError):
        contraction_list(d5_height_cut, 6)


def test_derived_ideals_need_outer_sum_root() -> None:
    with pytest.raises(DomainError):
        derived_ideals_D(make_ideal("D", 4, "ht<=2"))


def test_height_cut_bounds() -> None:
    system = build_positive_system("C", 3)
    assert ideal_from_height_cut(system, 5).mask == system.full_mask
    assert ideal_from_height_cut(system, 2) == parse_ideal_spec(system, "ht<=2")
    with pytest.raises(DomainError):
        ideal_from_height_cut(system, -1)


def _ideals_up_to_rank_four(rs_type: str) -> list[Ideal]:
    found: list[Ideal] = []
    for rank in range(MIN_RANK[rs_type], 5):
        found.extend(enumerate_ideals(build_positive_system(rs_type, rank)))
    return found


@pytest.mark.parametrize("rs_type", ["A", "B", "C", "D"])
def test_dual_partition_and_signed_graph_sum_to_size(rs_type: str) -> None:
    for ideal in _ideals_up_to_rank_four(rs_type):
        assert sum(dual_partition(ideal).d) == ideal.size
        if rs_type != "A":
            assert sum(signed_graph(ideal).p) == ideal.size


@pytest.mark.parametrize("rs_type", ["B", "C"])
def test_dual_partition_equals_signed_graph_as_multisets(rs_type: str) -> None:
    for ideal in _ideals_up_to_rank_four(rs_type):
        assert dual_partition(ideal).d == tuple(sorted(signed_graph(ideal).p, reverse=True)), str(ideal)


def test_d_ideals_with_outer_roots_have_full_minus_rows() -> None:
    seen = 0
    for ideal in _ideals_up_to_rank_four("D"):
        rank = ideal.system.rank
        if not (ideal.has("sum", 1, rank) and ideal.has("diff", 1, rank)):
            continue
        seen += 1
        minus = signed_graph(ideal).p_minus
        assert [minus[i - 1] for i in range(1, rank)] == [rank - i for i in range(1, rank)], str(ideal)
    assert seen > 0


def test_tau_is_monotone() -> None:
    for ideal in _ideals_up_to_rank_four("D"):
        rank = ideal.system.rank
        for n in range(1, rank + 1):
            for k in range(n + 1, rank + 1):
                if n + 1 < k:
                    assert tau(ideal, n, k) <= tau(ideal, n + 1, k), (str(ideal), n, k)
                if k < rank:
                    assert tau(ideal, n, k) <= tau(ideal, n, k + 1), (str(ideal), n, k)


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_row_chain_prefixes_with_full_tail_rows_are_ideals(rank: int) -> None:
    system = build_positive_system("B", rank)
    built = 0
    for s in range(2, rank + 1):
        tail = [2 * (rank - i) + 1 for i in range(s - 1, rank + 1)]
        heads = [range(2 * (rank - i) + 2) for i in range(1, s - 1)]
        for head in itertools.product(*heads):
            sg = (*head, *tail)
            if any(sg[i - 1] > sg[i] + 1 for i in range(1, s - 2)):
                continue
            ideal = ideal_from_signed_graph(system, sg)
            assert is_ideal(ideal.members, system)
            pairs = [(i, j) for i in range(s - 1, rank + 1) for j in range(i + 1, rank + 1)]
            assert all(ideal.has("diff", i, j) and ideal.has("sum", i, j) for i, j in pairs)
            built += 1
    assert built > 0
