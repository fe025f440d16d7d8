from __future__ import annotations

import pytest

from ideal_quasi.errors import DomainError, IdealSpecError, RankRangeError
from ideal_quasi.root_systems import (
    basis_change_matrix,
    build_positive_system,
    coefficient_matrix,
    hasse_covers,
    is_degenerate_rank,
)


@pytest.mark.parametrize(
    ("rs_type", "rank", "expected"),
    [("A", 3, 6), ("A", 4, 10), ("B", 5, 25), ("C", 4, 16), ("D", 3, 6), ("D", 5, 20)],
)
def test_positive_system_sizes(rs_type: str, rank: int, expected: int) -> None:
    assert len(build_positive_system(rs_type, rank).roots) == expected


def test_heights_follow_placement_rules() -> None:
    b5 = build_positive_system("B", 5)
    c5 = build_positive_system("C", 5)
    d5 = build_positive_system("D", 5)
    assert b5.parse_root("e1+e2").height == 9
    assert b5.parse_root("e3").height == 3
    assert c5.parse_root("2e3").height == 5
    assert c5.parse_root("e1+e2").height == 8
    assert d5.parse_root("e1+e2").height == 7
    assert d5.parse_root("e4+e5").height == 1
    assert all(root.height == root.j - root.i for root in d5.roots if root.kind == "diff")


def test_roots_are_sorted_by_height() -> None:
    heights = [root.height for root in build_positive_system("C", 4).roots]
    assert heights == sorted(heights)


def test_simple_roots_have_unit_coordinates() -> None:
    for rs_type, rank in (("A", 3), ("B", 3), ("C", 3), ("D", 4)):
        system = build_positive_system(rs_type, rank)
        simple = system.simple_roots()
        assert len(simple) == rank
        assert sorted(r.simple_coords.index(1) for r in simple) == list(range(rank))


@pytest.mark.parametrize(("rs_type", "rank", "det"), [("A", 3, None), ("B", 4, 1), ("C", 3, 2), ("D", 4, 2)])
def test_orthonormal_matrix_is_basis_change_of_simple_matrix(rs_type: str, rank: int, det: int | None) -> None:
    system = build_positive_system(rs_type, rank)
    t_matrix = coefficient_matrix(system.roots, "orthonormal")
    s_matrix = coefficient_matrix(system.roots, "simple")
    p_matrix = basis_change_matrix(rs_type, rank)
    assert p_matrix.to_sympy() * s_matrix.to_sympy() == t_matrix.to_sympy()
    if det is not None:
        assert abs(p_matrix.to_sympy().det()) == det


def test_type_a_uses_rank_plus_one_coordinates() -> None:
    system = build_positive_system("A", 2)
    assert coefficient_matrix(system.roots, "orthonormal").rows == 3
    assert coefficient_matrix(system.roots, "simple").rows == 2


def test_rank_ranges() -> None:
    with pytest.raises(RankRangeError):
        build_positive_system("B", 1)
    with pytest.raises(RankRangeError):
        build_positive_system("D", 2)
    with pytest.raises(RankRangeError):
        build_positive_system("E", 6)
    assert len(build_positive_system("D", 2, allow_degenerate=True).roots) == 2
    assert len(build_positive_system("C", 1, allow_degenerate=True).roots) == 1
    assert is_degenerate_rank("B", 1)
    with pytest.raises(RankRangeError):
        build_positive_system("D", 1, allow_degenerate=True)
    assert not is_degenerate_rank("A", 1)


def test_coefficient_matrix_rejects_mixed_or_unowned_lists() -> None:
    b3 = build_positive_system("B", 3)
    c3 = build_positive_system("C", 3)
    with pytest.raises(DomainError):
        coefficient_matrix([b3.roots[0], c3.roots[0]])
    with pytest.raises(DomainError):
        coefficient_matrix([])
    empty = coefficient_matrix([], system=b3)
    assert (empty.rows, empty.cols) == (3, 0)


def test_parse_root_literals() -> None:
    c3 = build_positive_system("C", 3)
    assert c3.parse_root("2e1").kind == "long"
    assert c3.parse_root(" e1-e3 ").literal == "e1-e3"
    with pytest.raises(IdealSpecError):
        c3.parse_root("e1")
    with pytest.raises(IdealSpecError):
        build_positive_system("D", 3).parse_root("x1")


def test_dominance_and_hasse_covers_in_b2() -> None:
    b2 = build_positive_system("B", 2)
    top = b2.parse_root("e1+e2")
    assert top.dominates(b2.parse_root("e2"))
    assert not b2.parse_root("e2").dominates(b2.parse_root("e1-e2"))
    covers = {(upper.literal, lower.literal) for upper, lower in hasse_covers(b2)}
    assert covers == {("e1", "e1-e2"), ("e1", "e2"), ("e1+e2", "e1")}


@pytest.mark.parametrize("rs_type", ["A", "B", "C", "D"])
def test_every_higher_root_covers_a_root_one_level_down(rs_type: str) -> None:
    for rank in range(3, 7):
        system = build_positive_system(rs_type, rank)
        assert len(system.simple_roots()) == rank
        for upper in system.roots:
            if upper.height < 2:
                continue
            below = [lower for lower in system.roots if lower.height == upper.height - 1]
            assert any(upper.dominates(lower) for lower in below), upper.literal
