from __future__ import annotations

import pytest

from conftest import make_ideal
from ideal_quasi.closed_forms import (
    F_C_even,
    F_D_even,
    chi_B,
    chi_C,
    chi_D,
    chi_quasi_ideal,
    chi_type_A,
    d_even_summands,
    dp_product,
    oracle_quasi_ideal,
    shifted_offsets,
)
from ideal_quasi.errors import DispatchError, DomainError, UnsupportedTypeError
from ideal_quasi.ideals import Ideal
from ideal_quasi.quasipoly import IntegerPolynomial, QuasiPolynomial

roots = IntegerPolynomial.from_roots
D5_CUBIC = IntegerPolynomial((-51, 51, -13, 1))


def test_b_height_cut_constituents(b5_height_cut: Ideal) -> None:
    assert chi_B(b5_height_cut, "odd") == roots([7, 7, 5, 3, 1])
    assert chi_B(b5_height_cut, "even") == roots([2, 4, 5, 6, 6])
    expected = QuasiPolynomial(2, (roots([7, 7, 5, 3, 1]), roots([2, 4, 5, 6, 6])))
    for lattice in ("T", "S"):
        assert chi_quasi_ideal(b5_height_cut, lattice, cross_check=False) == expected


def test_c_enclosed_constituents(c5_enclosed: Ideal) -> None:
    assert chi_C(c5_enclosed, "odd", "S") == roots([6, 5, 4, 3, 1])
    assert chi_C(c5_enclosed, "even", "T") == roots([6, 6, 4, 4, 2])
    assert F_C_even(c5_enclosed) == roots([6, 4, 4, 2, 0])
    assert chi_C(c5_enclosed, "even", "S") == roots([6, 4, 4, 3, 2])


def test_d_height_cut_constituents(d5_height_cut: Ideal) -> None:
    summands = d_even_summands(d5_height_cut)
    assert [s.label for s in summands] == ["K", "U1", "U2", "U3", "U4", "U5"]
    assert [s.roots for s in summands] == [
        (2, 4, 5, 6, 7),
        (2, 4, 4, 6),
        (2, 4, 4, 6),
        (2, 4, 4, 5),
        (2, 4, 4, 5),
        (2, 4, 4, 5),
    ]
    total = summands[0].polynomial
    for summand in summands[1:]:
        total = total + summand.polynomial
    assert chi_D(d5_height_cut, "even", "T") == total
    assert F_D_even(d5_height_cut) == roots([0, 2, 4, 6, 7])
    assert chi_D(d5_height_cut, "even", "S") == roots([2, 4]) * D5_CUBIC
    assert chi_D(d5_height_cut, "odd", "S") == roots([6, 5, 4, 3, 1])


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_full_b_even_constituent(rank: int) -> None:
    expected = roots([*range(2, 2 * rank - 1, 2), rank])
    assert chi_B(make_ideal("B", rank), "even") == expected


@pytest.mark.parametrize("rank", [3, 4, 5])
def test_full_d_simple_lattice(rank: int) -> None:
    quadratic = IntegerPolynomial((rank * (rank - 1) // 2, -2 * (rank - 1), 1))
    expected = roots(range(2, 2 * rank - 3, 2)) * quadratic
    assert chi_D(make_ideal("D", rank), "even", "S") == expected
    if rank == 3:
        assert expected == roots([1, 2, 3])


def test_full_c2_lattices() -> None:
    ideal = make_ideal("C", 2)
    assert chi_C(ideal, "odd", "T") == roots([1, 3])
    assert chi_C(ideal, "even", "T") == roots([2, 4])
    assert F_C_even(ideal) == roots([0, 2])
    assert chi_C(ideal, "even", "S") == roots([2, 2])
    assert shifted_offsets(ideal) == (0, 1, 1, 1)


@pytest.mark.parametrize("spec", ["gen:e4-e5", "gen:e4+e5"])
def test_d_simple_root_ideals_have_period_one(spec: str) -> None:
    ideal = make_ideal("D", 5, spec)
    for lattice in ("T", "S"):
        qp = chi_quasi_ideal(ideal, lattice, cross_check=True)
        assert qp == QuasiPolynomial(1, (roots([0, 0, 0, 0, 1]),))


@pytest.mark.parametrize(
    ("rs_type", "rank", "spec", "expected"),
    [("B", 3, "gen:e1-e3", [2, 1, 0]), ("B", 3, "ht<=0", [0, 0, 0]), ("A", 3, "ht<=1", [1, 1, 1])],
)
def test_type_a_like_ideals(rs_type: str, rank: int, spec: str, expected: list[int]) -> None:
    ideal = make_ideal(rs_type, rank, spec)
    assert chi_type_A(ideal) == QuasiPolynomial(1, (roots(expected),))
    assert chi_quasi_ideal(ideal, "S", cross_check=True).period == 1


def test_dispatch_and_argument_errors(b5_height_cut: Ideal, c5_enclosed: Ideal) -> None:
    with pytest.raises(DispatchError):
        chi_type_A(b5_height_cut)
    with pytest.raises(DispatchError):
        chi_type_A(c5_enclosed)
    with pytest.raises(UnsupportedTypeError):
        chi_B(c5_enclosed, "even")
    with pytest.raises(DomainError):
        chi_B(b5_height_cut, "both")
    with pytest.raises(DomainError):
        chi_C(c5_enclosed, "even", "X")


@pytest.mark.parametrize("fixture_name", ["b5_height_cut", "c5_enclosed", "d5_height_cut"])
@pytest.mark.parametrize("lattice", ["T", "S"])
def test_worked_examples_match_oracle(fixture_name: str, lattice: str, request: pytest.FixtureRequest) -> None:
    ideal = request.getfixturevalue(fixture_name)
    closed = chi_quasi_ideal(ideal, lattice, cross_check=False)
    oracle = oracle_quasi_ideal(ideal, lattice).normalized()
    assert closed == oracle
    assert oracle.constituent(1) == dp_product(ideal)

