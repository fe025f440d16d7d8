from __future__ import annotations

import random

import pytest

from conftest import make_ideal
from ideal_quasi.closed_forms import dp_product, lattice_matrix, oracle_quasi_ideal
from ideal_quasi.ideals import enumerate_ideals
from ideal_quasi.modular_counting import count_complement
from ideal_quasi.quasipoly import IntegerPolynomial, QuasiPolynomial
from ideal_quasi.root_systems import build_positive_system
from ideal_quasi.runtime_constants import LATTICES, MIN_RANK, RS_TYPES, VERIFY_ODD_QS
from ideal_quasi.verification import check_dp_factorization, run_verification


@pytest.mark.parametrize(("rs_type", "ideals"), [("A", 63), ("B", 96), ("C", 96), ("D", 64)])
def test_exhaustive_checks_up_to_rank_four(rs_type: str, ideals: int) -> None:
    report = run_verification(rs_type, 4)
    assert report.passed, [f"{r.name} {r.subject} {r.detail}" for r in report.failures]
    assert report.ideals_seen == ideals
    if rs_type == "A":
        assert all("période 1" in r.detail for r in report.results if r.name == "period")


def test_dp_factorization_fails_on_wrong_first_constituent() -> None:
    ideal = make_ideal("C", 2)
    good = QuasiPolynomial(2, (IntegerPolynomial.from_roots([3, 1]), IntegerPolynomial.from_roots([2, 2])))
    bad = QuasiPolynomial(2, (IntegerPolynomial.from_roots([3, 2]), IntegerPolynomial.from_roots([2, 2])))
    assert check_dp_factorization(ideal, good).passed
    result = check_dp_factorization(ideal, bad)
    assert result.status == "FAIL"
    assert "DP" in result.detail


def test_random_d5_ideals_have_dp_product_at_odd_q() -> None:
    rng = random.Random(5)
    ideals = list(enumerate_ideals(build_positive_system("D", 5)))
    for ideal in rng.sample(ideals, 25):
        matrix = lattice_matrix(ideal, "T")
        expected = dp_product(ideal)
        for q in VERIFY_ODD_QS:
            assert count_complement(matrix, q) == expected.evaluate(q), (str(ideal), q)


def test_random_interpolations_predict_held_out_counts() -> None:
    rng = random.Random(2024)
    ideals_by_system = {}
    for _ in range(50):
        rs_type = rng.choice(RS_TYPES)
        rank = rng.randint(MIN_RANK[rs_type], 5)
        key = (rs_type, rank)
        if key not in ideals_by_system:
            ideals_by_system[key] = list(enumerate_ideals(build_positive_system(rs_type, rank)))
        ideal = rng.choice(ideals_by_system[key])
        lattice = rng.choice(LATTICES)
        oracle = oracle_quasi_ideal(ideal, lattice)
        matrix = lattice_matrix(ideal, lattice)
        # Les interpolations consomment q <= 2ℓ + 6.
        for q in range(2 * rank + 7, 2 * rank + 10):
            assert oracle.evaluate(q) == count_complement(matrix, q), (str(ideal), lattice, q)
