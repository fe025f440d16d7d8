from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ideal_quasi.closed_forms import chi_quasi_ideal, dp_product, lattice_matrix, oracle_quasi_ideal
from ideal_quasi.config import Settings
from ideal_quasi.count_cache import CountCache
from ideal_quasi.debug_logger import log_debug, timed_step
from ideal_quasi.errors import MismatchError, QuasiError
from ideal_quasi.ideals import (
    Ideal,
    contraction_list,
    derived_ideals_D,
    dual_partition,
    enumerate_ideals,
    strip_loops,
)
from ideal_quasi.modular_counting import count_complement
from ideal_quasi.quasipoly import QuasiPolynomial, characteristic_polynomial
from ideal_quasi.root_systems import build_positive_system, coefficient_matrix
from ideal_quasi.runtime_constants import (
    BASIS_ORTHONORMAL,
    KIND_DIFF,
    KIND_SHORT,
    KIND_SUM,
    LATTICE_S,
    LATTICE_T,
    LATTICES,
    MIN_RANK,
    RS_TYPE_A,
    RS_TYPE_B,
    RS_TYPE_D,
    VERIFY_EVEN_QS,
    VERIFY_ODD_QS,
    VERIFY_SUM_IDENTITY_QS,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    subject: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


# Class: VerificationReport - Résultats par idéal et par contrôle, dans l'ordre d'exécution.
@dataclass
class VerificationReport:
    rs_type: str
    rank_max: int
    results: list[CheckResult] = field(default_factory=list)
    ideals_seen: int = 0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def summary(self) -> str:
        return (
            f"{self.rs_type}<= {self.rank_max}: {self.ideals_seen} idéaux, {len(self.results)} contrôles, "
            f"{len(self.failures)} échec(s)"
        )


def _result(name: str, ideal: Ideal, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, subject=str(ideal), passed=passed, detail=detail)


# Function: check_dp_factorization - f¹ interpolé = ∏(q - d_i) sur DP(I).
def check_dp_factorization(ideal: Ideal, oracle: QuasiPolynomial) -> CheckResult:
    try:
        characteristic_polynomial(oracle, dual_partition=dual_partition(ideal).d)
    except MismatchError as exc:
        return _result("dp-factorization", ideal, False, str(exc))
    return _result("dp-factorization", ideal, True, "")


# Function: check_period_bound - Période 1 en type A, au plus 2 sinon.
def check_period_bound(ideal: Ideal, oracle: QuasiPolynomial) -> CheckResult:
    bound = 1 if ideal.system.rs_type == RS_TYPE_A else 2
    period = oracle.normalized().period
    return _result("period", ideal, period <= bound, f"période {period}, borne {bound}")


def check_closed_vs_oracle(
    ideal: Ideal,
    lattice: str,
    oracle: QuasiPolynomial,
    *,
    settings: Settings,
) -> CheckResult:
    try:
        closed = chi_quasi_ideal(ideal, lattice, settings=settings, cross_check=False)
    except QuasiError as exc:
        return _result(f"closed-form-{lattice}", ideal, False, str(exc))
    agree = closed == oracle.normalized()
    detail = "" if agree else f"forme fermée {closed.to_json()} != oracle {oracle.to_json()}"
    return _result(f"closed-form-{lattice}", ideal, agree, detail)


# Function: check_b_change_of_variables - count(T_I, q) = count(T_J sur D_ℓ, q - 1) aux q pairs.
def check_b_change_of_variables(
    ideal_b: Ideal,
    *,
    qs: tuple[int, ...] = VERIFY_EVEN_QS,
    settings: Settings | None = None,
    cache: CountCache | None = None,
) -> CheckResult:
    stripped = strip_loops(ideal_b)
    t_matrix = lattice_matrix(ideal_b, LATTICE_T)
    j_matrix = lattice_matrix(stripped, LATTICE_T)
    for q in qs:
        left = count_complement(t_matrix, q, settings=settings, cache=cache)
        right = count_complement(j_matrix, q - 1, settings=settings, cache=cache)
        if left != right:
            return _result("b-change-of-variables", ideal_b, False, f"q={q}: {left} != {right}")
    return _result("b-change-of-variables", ideal_b, True)


# Function: check_d_odd_product - Comptages T aux q impairs = ∏(q - d_i).
def check_d_odd_product(
    ideal_d: Ideal,
    *,
    qs: tuple[int, ...] = VERIFY_ODD_QS,
    settings: Settings | None = None,
    cache: CountCache | None = None,
) -> CheckResult:
    expected = dp_product(ideal_d)
    matrix = lattice_matrix(ideal_d, LATTICE_T)
    for q in qs:
        count = count_complement(matrix, q, settings=settings, cache=cache)
        if count != expected.evaluate(q):
            return _result("d-odd-product", ideal_d, False, f"q={q}: {count} != {expected.evaluate(q)}")
    return _result("d-odd-product", ideal_d, True)


# Function: check_d_sum_identity - count(T_I) = Σ count(A_k) + count(T_K), et U_k ~ A_k, pour tout q.
def check_d_sum_identity(
    ideal_d: Ideal,
    *,
    qs: tuple[int, ...] = VERIFY_SUM_IDENTITY_QS,
    settings: Settings | None = None,
    cache: CountCache | None = None,
) -> CheckResult:
    rank = ideal_d.system.rank
    derived = derived_ideals_D(ideal_d, check=False)
    t_matrix = lattice_matrix(ideal_d, LATTICE_T)
    k_matrix = lattice_matrix(derived.k_ideal, LATTICE_T)
    a_matrices = [contraction_list(ideal_d, k) for k in range(1, rank + 1)]
    u_matrices = [coefficient_matrix(u.members, BASIS_ORTHONORMAL, system=u.system) for u in derived.u_ideals]
    for q in qs:
        a_counts = [count_complement(m, q, settings=settings, cache=cache) for m in a_matrices]
        u_counts = [count_complement(m, q, settings=settings, cache=cache) for m in u_matrices]
        if a_counts != u_counts:
            return _result("d-sum-identity", ideal_d, False, f"q={q}: U {u_counts} != A {a_counts}")
        left = count_complement(t_matrix, q, settings=settings, cache=cache)
        right = sum(a_counts) + count_complement(k_matrix, q, settings=settings, cache=cache)
        if left != right:
            return _result("d-sum-identity", ideal_d, False, f"q={q}: {left} != {right}")
    return _result("d-sum-identity", ideal_d, True)


# Function: verify_ideal - Batterie de contrôles d'un idéal (oracle interpolé une fois par réseau).
def verify_ideal(
    ideal: Ideal,
    *,
    settings: Settings | None = None,
    cache: CountCache | None = None,
) -> list[CheckResult]:
    settings = settings or Settings()
    rs_type, rank = ideal.system.rs_type, ideal.system.rank
    results: list[CheckResult] = []
    lattices = (LATTICE_S,) if rs_type == RS_TYPE_A else LATTICES
    for lattice in lattices:
        oracle = oracle_quasi_ideal(ideal, lattice, settings=settings, cache=cache)
        results.append(check_dp_factorization(ideal, oracle))
        results.append(check_period_bound(ideal, oracle))
        results.append(check_closed_vs_oracle(ideal, lattice, oracle, settings=settings))

    if rs_type == RS_TYPE_B and ideal.has(KIND_SHORT, 1):
        results.append(check_b_change_of_variables(ideal, settings=settings, cache=cache))
    if rs_type == RS_TYPE_D:
        results.append(check_d_odd_product(ideal, settings=settings, cache=cache))
        if ideal.has(KIND_SUM, 1, rank) and ideal.has(KIND_DIFF, 1, rank):
            results.append(check_d_sum_identity(ideal, settings=settings, cache=cache))
    return results


# Function: run_verification - Parcourt tous les idéaux des rangs minimal..rank_max du type.
def run_verification(
    rs_type: str,
    rank_max: int,
    *,
    settings: Settings | None = None,
    cache: CountCache | None = None,
    on_result: Callable[[CheckResult], None] | None = None,
) -> VerificationReport:
    settings = settings or Settings()
    report = VerificationReport(rs_type=rs_type, rank_max=rank_max)
    for rank in range(MIN_RANK[rs_type], rank_max + 1):
        system = build_positive_system(rs_type, rank)
        with timed_step(f"run_verification {system.label}"):
            for ideal in enumerate_ideals(system, guard=settings.ideal_guard):
                report.ideals_seen += 1
                for result in verify_ideal(ideal, settings=settings, cache=cache):
                    report.results.append(result)
                    if on_result is not None:
                        on_result(result)
    log_debug(f"run_verification done {report.summary()}")
    return report

