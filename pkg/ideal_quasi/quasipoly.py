from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

import sympy
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.polyfuncs import interpolate

from ideal_quasi.debug_logger import log_debug
from ideal_quasi.errors import CapacityError, DomainError, MismatchError, ParityError, PeriodExhaustedError
from ideal_quasi.root_systems import IntegerMatrix
from ideal_quasi.runtime_constants import DEFAULT_PERIOD_CANDIDATES, DEFAULT_SUBSET_BUDGET, HELD_OUT_POINTS

Q = sympy.Symbol("q")


# Class: IntegerPolynomial - Polynôme à coefficients entiers exacts (du degré 0 au degré max).
@dataclass(frozen=True)
class IntegerPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        trimmed = list(int(c) for c in self.coeffs)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntegerPolynomial:
        poly = sympy.Poly(1, Q, domain="ZZ")
        for root in roots:
            poly = poly * sympy.Poly(Q - int(root), Q, domain="ZZ")
        return cls.from_poly(poly)

    @classmethod
    def from_poly(cls, poly: sympy.Poly) -> IntegerPolynomial:
        high_to_low = poly.all_coeffs()
        if not all(sympy.sympify(c).is_integer for c in high_to_low):
            raise DomainError(f"Coefficients non entiers: {poly.as_expr()}.")
        return cls(tuple(int(c) for c in reversed(high_to_low)))

    @classmethod
    def constant(cls, value: int) -> IntegerPolynomial:
        return cls((int(value),))

    def to_poly(self) -> sympy.Poly:
        if not self.coeffs:
            return sympy.Poly(0, Q, domain="ZZ")
        return sympy.Poly(list(reversed(self.coeffs)), Q, domain="ZZ")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def evaluate(self, q: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * int(q) + c
        return total

    def __add__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        return IntegerPolynomial.from_poly(self.to_poly() + other.to_poly())

    def __sub__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        return IntegerPolynomial.from_poly(self.to_poly() - other.to_poly())

    def __mul__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        return IntegerPolynomial.from_poly(self.to_poly() * other.to_poly())

    # Method: halved - Divise par 2 en exigeant des coefficients tous pairs.
    def halved(self, *, summands: tuple[Any, ...] = ()) -> IntegerPolynomial:
        odd = [c for c in self.coeffs if c % 2]
        if odd:
            dump = " + ".join(str(s) for s in summands) or str(self)
            raise ParityError(f"Demi-somme non entière: {dump}.", summands=summands)
        return IntegerPolynomial(tuple(c // 2 for c in self.coeffs))

    def as_expr(self) -> sympy.Expr:
        return self.to_poly().as_expr()

    def factored_text(self) -> str:
        return str(sympy.factor(self.as_expr()))

    def __str__(self) -> str:
        return str(self.as_expr())


# Class: QuasiPolynomial - Période ρ et constituants f^1..f^ρ (résidu k <-> q ≡ k mod ρ).
@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    constituents: tuple[IntegerPolynomial, ...]

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.constituents) != self.period:
            raise DomainError(f"Période {self.period} incompatible avec {len(self.constituents)} constituants.")

    def constituent(self, k: int) -> IntegerPolynomial:
        if not 1 <= k <= self.period:
            raise DomainError(f"Indice de constituant {k} hors de [1, {self.period}].")
        return self.constituents[k - 1]

    def evaluate(self, q: int) -> int:
        return self.constituent((int(q) - 1) % self.period + 1).evaluate(q)

    # Method: normalized - Réduit à la plus petite période (diviseur de ρ) compatible.
    def normalized(self) -> QuasiPolynomial:
        for divisor in range(1, self.period + 1):
            if self.period % divisor:
                continue
            if all(self.constituents[k] == self.constituents[k % divisor] for k in range(self.period)):
                return QuasiPolynomial(divisor, self.constituents[:divisor])
        return self

    def to_json(self) -> dict[str, Any]:
        return {
            "period": self.period,
            "constituents": [
                {"residue": k, "coeffs": list(poly.coeffs)} for k, poly in enumerate(self.constituents, start=1)
            ],
        }

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> QuasiPolynomial:
        try:
            period = int(payload["period"])
            items = sorted(payload["constituents"], key=lambda item: int(item["residue"]))
            constituents = tuple(IntegerPolynomial(tuple(int(c) for c in item["coeffs"])) for item in items)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"JSON de quasi-polynôme invalide: {exc}") from exc
        return cls(period, constituents)


def constituent(qp: QuasiPolynomial, k: int) -> IntegerPolynomial:
    return qp.constituent(k)


# Function: characteristic_polynomial - Constituant f^1; vérifie la factorisation sur DP si fournie.
def characteristic_polynomial(qp: QuasiPolynomial, *, dual_partition: Sequence[int] | None = None) -> IntegerPolynomial:
    first = qp.constituent(1)
    if dual_partition is not None:
        expected = IntegerPolynomial.from_roots(dual_partition)
        if first != expected:
            raise MismatchError(f"f^1 = {first.factored_text()} ne se factorise pas sur DP {tuple(dual_partition)}.")
    return first


# Function: toric_polynomial - Dernier constituant (k ≡ 0 mod ρ, soit k = ρ).
def toric_polynomial(qp: QuasiPolynomial) -> IntegerPolynomial:
    return qp.constituent(qp.period)


def _fit_residue(
    evaluate: Callable[[int], int],
    degree: int,
    period: int,
    residue: int,
    held_out: int,
) -> IntegerPolynomial | None:
    samples = [residue + j * period for j in range(degree + 1 + held_out)]
    points = [(q, evaluate(q)) for q in samples[: degree + 1]]
    fitted = sympy.Poly(interpolate(points, Q), Q, domain="QQ")
    if fitted.degree() != degree or fitted.LC() != 1:
        return None
    if not all(c.is_integer for c in fitted.all_coeffs()):
        return None
    poly = IntegerPolynomial(tuple(int(c) for c in reversed(fitted.all_coeffs())))
    for q in samples[degree + 1 :]:
        if poly.evaluate(q) != evaluate(q):
            return None
    return poly


# Function: interpolate_quasi - Plus petite période candidate reproduisant l'évaluateur (points de contrôle inclus).
def interpolate_quasi(
    evaluator: Callable[[int], int],
    degree: int,
    period_candidates: Sequence[int] = DEFAULT_PERIOD_CANDIDATES,
    *,
    held_out: int = HELD_OUT_POINTS,
) -> QuasiPolynomial:
    if not period_candidates:
        raise DomainError("Liste de périodes candidates vide.")
    cached = lru_cache(maxsize=None)(evaluator)
    for period in sorted(set(int(p) for p in period_candidates)):
        constituents = []
        for residue in range(1, period + 1):
            poly = _fit_residue(cached, degree, period, residue, held_out)
            if poly is None:
                break
            constituents.append(poly)
        else:
            log_debug(f"interpolate_quasi degree={degree} period={period} evaluations={cached.cache_info().currsize}")
            return QuasiPolynomial(period, tuple(constituents))
    raise PeriodExhaustedError(f"Aucune période parmi {tuple(period_candidates)} ne reproduit les comptages.")


# Function: factor_integer_roots - Racines entières (avec multiplicité) et résidu sans racine entière.
def factor_integer_roots(poly: IntegerPolynomial) -> tuple[tuple[int, ...], IntegerPolynomial]:
    if poly.degree <= 0:
        return (), poly
    content, factors = poly.to_poly().factor_list()
    roots: list[int] = []
    residual = sympy.Poly(content, Q, domain="ZZ")
    for factor, multiplicity in factors:
        coeffs = factor.all_coeffs()
        if factor.degree() == 1 and coeffs[0] in (1, -1):
            roots.extend([int(-coeffs[1] * coeffs[0])] * multiplicity)
            if coeffs[0] == -1 and multiplicity % 2:
                residual = -residual
        else:
            residual = residual * factor**multiplicity
    return tuple(sorted(roots)), IntegerPolynomial.from_poly(residual)


# Class: SmithForm - Facteurs invariants non nuls (chaîne de divisibilité) et rang libre du quotient.
@dataclass(frozen=True)
class SmithForm:
    factors: tuple[int, ...]
    free_rank: int

    @property
    def nontrivial(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)

    @property
    def largest(self) -> int:
        return self.factors[-1] if self.factors else 1


def _divisibility_chain(values: Iterable[int]) -> tuple[int, ...]:
    chain = sorted(abs(int(v)) for v in values if v)
    for a in range(len(chain)):
        for b in range(a + 1, len(chain)):
            g = math.gcd(chain[a], chain[b])
            chain[a], chain[b] = g, chain[a] * chain[b] // g
    return tuple(chain)


# Function: smith_normal_form - Facteurs invariants exacts du réseau engendré par les colonnes.
def smith_normal_form(matrix: IntegerMatrix) -> SmithForm:
    if matrix.rows == 0 or matrix.cols == 0:
        return SmithForm(factors=(), free_rank=matrix.rows)
    raw = invariant_factors(matrix.to_sympy(), domain=sympy.ZZ)
    chain = _divisibility_chain(raw)
    return SmithForm(factors=chain, free_rank=matrix.rows - len(chain))


# Class: LcmPeriod - Période LCM et indicateur de borne inférieure (sous-ensembles tronqués).
@dataclass(frozen=True)
class LcmPeriod:
    value: int
    lower_bound: bool
    subsets: int


# Function: lcm_period - ppcm du plus grand diviseur élémentaire sur les sous-ensembles de colonnes.
def lcm_period(
    matrix: IntegerMatrix,
    subset_size_cap: int | None = None,
    *,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> LcmPeriod:
    cap = matrix.cols if subset_size_cap is None else min(int(subset_size_cap), matrix.cols)
    subsets = sum(math.comb(matrix.cols, size) for size in range(1, cap + 1))
    if subsets > subset_budget:
        raise CapacityError(
            f"{subsets} sous-ensembles de colonnes dépassent le budget {subset_budget}.",
            estimate=subsets,
            budget=subset_budget,
        )
    value = 1
    for size in range(1, cap + 1):
        for chosen in combinations(range(matrix.cols), size):
            value = math.lcm(value, smith_normal_form(matrix.select_columns(chosen)).largest)
    log_debug(f"lcm_period cols={matrix.cols} cap={cap} subsets={subsets} value={value}")
    return LcmPeriod(value=value, lower_bound=cap < matrix.cols, subsets=subsets)
