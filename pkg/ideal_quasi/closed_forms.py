from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ideal_quasi.config import Settings
from ideal_quasi.count_cache import CountCache
from ideal_quasi.debug_logger import log_debug
from ideal_quasi.errors import DispatchError, DomainError, MismatchError, TypeACase
from ideal_quasi.ideals import (
    Ideal,
    derived_ideals_D,
    dual_partition,
    is_type_a_like,
    reduction,
    require_type,
    signed_graph,
    strip_loops,
)
from ideal_quasi.modular_counting import count_complement, count_shifted
from ideal_quasi.quasipoly import IntegerPolynomial, QuasiPolynomial, factor_integer_roots, interpolate_quasi
from ideal_quasi.root_systems import IntegerMatrix, coefficient_matrix
from ideal_quasi.runtime_constants import (
    BASIS_ORTHONORMAL,
    BASIS_SIMPLE,
    LATTICE_S,
    LATTICE_T,
    LATTICES,
    PARITIES,
    PARITY_EVEN,
    PARITY_ODD,
    RS_TYPE_A,
    RS_TYPE_B,
    RS_TYPE_C,
    RS_TYPE_D,
)


# Class: Summand - Terme étiqueté (K, U1, ...) de la décomposition paire d'un idéal D.
@dataclass(frozen=True)
class Summand:
    label: str
    ideal: Ideal
    polynomial: IntegerPolynomial
    roots: tuple[int, ...]


def _check_parity(parity: str) -> None:
    if parity not in PARITIES:
        raise DomainError(f"Parité inconnue: {parity!r} (attendu: {PARITY_ODD} ou {PARITY_EVEN}).")


def _check_lattice(lattice: str) -> None:
    if lattice not in LATTICES:
        raise DomainError(f"Réseau inconnu: {lattice!r} (attendu: {', '.join(LATTICES)}).")


def _linear_product(shifts: Iterable[int]) -> IntegerPolynomial:
    return IntegerPolynomial.from_roots(shifts)


# Function: dp_product - ∏(q - d_i) sur la partition duale de l'idéal.
def dp_product(ideal: Ideal) -> IntegerPolynomial:
    return _linear_product(dual_partition(ideal).d)


# Function: chi_type_A - Forme de type A (période 1) pour un idéal sans racine somme.
def chi_type_A(ideal: Ideal) -> QuasiPolynomial:
    if not is_type_a_like(ideal):
        raise DispatchError(f"{ideal} contient une racine somme ou longue: forme de type A non applicable.")
    return QuasiPolynomial(1, (dp_product(ideal),))


# Function: chi_B - Constituant de type B; identique sur les réseaux T et S.
def chi_B(ideal: Ideal, parity: str) -> IntegerPolynomial:
    require_type(ideal, RS_TYPE_B)
    _check_parity(parity)
    if parity == PARITY_ODD:
        return dp_product(ideal)
    try:
        red = reduction(ideal)
    except TypeACase:
        return dp_product(ideal)
    stripped = strip_loops(red.reduced)
    return _linear_product(red.prefix_factors) * _linear_product(d + 1 for d in dual_partition(stripped).d)


def _c_even_parts(ideal: Ideal) -> tuple[IntegerPolynomial, IntegerPolynomial]:
    try:
        red = reduction(ideal)
    except TypeACase:
        # Sans racine longue, la dernière ligne de S est nulle: F coïncide avec T.
        plain = dp_product(ideal)
        return plain, plain
    reduced = red.reduced
    if reduced.mask != reduced.system.full_mask:
        raise DomainError(f"Réduction de {ideal} inattendue: {reduced} n'est pas Φ⁺({reduced.system.label}).")
    prefix = _linear_product(red.prefix_factors)
    t_even = prefix * _linear_product(d + 1 for d in dual_partition(reduced).d)
    f_even = prefix * _linear_product(2 * i for i in range(reduced.system.rank))
    return t_even, f_even


def F_C_even(ideal: Ideal) -> IntegerPolynomial:
    require_type(ideal, RS_TYPE_C)
    return _c_even_parts(ideal)[1]


def _half_sum(t_even: IntegerPolynomial, f_even: IntegerPolynomial) -> IntegerPolynomial:
    return (t_even + f_even).halved(summands=(t_even.factored_text(), f_even.factored_text()))


# Function: chi_C - Constituant de type C; au pair, S est la demi-somme de T et F.
def chi_C(ideal: Ideal, parity: str, lattice: str) -> IntegerPolynomial:
    require_type(ideal, RS_TYPE_C)
    _check_parity(parity)
    _check_lattice(lattice)
    if parity == PARITY_ODD:
        return dp_product(ideal)
    t_even, f_even = _c_even_parts(ideal)
    return t_even if lattice == LATTICE_T else _half_sum(t_even, f_even)


def _d_even_parts(ideal: Ideal, *, check: bool) -> tuple[IntegerPolynomial, IntegerPolynomial]:
    try:
        red = reduction(ideal)
    except TypeACase as signal:
        if signal.sign_flip:
            log_debug(f"chi_D {ideal} changement de signe de la dernière coordonnée")
        plain = dp_product(ideal)
        return plain, plain
    prefix = _linear_product(red.prefix_factors)
    derived = derived_ideals_D(red.reduced, check=check)
    t_reduced = chi_B(derived.k_ideal, PARITY_EVEN)
    for u_ideal in derived.u_ideals:
        t_reduced = t_reduced + chi_B(u_ideal, PARITY_EVEN)
    f_reduced = _linear_product(signed_graph(red.reduced).p)
    return prefix * t_reduced, prefix * f_reduced


def F_D_even(ideal: Ideal) -> IntegerPolynomial:
    require_type(ideal, RS_TYPE_D)
    return _d_even_parts(ideal, check=False)[1]


# Function: chi_D - Constituant de type D (décomposition en idéaux B au pair).
def chi_D(ideal: Ideal, parity: str, lattice: str, *, check: bool = True) -> IntegerPolynomial:
    require_type(ideal, RS_TYPE_D)
    _check_parity(parity)
    _check_lattice(lattice)
    if parity == PARITY_ODD:
        return dp_product(ideal)
    t_even, f_even = _d_even_parts(ideal, check=check)
    return t_even if lattice == LATTICE_T else _half_sum(t_even, f_even)


# Function: d_even_summands - Termes K puis U_1..U_ℓ avec leurs polynômes pairs (idéal D avec r = 1).
def d_even_summands(ideal_d: Ideal, *, check: bool = True) -> tuple[Summand, ...]:
    derived = derived_ideals_D(ideal_d, check=check)
    labelled = [("K", derived.k_ideal)] + [(f"U{k}", u) for k, u in enumerate(derived.u_ideals, start=1)]
    summands = []
    for label, member in labelled:
        poly = chi_B(member, PARITY_EVEN)
        summands.append(Summand(label=label, ideal=member, polynomial=poly, roots=factor_integer_roots(poly)[0]))
    return tuple(summands)


# Function: effective_lattice - Réseau réellement utilisé: le type A n'a que S.
def effective_lattice(ideal: Ideal, lattice: str) -> str:
    _check_lattice(lattice)
    return LATTICE_S if ideal.system.rs_type == RS_TYPE_A else lattice


# Function: lattice_matrix - Matrice T (base orthonormée) ou S (base simple) du réseau effectif.
def lattice_matrix(ideal: Ideal, lattice: str) -> IntegerMatrix:
    basis = BASIS_SIMPLE if effective_lattice(ideal, lattice) == LATTICE_S else BASIS_ORTHONORMAL
    return coefficient_matrix(ideal.members, basis, system=ideal.system)


def shifted_offsets(ideal: Ideal) -> tuple[int, ...]:
    return lattice_matrix(ideal, LATTICE_S).last_row()


# Function: oracle_quasi_ideal - Interpolation des comptages exacts sur le réseau choisi.
def oracle_quasi_ideal(
    ideal: Ideal,
    lattice: str,
    *,
    settings: Settings | None = None,
    cache: CountCache | None = None,
) -> QuasiPolynomial:
    matrix = lattice_matrix(ideal, lattice)
    return interpolate_quasi(
        lambda q: count_complement(matrix, q, settings=settings, cache=cache),
        matrix.rows,
    )


# Function: oracle_shifted_count - Comptage décalé F en q (T avec décalages g·S).
def oracle_shifted_count(
    ideal: Ideal,
    q: int,
    *,
    settings: Settings | None = None,
    cache: CountCache | None = None,
) -> int:
    return count_shifted(lattice_matrix(ideal, LATTICE_T), shifted_offsets(ideal), q, settings=settings, cache=cache)


# Function: chi_quasi_ideal - Aiguillage par type, réseau et parité; contrôle croisé avec l'oracle.
def chi_quasi_ideal(
    ideal: Ideal,
    lattice: str,
    *,
    settings: Settings | None = None,
    cache: CountCache | None = None,
    cross_check: bool | None = None,
) -> QuasiPolynomial:
    _check_lattice(lattice)
    settings = settings or Settings()
    rs_type = ideal.system.rs_type
    if rs_type == RS_TYPE_A:
        qp = chi_type_A(ideal)
    else:
        if rs_type == RS_TYPE_B:
            even = chi_B(ideal, PARITY_EVEN)
        elif rs_type == RS_TYPE_C:
            even = chi_C(ideal, PARITY_EVEN, lattice)
        else:
            even = chi_D(ideal, PARITY_EVEN, lattice, check=settings.cross_check)
        qp = QuasiPolynomial(2, (dp_product(ideal), even)).normalized()

    if settings.cross_check if cross_check is None else cross_check:
        oracle = oracle_quasi_ideal(ideal, lattice, settings=settings, cache=cache).normalized()
        if oracle != qp:
            raise MismatchError(
                f"Forme fermée et oracle divergent pour {ideal} (réseau {lattice}): "
                f"{qp.to_json()} != {oracle.to_json()}."
            )
    log_debug(f"chi_quasi_ideal {ideal.system.label} {ideal} lattice={lattice} period={qp.period}")
    return qp
