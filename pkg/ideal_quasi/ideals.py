from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ideal_quasi.debug_logger import log_debug
from ideal_quasi.errors import (
    CapacityError,
    DomainError,
    IdealSpecError,
    MismatchError,
    TypeACase,
    UnsupportedTypeError,
)
from ideal_quasi.modular_counting import contraction, count_complement
from ideal_quasi.root_systems import (
    IntegerMatrix,
    PositiveSystem,
    Root,
    build_positive_system,
    coefficient_matrix,
)
from ideal_quasi.runtime_constants import (
    BASIS_ORTHONORMAL,
    CONTRACTION_CHECK_QS,
    GENERATORS_PREFIX,
    HEIGHT_CUT_RE,
    IDEAL_ENUMERATION_GUARD,
    KIND_DIFF,
    KIND_LONG,
    KIND_SHORT,
    KIND_SUM,
    RS_TYPE_A,
    RS_TYPE_B,
    RS_TYPE_C,
    RS_TYPE_D,
)


# Class: Ideal - Sous-ensemble fermé vers le bas de Φ⁺, stocké comme masque de bits.
@dataclass(frozen=True)
class Ideal:
    system: PositiveSystem
    mask: int

    @property
    def members(self) -> tuple[Root, ...]:
        return self.system.roots_of_mask(self.mask)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def __len__(self) -> int:
        return self.size

    def __contains__(self, root: object) -> bool:
        if not isinstance(root, Root):
            return False
        try:
            return bool(self.mask >> self.system.index_of(root) & 1)
        except DomainError:
            return False

    def has(self, kind: str, i: int, j: int = 0) -> bool:
        root = self.system.find(kind, i, j)
        return root is not None and root in self

    @property
    def spec_text(self) -> str:
        return GENERATORS_PREFIX + ",".join(r.literal for r in ideal_generators(self))

    def __str__(self) -> str:
        return f"{self.system.label}[{self.spec_text}]"


@dataclass(frozen=True)
class DualPartition:
    d: tuple[int, ...]


@dataclass(frozen=True)
class SignedGraphSummary:
    p: tuple[int, ...]
    p_plus: tuple[int, ...]
    p_minus: tuple[int, ...]
    p_zero: tuple[int, ...]


@dataclass(frozen=True)
class BPartition:
    loops: tuple[Root, ...]
    minus: tuple[Root, ...]
    plus: tuple[Root, ...]


# Class: Reduction - Idéal réduit R, facteurs linéaires retirés (q - d_i) et paramètre s (ou r).
@dataclass(frozen=True)
class Reduction:
    reduced: Ideal
    prefix_factors: tuple[int, ...]
    pivot: int


@dataclass(frozen=True)
class DerivedIdeals:
    k_ideal: Ideal
    u_ideals: tuple[Ideal, ...]
    s: int


def _is_closed(system: PositiveSystem, mask: int) -> bool:
    below = system.below_masks
    pending = mask
    while pending:
        low = pending & -pending
        pos = low.bit_length() - 1
        if below[pos] & mask != below[pos]:
            return False
        pending ^= low
    return True


# Function: is_ideal - Vrai si le sous-ensemble est fermé vers le bas pour ⪰.
def is_ideal(subset: Iterable[Root], system: PositiveSystem) -> bool:
    return _is_closed(system, system.mask_of(subset))


def _checked_ideal(system: PositiveSystem, mask: int, what: str) -> Ideal:
    if not _is_closed(system, mask):
        raise DomainError(f"{what}: le sous-ensemble obtenu n'est pas un idéal de Φ⁺({system.label}).")
    return Ideal(system, mask)


def ideal_from_height_cut(system: PositiveSystem, h: int) -> Ideal:
    if h < 0:
        raise DomainError(f"Hauteur négative: {h}.")
    mask = 0
    for pos, root in enumerate(system.roots):
        if root.height <= h:
            mask |= 1 << pos
    return Ideal(system, mask)


# Function: ideal_from_generators - Idéal engendré vers le bas par une liste de racines.
def ideal_from_generators(system: PositiveSystem, generators: Iterable[Root]) -> Ideal:
    mask = 0
    for root in generators:
        pos = system.index_of(root)
        mask |= system.below_masks[pos] | (1 << pos)
    return Ideal(system, mask)


# Function: ideal_generators - Éléments maximaux de l'idéal, dans l'ordre du système.
def ideal_generators(ideal: Ideal) -> tuple[Root, ...]:
    above = ideal.system.above_masks
    return tuple(
        root
        for pos, root in enumerate(ideal.system.roots)
        if ideal.mask >> pos & 1 and not above[pos] & ideal.mask
    )


# Function: parse_ideal_spec - Lit `ht<=H` ou `gen:r1,r2,...` (fermeture vers le bas automatique).
def parse_ideal_spec(system: PositiveSystem, text: str) -> Ideal:
    raw = str(text).strip()
    cut = HEIGHT_CUT_RE.match(raw.replace(" ", ""))
    if cut is not None:
        return ideal_from_height_cut(system, int(cut.group("h")))
    body = raw[len(GENERATORS_PREFIX):] if raw.startswith(GENERATORS_PREFIX) else raw
    if not body.strip() and not raw.startswith(GENERATORS_PREFIX):
        raise IdealSpecError("Spécification d'idéal vide (utiliser 'ht<=H' ou 'gen:...').")
    literals = [part for part in body.replace(" ", "").split(",") if part]
    return ideal_from_generators(system, [system.parse_root(lit) for lit in literals])


# Function: enumerate_ideals - Parcourt chaque idéal exactement une fois (ordre déterministe).
def enumerate_ideals(system: PositiveSystem, *, guard: int = IDEAL_ENUMERATION_GUARD) -> Iterator[Ideal]:
    below = system.below_masks
    n_roots = len(system.roots)
    produced = 0

    def walk(pos: int, mask: int) -> Iterator[Ideal]:
        nonlocal produced
        if pos == n_roots:
            produced += 1
            if produced > guard:
                raise CapacityError(
                    f"Plus de {guard} idéaux dans Φ⁺({system.label}).", estimate=produced, budget=guard
                )
            yield Ideal(system, mask)
            return
        yield from walk(pos + 1, mask)
        # Les racines sont triées par hauteur: tout ce qui est sous `pos` est déjà décidé.
        if below[pos] & mask == below[pos]:
            yield from walk(pos + 1, mask | (1 << pos))

    log_debug(f"enumerate_ideals start system={system.label} guard={guard}")
    yield from walk(0, 0)
    log_debug(f"enumerate_ideals done system={system.label} ideals={produced}")


# Function: count_ideals_brute_force - Filtre toutes les parties de Φ⁺ par fermeture vers le bas.
def count_ideals_brute_force(system: PositiveSystem) -> int:
    return sum(1 for mask in range(1 << len(system.roots)) if _is_closed(system, mask))


def height_distribution(ideal: Ideal) -> tuple[int, ...]:
    heights = [root.height for root in ideal.members]
    if not heights:
        return ()
    counts = [0] * max(heights)
    for h in heights:
        counts[h - 1] += 1
    return tuple(counts)


# Function: dual_partition - Partition duale (conjuguée de la distribution des hauteurs), triée décroissante.
def dual_partition(ideal: Ideal) -> DualPartition:
    rank = ideal.system.rank
    levels = [rank, *height_distribution(ideal), 0]
    values: list[int] = []
    for height in range(len(levels) - 1):
        values.extend([height] * (levels[height] - levels[height + 1]))
    if len(values) != rank:
        raise DomainError(f"Distribution des hauteurs non décroissante pour {ideal}.")
    return DualPartition(tuple(sorted(values, reverse=True)))


def require_type(ideal: Ideal, *types: str) -> None:
    if ideal.system.rs_type not in types:
        raise UnsupportedTypeError(
            f"Opération non définie pour le type {ideal.system.rs_type} (attendu: {', '.join(types)})."
        )


# Function: signed_graph - Résumé SG du graphe signé: p_i = arêtes +, arêtes -, boucle par ligne i.
def signed_graph(ideal: Ideal) -> SignedGraphSummary:
    require_type(ideal, RS_TYPE_B, RS_TYPE_C, RS_TYPE_D)
    rank = ideal.system.rank
    plus, minus, zero = [0] * rank, [0] * rank, [0] * rank
    for root in ideal.members:
        if root.kind == KIND_SUM:
            plus[root.i - 1] += 1
        elif root.kind == KIND_DIFF:
            minus[root.i - 1] += 1
        else:
            zero[root.i - 1] += 1
    total = tuple(a + b + c for a, b, c in zip(plus, minus, zero))
    return SignedGraphSummary(p=total, p_plus=tuple(plus), p_minus=tuple(minus), p_zero=tuple(zero))


def b_partition(ideal_b: Ideal) -> BPartition:
    require_type(ideal_b, RS_TYPE_B)
    members = ideal_b.members
    return BPartition(
        loops=tuple(r for r in members if r.kind == KIND_SHORT),
        minus=tuple(r for r in members if r.kind == KIND_DIFF),
        plus=tuple(r for r in members if r.kind == KIND_SUM),
    )


def has_sum_root(ideal: Ideal) -> bool:
    return any(root.kind == KIND_SUM for root in ideal.members)


def has_long_root(ideal: Ideal) -> bool:
    return any(root.kind == KIND_LONG for root in ideal.members)


def _rehoused_mask(roots: Iterable[Root], target: PositiveSystem, shift: int) -> int:
    mask = 0
    for root in roots:
        i = root.i - shift
        j = root.j - shift if root.j else 0
        image = target.find(root.kind, i, j)
        if image is None:
            raise DomainError(f"Racine {root.literal} sans image dans Φ⁺({target.label}) (décalage {shift}).")
        mask |= 1 << target.index_of(image)
    return mask


# Function: rehouse - Replace des racines (indices décalés de `shift`) dans un autre système classique.
def rehouse(roots: Iterable[Root], target: PositiveSystem, *, shift: int = 0) -> Ideal:
    return _checked_ideal(target, _rehoused_mask(roots, target, shift), "rehouse")


# Function: strip_loops - J = I \ I⁰ replacé dans Φ⁺(D_ℓ), pour un idéal B contenant ε₁.
def strip_loops(ideal_b: Ideal) -> Ideal:
    require_type(ideal_b, RS_TYPE_B)
    rank = ideal_b.system.rank
    if rank < 2 or not ideal_b.has(KIND_SHORT, 1):
        raise DomainError(f"strip_loops exige e1 dans l'idéal et un rang >= 2: {ideal_b}.")
    target = build_positive_system(RS_TYPE_D, rank, allow_degenerate=True)
    return rehouse([r for r in ideal_b.members if r.kind != KIND_SHORT], target)


def _rows_from(ideal: Ideal, first_row: int) -> list[Root]:
    return [r for r in ideal.members if r.i >= first_row]


# Function: reduction - Retire les premières lignes (facteurs linéaires) et replace le reste en rang réduit.
def reduction(ideal: Ideal) -> Reduction:
    require_type(ideal, RS_TYPE_B, RS_TYPE_C, RS_TYPE_D)
    rs_type, rank = ideal.system.rs_type, ideal.system.rank
    p = signed_graph(ideal).p

    if rs_type == RS_TYPE_B:
        if not has_sum_root(ideal):
            raise TypeACase(f"Aucune racine somme dans {ideal}.")
        pivot = min(r.i for r in ideal.members if r.kind == KIND_SHORT)
    elif rs_type == RS_TYPE_C:
        # Toute racine somme entraîne 2e_ℓ: une racine longue suffit à déclencher la réduction.
        if not has_long_root(ideal):
            raise TypeACase(f"Aucune racine longue dans {ideal}.")
        pivot = min(r.i for r in ideal.members if r.kind == KIND_LONG)
    else:
        if not has_sum_root(ideal):
            raise TypeACase(f"Aucune racine somme dans {ideal}.")
        if not ideal.has(KIND_DIFF, rank - 1, rank):
            raise TypeACase(
                f"e{rank - 1}-e{rank} absent de {ideal}: changement de signe de la dernière coordonnée.",
                sign_flip=True,
            )
        pivot = min(
            k for k in range(1, rank) if ideal.has(KIND_SUM, k, rank) and ideal.has(KIND_DIFF, k, rank)
        )

    target = build_positive_system(rs_type, rank - pivot + 1, allow_degenerate=True)
    reduced = rehouse(_rows_from(ideal, pivot), target, shift=pivot - 1)
    result = Reduction(reduced=reduced, prefix_factors=tuple(p[: pivot - 1]), pivot=pivot)
    log_debug(f"reduction {ideal} pivot={pivot} prefix={result.prefix_factors} reduced={reduced}")
    return result


# Function: d_parameter_s - s = min{2 <= k <= ℓ : e_{k-1}+e_k dans I} pour un idéal D (None sinon).
def d_parameter_s(ideal_d: Ideal) -> int | None:
    require_type(ideal_d, RS_TYPE_D)
    for k in range(2, ideal_d.system.rank + 1):
        if ideal_d.has(KIND_SUM, k - 1, k):
            return k
    return None


def tau(ideal_d: Ideal, n: int, k: int) -> int:
    return 1 if n < k and ideal_d.has(KIND_SUM, n, k) else 0


# Function: row_chain - Ligne i de Φ⁺(B_ℓ) ou Φ⁺(C_ℓ), une chaîne pour ⪰, par hauteur croissante.
def row_chain(system: PositiveSystem, i: int) -> tuple[Root, ...]:
    if system.rs_type not in (RS_TYPE_B, RS_TYPE_C):
        raise UnsupportedTypeError(f"Les lignes de Φ⁺({system.label}) ne sont pas des chaînes.")
    rank = system.rank
    diffs = [system.find(KIND_DIFF, i, j) for j in range(i + 1, rank + 1)]
    sums = [system.find(KIND_SUM, i, j) for j in range(rank, i, -1)]
    if system.rs_type == RS_TYPE_B:
        chain = [*diffs, system.find(KIND_SHORT, i), *sums]
    else:
        chain = [*diffs, *sums, system.find(KIND_LONG, i)]
    return tuple(root for root in chain if root is not None)


# Function: ideal_from_signed_graph - Reconstruit un idéal par préfixes de lignes de longueurs SG.
def ideal_from_signed_graph(system: PositiveSystem, sg: Sequence[int]) -> Ideal:
    if len(sg) != system.rank:
        raise DomainError(f"Vecteur SG de longueur {len(sg)} pour un rang {system.rank}.")
    mask = 0
    for i, length in enumerate(sg, start=1):
        chain = row_chain(system, i)
        if not 0 <= length <= len(chain):
            raise DomainError(f"Longueur SG {length} impossible en ligne {i} de Φ⁺({system.label}).")
        for root in chain[:length]:
            mask |= 1 << system.index_of(root)
    return _checked_ideal(system, mask, f"ideal_from_signed_graph{tuple(sg)}")


def _require_r_one(ideal_d: Ideal) -> None:
    require_type(ideal_d, RS_TYPE_D)
    rank = ideal_d.system.rank
    if not (ideal_d.has(KIND_SUM, 1, rank) and ideal_d.has(KIND_DIFF, 1, rank)):
        raise DomainError(f"e1±e{rank} doivent appartenir à l'idéal (réduire d'abord): {ideal_d}.")


# Function: u_signed_graphs - Vecteurs SG des idéaux U_1..U_ℓ de B_{ℓ-1} (types I puis II).
def u_signed_graphs(ideal_d: Ideal) -> tuple[tuple[int, ...], ...]:
    _require_r_one(ideal_d)
    rank = ideal_d.system.rank
    p = (0, *signed_graph(ideal_d).p)
    s = d_parameter_s(ideal_d)
    if s is None:
        raise DomainError(f"Paramètre s indéfini pour {ideal_d}.")
    vectors = []
    for k in range(1, rank + 1):
        if k <= s - 2:
            vec = [p[n] for n in range(1, k)] + [p[n] + 1 for n in range(k + 1, rank + 1)]
        else:
            vec = [p[n] - tau(ideal_d, n, k) for n in range(1, s - 1)] + [p[n] - 1 for n in range(s - 1, rank)]
        vectors.append(tuple(vec))
    return tuple(vectors)


# Function: contraction_list - A_k = T_{I ∪ {e_ℓ,...,e_k}} contractée par e_k (matrice à ℓ-1 lignes).
def contraction_list(ideal_d: Ideal, k: int) -> IntegerMatrix:
    require_type(ideal_d, RS_TYPE_D)
    rank = ideal_d.system.rank
    if not 1 <= k <= rank:
        raise DomainError(f"Indice de contraction {k} hors de [1, {rank}].")
    base = coefficient_matrix(ideal_d.members, BASIS_ORTHONORMAL, system=ideal_d.system)
    units = [tuple(1 if r == m else 0 for r in range(1, rank + 1)) for m in range(rank, k - 1, -1)]
    extended = base.with_columns(units)
    return contraction(extended, extended.cols - 1)


# Function: derived_ideals_D - Idéaux K (dans B_ℓ) et U_1..U_ℓ (dans B_{ℓ-1}) d'un idéal D avec r = 1.
def derived_ideals_D(ideal_d: Ideal, *, check: bool = True) -> DerivedIdeals:
    _require_r_one(ideal_d)
    rank = ideal_d.system.rank
    s = d_parameter_s(ideal_d) or rank
    system_b = build_positive_system(RS_TYPE_B, rank, allow_degenerate=True)
    system_u = build_positive_system(RS_TYPE_B, rank - 1, allow_degenerate=True)

    shorts = [system_b.find(KIND_SHORT, i) for i in range(1, rank + 1)]
    k_mask = _rehoused_mask(ideal_d.members, system_b, 0) | system_b.mask_of(r for r in shorts if r is not None)
    k_ideal = _checked_ideal(system_b, k_mask, "K")
    u_ideals = tuple(ideal_from_signed_graph(system_u, vec) for vec in u_signed_graphs(ideal_d))

    if check:
        for k, u_ideal in enumerate(u_ideals, start=1):
            u_matrix = coefficient_matrix(u_ideal.members, BASIS_ORTHONORMAL, system=system_u)
            a_matrix = contraction_list(ideal_d, k)
            for q in CONTRACTION_CHECK_QS:
                u_count = count_complement(u_matrix, q)
                a_count = count_complement(a_matrix, q)
                if u_count != a_count:
                    raise MismatchError(
                        f"U_{k} de {ideal_d} diverge de la liste contractée A_{k} en q={q}: {u_count} != {a_count}."
                    )
    log_debug(f"derived_ideals_D {ideal_d} s={s} K={k_ideal.size} U={[u.size for u in u_ideals]}")
    return DerivedIdeals(k_ideal=k_ideal, u_ideals=u_ideals, s=s)


def is_type_a_like(ideal: Ideal) -> bool:
    """True when the ideal has no plus-root (nor, in type C, a long root)."""
    if ideal.system.rs_type == RS_TYPE_A:
        return True
    if ideal.system.rs_type == RS_TYPE_C:
        return not has_long_root(ideal)
    return not has_sum_root(ideal)
