from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
import sympy

from ideal_quasi.debug_logger import log_debug
from ideal_quasi.errors import DomainError, IdealSpecError, RankRangeError
from ideal_quasi.runtime_constants import (
    BASIS_ORTHONORMAL,
    BASIS_SIMPLE,
    KIND_DIFF,
    KIND_LONG,
    KIND_ORDER,
    KIND_SHORT,
    KIND_SUM,
    MIN_DEGENERATE_RANK,
    MIN_RANK,
    ROOT_LITERAL_RE,
    RS_TYPE_A,
    RS_TYPE_B,
    RS_TYPE_C,
    RS_TYPE_D,
    RS_TYPES,
)


# Class: Root - Racine positive en coordonnées ε et en coordonnées sur la base simple.
@dataclass(frozen=True)
class Root:
    rs_type: str
    rank: int
    kind: str
    i: int
    j: int
    eps_coords: tuple[int, ...]
    simple_coords: tuple[int, ...]
    height: int

    @property
    def literal(self) -> str:
        if self.kind == KIND_DIFF:
            return f"e{self.i}-e{self.j}"
        if self.kind == KIND_SUM:
            return f"e{self.i}+e{self.j}"
        if self.kind == KIND_LONG:
            return f"2e{self.i}"
        return f"e{self.i}"

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        return (self.height, self.i, self.j, KIND_ORDER[self.kind])

    # Method: dominates - Vrai si self ⪰ other (différence à coordonnées simples toutes positives ou nulles).
    def dominates(self, other: Root) -> bool:
        return all(a >= b for a, b in zip(self.simple_coords, other.simple_coords))

    def __str__(self) -> str:
        return self.literal


# Class: IntegerMatrix - Matrice entière exacte dont les colonnes réalisent une liste de racines.
@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise DomainError(f"Matrice mal formée: {self.rows}x{self.cols} attendu.")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], *, n_cols: int | None = None) -> IntegerMatrix:
        entries = tuple(tuple(int(v) for v in row) for row in rows)
        cols = len(entries[0]) if entries else int(n_cols or 0)
        return cls(rows=len(entries), cols=cols, entries=entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], n_rows: int) -> IntegerMatrix:
        entries = tuple(tuple(int(column[r]) for column in columns) for r in range(n_rows))
        return cls(rows=n_rows, cols=len(columns), entries=entries)

    def column(self, index: int) -> tuple[int, ...]:
        return tuple(row[index] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(c) for c in range(self.cols)]

    def last_row(self) -> tuple[int, ...]:
        if self.rows == 0:
            return (0,) * self.cols
        return self.entries[-1]

    def select_columns(self, indices: Iterable[int]) -> IntegerMatrix:
        return IntegerMatrix.from_columns([self.column(c) for c in indices], self.rows)

    def with_columns(self, extra: Sequence[Sequence[int]]) -> IntegerMatrix:
        return IntegerMatrix.from_columns(self.columns() + [tuple(c) for c in extra], self.rows)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.rows, self.cols, [v for row in self.entries for v in row])

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


# Class: PositiveSystem - Système positif classique: type, rang, racines ordonnées et ordre ⪰.
@dataclass(frozen=True, eq=False)
class PositiveSystem:
    rs_type: str
    rank: int
    roots: tuple[Root, ...]
    below_masks: tuple[int, ...] = field(repr=False)
    above_masks: tuple[int, ...] = field(repr=False)
    _index: dict[tuple[str, int, int], int] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self._index:
            self._index.update({(r.kind, r.i, r.j): pos for pos, r in enumerate(self.roots)})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PositiveSystem):
            return NotImplemented
        return (self.rs_type, self.rank) == (other.rs_type, other.rank)

    def __hash__(self) -> int:
        return hash((self.rs_type, self.rank))

    def __repr__(self) -> str:
        return f"PositiveSystem({self.label})"

    @property
    def label(self) -> str:
        return f"{self.rs_type}{self.rank}"

    @property
    def ambient_dim(self) -> int:
        return self.rank + 1 if self.rs_type == RS_TYPE_A else self.rank

    @property
    def full_mask(self) -> int:
        return (1 << len(self.roots)) - 1

    def index_of(self, root: Root) -> int:
        if (root.rs_type, root.rank) != (self.rs_type, self.rank):
            raise DomainError(f"Racine {root.literal} étrangère au système {self.label}.")
        return self._index[(root.kind, root.i, root.j)]

    def find(self, kind: str, i: int, j: int = 0) -> Root | None:
        pos = self._index.get((kind, i, j))
        return None if pos is None else self.roots[pos]

    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if r.height == 1)

    def roots_of_mask(self, mask: int) -> tuple[Root, ...]:
        return tuple(r for pos, r in enumerate(self.roots) if mask >> pos & 1)

    def mask_of(self, roots: Iterable[Root]) -> int:
        mask = 0
        for root in roots:
            mask |= 1 << self.index_of(root)
        return mask

    # Method: parse_root - Analyse un littéral de racine (e1-e2, e1+e2, e1, 2e1).
    def parse_root(self, literal: str) -> Root:
        text = literal.strip()
        match = ROOT_LITERAL_RE.match(text)
        if match is None:
            raise IdealSpecError(f"Littéral de racine invalide: '{literal}'.")
        if match.group("long"):
            kind, i, j = KIND_LONG, int(match.group("li")), 0
        elif match.group("sign"):
            kind = KIND_DIFF if match.group("sign") == "-" else KIND_SUM
            i, j = int(match.group("i")), int(match.group("j"))
        else:
            kind, i, j = KIND_SHORT, int(match.group("i")), 0
        root = self.find(kind, i, j)
        if root is None:
            raise IdealSpecError(f"La racine '{literal}' n'appartient pas à Φ⁺({self.label}).")
        return root


def _fill(coords: list[int], lo: int, hi: int, value: int) -> None:
    for k in range(lo, hi + 1):
        coords[k - 1] += value


def _simple_coords(rs_type: str, rank: int, kind: str, i: int, j: int) -> tuple[int, ...]:
    coords = [0] * rank
    if kind == KIND_DIFF:
        _fill(coords, i, j - 1, 1)
    elif kind == KIND_SHORT:
        _fill(coords, i, rank, 1)
    elif kind == KIND_LONG:
        _fill(coords, i, rank - 1, 2)
        coords[rank - 1] += 1
    elif rs_type == RS_TYPE_B:
        _fill(coords, i, j - 1, 1)
        _fill(coords, j, rank, 2)
    elif rs_type == RS_TYPE_C:
        _fill(coords, i, j - 1, 1)
        _fill(coords, j, rank - 1, 2)
        coords[rank - 1] += 1
    elif j == rank:
        # D: ε_i+ε_ℓ évite α_{ℓ-1}.
        _fill(coords, i, rank - 2, 1)
        coords[rank - 1] += 1
    else:
        _fill(coords, i, j - 1, 1)
        _fill(coords, j, rank - 2, 2)
        coords[rank - 2] += 1
        coords[rank - 1] += 1
    return tuple(coords)


def _eps_coords(dim: int, kind: str, i: int, j: int) -> tuple[int, ...]:
    coords = [0] * dim
    if kind == KIND_DIFF:
        coords[i - 1], coords[j - 1] = 1, -1
    elif kind == KIND_SUM:
        coords[i - 1], coords[j - 1] = 1, 1
    elif kind == KIND_SHORT:
        coords[i - 1] = 1
    else:
        coords[i - 1] = 2
    return tuple(coords)


def _root_labels(rs_type: str, rank: int) -> list[tuple[str, int, int]]:
    if rs_type == RS_TYPE_A:
        return [(KIND_DIFF, i, j) for i in range(1, rank + 2) for j in range(i + 1, rank + 2)]
    labels = [(KIND_DIFF, i, j) for i in range(1, rank + 1) for j in range(i + 1, rank + 1)]
    labels += [(KIND_SUM, i, j) for i in range(1, rank + 1) for j in range(i + 1, rank + 1)]
    if rs_type == RS_TYPE_B:
        labels += [(KIND_SHORT, i, 0) for i in range(1, rank + 1)]
    elif rs_type == RS_TYPE_C:
        labels += [(KIND_LONG, i, 0) for i in range(1, rank + 1)]
    return labels


# Function: is_degenerate_rank - Vrai pour B1, C1 et D2, accessibles seulement par réduction.
def is_degenerate_rank(rs_type: str, rank: int) -> bool:
    return rank < MIN_RANK.get(rs_type, 1)


def _check_rank(rs_type: str, rank: int, allow_degenerate: bool) -> None:
    if rs_type not in RS_TYPES:
        raise RankRangeError(f"Type de système de racines inconnu: '{rs_type}'.")
    degenerate_ok = allow_degenerate or not is_degenerate_rank(rs_type, int(rank))
    if int(rank) < MIN_DEGENERATE_RANK[rs_type] or not degenerate_ok:
        minimum = (MIN_DEGENERATE_RANK if allow_degenerate else MIN_RANK)[rs_type]
        raise RankRangeError(f"Rang {rank} hors plage pour le type {rs_type} (minimum {minimum}).")


# Function: build_positive_system - Construit Φ⁺ du type et du rang donnés (résultat mémorisé).
def build_positive_system(rs_type: str, rank: int, *, allow_degenerate: bool = False) -> PositiveSystem:
    rs_type = str(rs_type).strip().upper()
    _check_rank(rs_type, rank, allow_degenerate)
    return _build_positive_system(rs_type, int(rank))


@lru_cache(maxsize=None)
def _build_positive_system(rs_type: str, rank: int) -> PositiveSystem:
    dim = rank + 1 if rs_type == RS_TYPE_A else rank
    roots = []
    for kind, i, j in _root_labels(rs_type, rank):
        simple = _simple_coords(rs_type, rank, kind, i, j)
        roots.append(
            Root(
                rs_type=rs_type,
                rank=rank,
                kind=kind,
                i=i,
                j=j,
                eps_coords=_eps_coords(dim, kind, i, j),
                simple_coords=simple,
                height=sum(simple),
            )
        )
    roots.sort(key=lambda r: r.sort_key)

    simple = np.array([r.simple_coords for r in roots], dtype=np.int64).reshape(len(roots), rank)
    dominance = np.all(simple[:, None, :] >= simple[None, :, :], axis=2)
    np.fill_diagonal(dominance, False)
    below = tuple(sum(1 << int(u) for u in np.flatnonzero(dominance[t])) for t in range(len(roots)))
    above = tuple(sum(1 << int(u) for u in np.flatnonzero(dominance[:, t])) for t in range(len(roots)))
    log_debug(f"build_positive_system type={rs_type} rank={rank} roots={len(roots)}")
    return PositiveSystem(rs_type=rs_type, rank=rank, roots=tuple(roots), below_masks=below, above_masks=above)


# Function: hasse_covers - Paires (haut, bas) dont la différence est une racine simple.
def hasse_covers(system: PositiveSystem) -> list[tuple[Root, Root]]:
    covers = []
    for upper in system.roots:
        for lower in system.roots:
            if upper.height == lower.height + 1 and upper.dominates(lower):
                covers.append((upper, lower))
    return covers


# Function: coefficient_matrix - Matrice S (base simple) ou T (base orthonormale) d'une liste de racines.
def coefficient_matrix(
    root_list: Sequence[Root],
    basis: str = BASIS_ORTHONORMAL,
    *,
    system: PositiveSystem | None = None,
) -> IntegerMatrix:
    roots = list(root_list)
    owners = {(r.rs_type, r.rank) for r in roots}
    if system is not None:
        owners.add((system.rs_type, system.rank))
    if len(owners) > 1:
        raise DomainError(f"Liste de racines issue de systèmes différents: {sorted(owners)}.")
    if not owners:
        raise DomainError("Liste vide: le système doit être précisé.")
    rs_type, rank = next(iter(owners))
    if basis == BASIS_SIMPLE:
        return IntegerMatrix.from_columns([r.simple_coords for r in roots], rank)
    if basis == BASIS_ORTHONORMAL:
        dim = rank + 1 if rs_type == RS_TYPE_A else rank
        return IntegerMatrix.from_columns([r.eps_coords for r in roots], dim)
    raise DomainError(f"Base inconnue: '{basis}'.")


# Function: basis_change_matrix - Matrice P telle que T_Ψ = P·S_Ψ (colonnes: racines simples en ε).
def basis_change_matrix(rs_type: str, rank: int, *, allow_degenerate: bool = False) -> IntegerMatrix:
    system = build_positive_system(rs_type, rank, allow_degenerate=allow_degenerate)
    simple = sorted(system.simple_roots(), key=lambda r: r.simple_coords.index(1))
    return IntegerMatrix.from_columns([r.eps_coords for r in simple], system.ambient_dim)

