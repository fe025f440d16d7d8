from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from ideal_quasi.config import Settings
from ideal_quasi.count_cache import CountCache, matrix_key
from ideal_quasi.debug_logger import log_debug
from ideal_quasi.errors import CapacityError, DomainError
from ideal_quasi.root_systems import IntegerMatrix
from ideal_quasi.runtime_constants import COUNT_LOG_WORK_THRESHOLD


# Function: work_estimate - Estimation q^ℓ·m des mises à jour élémentaires d'un comptage.
def work_estimate(matrix: IntegerMatrix, q: int) -> int:
    return int(q) ** matrix.rows * max(matrix.cols, 1)


def _count_slab(first_value: int, coeffs: np.ndarray, shift: np.ndarray, last_row: np.ndarray, q: int) -> int:
    active_rows = int(last_row.max()) + 1
    cols = np.arange(coeffs.shape[1])
    partial = np.mod(shift + first_value * coeffs[0], q)[None, :]
    values = np.arange(q, dtype=np.int64)

    for row in range(active_rows):
        if row > 0:
            step = np.outer(values, coeffs[row, cols])
            partial = np.mod(partial[:, None, :] + step[None, :, :], q).reshape(-1, cols.size)
        settled = last_row[cols] == row
        if settled.any():
            keep = np.all(partial[:, settled] != 0, axis=1)
            partial = partial[keep][:, ~settled]
            cols = cols[~settled]
        if partial.shape[0] == 0:
            return 0
        if cols.size == 0:
            return partial.shape[0] * q ** (active_rows - 1 - row)
    return partial.shape[0]


def _count_points(entries: np.ndarray, offsets: np.ndarray, q: int, workers: int) -> int:
    n_rows = entries.shape[0]
    coeffs = np.mod(entries, q)
    shift = np.mod(offsets, q)
    touched = (coeffs != 0).any(axis=0)

    # Colonne constante: satisfaite partout ou nulle part.
    if np.any(shift[~touched] == 0):
        return 0
    coeffs = coeffs[:, touched]
    shift = shift[touched]
    if coeffs.shape[1] == 0:
        return q**n_rows

    nonzero = coeffs != 0
    last_row = n_rows - 1 - np.argmax(nonzero[::-1, :], axis=0)
    free_rows = n_rows - 1 - int(last_row.max())
    # Tranches indépendantes selon la valeur de la première coordonnée.
    if workers > 1 and q > 1:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="slab") as pool:
            slabs = list(pool.map(lambda a: _count_slab(a, coeffs, shift, last_row, q), range(q)))
    else:
        slabs = [_count_slab(a, coeffs, shift, last_row, q) for a in range(q)]
    return int(sum(slabs)) * q**free_rows


def _run_count(
    matrix: IntegerMatrix,
    offsets: Sequence[int],
    q: int,
    settings: Settings | None,
    cache: CountCache | None,
) -> int:
    if int(q) < 1:
        raise DomainError(f"q doit être >= 1 (reçu {q}).")
    q = int(q)
    settings = settings or Settings()
    estimate = work_estimate(matrix, q)
    if estimate > settings.work_budget:
        raise CapacityError(
            f"Comptage trop coûteux: q^ℓ·m = {estimate} dépasse le budget {settings.work_budget}.",
            estimate=estimate,
            budget=settings.work_budget,
        )

    key = ""
    if cache is not None:
        key = matrix_key(matrix.entries, offsets)
        cached = cache.get(key, q)
        if cached is not None:
            return cached

    entries = matrix.as_array()
    shift = np.array(list(offsets), dtype=np.int64).reshape(matrix.cols)
    count = _count_points(entries, shift, q, settings.workers)

    if estimate >= COUNT_LOG_WORK_THRESHOLD:
        log_debug(f"count rows={matrix.rows} cols={matrix.cols} q={q} work={estimate} count={count}")
    if cache is not None:
        cache.put(key, q, count, rows=matrix.rows)
    return count


# Function: count_complement - Nombre exact de z dans (Z/qZ)^ℓ évitant tous les hyperplans des colonnes.
def count_complement(
    matrix: IntegerMatrix,
    q: int,
    *,
    settings: Settings | None = None,
    cache: CountCache | None = None,
) -> int:
    return _run_count(matrix, (0,) * matrix.cols, q, settings, cache)


# Function: count_shifted - Comptage avec décalage additif par colonne (z·T + g·S).
def count_shifted(
    matrix_t: IntegerMatrix,
    offsets: Sequence[int],
    q: int,
    *,
    settings: Settings | None = None,
    cache: CountCache | None = None,
) -> int:
    if len(offsets) != matrix_t.cols:
        raise DomainError(f"{len(offsets)} décalages pour {matrix_t.cols} colonnes.")
    return _run_count(matrix_t, offsets, q, settings, cache)


# Function: contraction - Restreint à l'hyperplan d'une colonne ±e_k: supprime la ligne k et la colonne.
def contraction(matrix: IntegerMatrix, column_index: int) -> IntegerMatrix:
    if not 0 <= column_index < matrix.cols:
        raise DomainError(f"Colonne {column_index} hors de la matrice {matrix.rows}x{matrix.cols}.")
    column = matrix.column(column_index)
    support = [r for r, v in enumerate(column) if v != 0]
    if len(support) != 1 or abs(column[support[0]]) != 1:
        raise DomainError(f"Contraction non supportée: la colonne {column} n'est pas ±e_k.")
    dropped_row = support[0]
    kept_cols = [c for c in range(matrix.cols) if c != column_index]
    rows = [
        [matrix.entries[r][c] for c in kept_cols]
        for r in range(matrix.rows)
        if r != dropped_row
    ]
    return IntegerMatrix.from_rows(rows, n_cols=len(kept_cols))
