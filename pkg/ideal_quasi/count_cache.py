from __future__ import annotations

import hashlib
import sqlite3
from contextlib import closing
from typing import Sequence

from ideal_quasi.debug_logger import log_debug
from ideal_quasi.runtime_constants import DEFAULT_CACHE_MAX_ENTRIES


# Function: matrix_key - Empreinte SHA-256 canonique d'une matrice et de ses décalages.
def matrix_key(entries: Sequence[Sequence[int]], offsets: Sequence[int] | None = None) -> str:
    rows_text = ";".join(",".join(str(int(v)) for v in row) for row in entries)
    offsets_text = ",".join(str(int(v)) for v in offsets) if offsets is not None else ""
    payload = f"{len(entries)}|{rows_text}|{offsets_text}"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# Function: init_cache_db - Initialise le schéma SQLite du cache de comptages.
def init_cache_db(db_path: str) -> None:
    log_debug(f"init_cache_db start db_path='{db_path}'")
    with closing(sqlite3.connect(db_path)) as conn:
        conn.execute(
            """
            CREATE TABLE IF NOT EXISTS counts (
                matrix_key TEXT NOT NULL,
                q INTEGER NOT NULL,
                count TEXT NOT NULL,
                rows INTEGER NOT NULL DEFAULT 0,
                PRIMARY KEY (matrix_key, q)
            )
            """
        )
        # Bases créées avant la colonne rows.
        _ensure_counts_columns(conn)
        conn.commit()
    log_debug(f"init_cache_db done db_path='{db_path}'")


def _ensure_counts_columns(conn: sqlite3.Connection) -> None:
    existing = {str(row[1]) for row in conn.execute("PRAGMA table_info(counts)").fetchall()}
    if "rows" not in existing:
        conn.execute("ALTER TABLE counts ADD COLUMN rows INTEGER NOT NULL DEFAULT 0")


# Class: CountCache - Cache persistant des comptages exacts de l'oracle.
class CountCache:
    """Persistent (matrix_key, q) -> count store backed by sqlite."""

    def __init__(self, db_path: str, *, max_entries: int = DEFAULT_CACHE_MAX_ENTRIES) -> None:
        self.db_path = db_path
        self.max_entries = max(1, int(max_entries))
        self.hits = 0
        self.misses = 0
        init_cache_db(db_path)

    # Method: get - Retourne le comptage mémorisé ou None.
    def get(self, key: str, q: int) -> int | None:
        with closing(sqlite3.connect(self.db_path)) as conn:
            row = conn.execute("SELECT count FROM counts WHERE matrix_key = ? AND q = ?", (key, int(q))).fetchone()
        if row is None:
            self.misses += 1
            return None
        self.hits += 1
        # Les comptages dépassent 2**63 pour les grands q: stockés en texte.
        return int(row[0])

    # Method: put - Mémorise un comptage (remplace une valeur existante) puis borne la taille du cache.
    def put(self, key: str, q: int, count: int, *, rows: int = 0) -> None:
        with closing(sqlite3.connect(self.db_path)) as conn:
            conn.execute(
                "INSERT OR REPLACE INTO counts (matrix_key, q, count, rows) VALUES (?, ?, ?, ?)",
                (key, int(q), str(int(count)), int(rows)),
            )
            pruned = conn.execute(
                "DELETE FROM counts WHERE rowid <= (SELECT MAX(rowid) FROM counts) - ?",
                (self.max_entries,),
            ).rowcount
            conn.commit()
        if pruned > 0:
            log_debug(f"CountCache.put pruned={pruned} max_entries={self.max_entries}")

    # Method: size - Nombre d'entrées présentes dans le cache.
    def size(self) -> int:
        with closing(sqlite3.connect(self.db_path)) as conn:
            row = conn.execute("SELECT COUNT(*) FROM counts").fetchone()
        return int(row[0]) if row else 0

    # Method: clear - Vide le cache (option --clear-cache).
    def clear(self) -> None:
        log_debug(f"CountCache.clear db_path='{self.db_path}'")
        with closing(sqlite3.connect(self.db_path)) as conn:
            conn.execute("DELETE FROM counts")
            conn.commit()
