from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Any

from ideal_quasi.debug_logger import log_debug
from ideal_quasi.json_store import read_json_file
from ideal_quasi.paths import config_path, default_count_cache_path
from ideal_quasi.runtime_constants import (
    DEFAULT_CACHE_MAX_ENTRIES,
    DEFAULT_SUBSET_BUDGET,
    DEFAULT_WORK_BUDGET,
    DEFAULT_WORKERS,
    IDEAL_ENUMERATION_GUARD,
)


# Class: Settings - Réglages d'exécution (budgets, parallélisme, contrôles croisés, cache).
@dataclass(frozen=True)
class Settings:
    work_budget: int = DEFAULT_WORK_BUDGET
    workers: int = DEFAULT_WORKERS
    ideal_guard: int = IDEAL_ENUMERATION_GUARD
    subset_budget: int = DEFAULT_SUBSET_BUDGET
    cross_check: bool = True
    count_cache: bool = False
    cache_db_path: str = ""
    cache_max_entries: int = DEFAULT_CACHE_MAX_ENTRIES

    # Method: with_overrides - Retourne une copie où seules les valeurs fournies (non None) changent.
    def with_overrides(self, **changes: Any) -> Settings:
        kept = {key: value for key, value in changes.items() if value is not None}
        return replace(self, **kept) if kept else self


# Function: load_settings - Charge les réglages: variables d'environnement puis config.json.
def load_settings() -> Settings:
    defaults: dict[str, str] = {
        "work_budget": os.getenv("PYQUASI_WORK_BUDGET", str(DEFAULT_WORK_BUDGET)),
        "workers": os.getenv("PYQUASI_WORKERS", str(DEFAULT_WORKERS)),
        "ideal_guard": os.getenv("PYQUASI_IDEAL_GUARD", str(IDEAL_ENUMERATION_GUARD)),
        "subset_budget": os.getenv("PYQUASI_SUBSET_BUDGET", str(DEFAULT_SUBSET_BUDGET)),
        "cross_check": os.getenv("PYQUASI_CROSS_CHECK", "1"),
        "count_cache": os.getenv("PYQUASI_COUNT_CACHE", "0"),
        "cache_db_path": os.getenv("PYQUASI_CACHE_DB", ""),
        "cache_max_entries": os.getenv("PYQUASI_CACHE_MAX", str(DEFAULT_CACHE_MAX_ENTRIES)),
    }

    try:
        file_path = config_path()
        if file_path.exists():
            data = read_json_file(file_path)
            if isinstance(data, dict):
                defaults.update({k: str(v) for k, v in data.items() if k in defaults})
                log_debug(f"load_settings config.json applique: {file_path}")
    except (OSError, ValueError) as exc:
        log_debug(f"load_settings impossible de lire config.json, valeurs par defaut utilisees: {exc}")

    settings = Settings(
        work_budget=_to_positive_int(defaults["work_budget"], DEFAULT_WORK_BUDGET),
        workers=_to_positive_int(defaults["workers"], DEFAULT_WORKERS),
        ideal_guard=_to_positive_int(defaults["ideal_guard"], IDEAL_ENUMERATION_GUARD),
        subset_budget=_to_positive_int(defaults["subset_budget"], DEFAULT_SUBSET_BUDGET),
        cross_check=_to_bool(defaults["cross_check"]),
        count_cache=_to_bool(defaults["count_cache"]),
        cache_db_path=defaults["cache_db_path"].strip(),
        cache_max_entries=_to_positive_int(defaults["cache_max_entries"], DEFAULT_CACHE_MAX_ENTRIES),
    )
    log_debug(
        f"load_settings work_budget={settings.work_budget} workers={settings.workers} "
        f"cross_check={settings.cross_check} count_cache={settings.count_cache}"
    )
    return settings


# Function: resolve_cache_db_path - Retourne le chemin de la base du cache de comptages.
def resolve_cache_db_path(settings: Settings) -> str:
    return settings.cache_db_path or str(default_count_cache_path())


def _to_positive_int(value: object, fallback: int) -> int:
    try:
        parsed = int(str(value).strip().replace("_", ""))
    except (TypeError, ValueError):
        return fallback
    return parsed if parsed > 0 else fallback


def _to_bool(value: object) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in {"1", "true", "yes", "on"}
