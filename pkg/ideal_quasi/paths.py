from __future__ import annotations

import os
from pathlib import Path


APP_DIR_NAME = "PyQuasi"


def data_dir() -> Path:
    override = os.getenv("PYQUASI_DATA_DIR", "").strip()
    if override:
        directory = Path(override)
    else:
        base = Path(os.getenv("APPDATA", Path.home()))
        directory = base / APP_DIR_NAME
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def config_path() -> Path:
    return data_dir() / "config.json"


def debug_log_path_candidates() -> list[Path]:
    candidates: list[Path] = []
    raw = os.getenv("PYQUASI_DEBUG_LOG", "").strip()
    if raw:
        candidates.append(Path(raw))
    candidates.append(data_dir() / "debug.log")
    return candidates


def default_count_cache_path() -> Path:
    return data_dir() / "counts.db"
