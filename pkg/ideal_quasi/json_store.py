from __future__ import annotations

import json
from pathlib import Path
from typing import Any


def read_json_file(path: Path) -> Any:
    content = path.read_text(encoding="utf-8-sig")
    return json.loads(content)


# Function: dump_json_text - Sérialise un payload de façon stable (clés dans l'ordre d'insertion, pas d'horodatage).
def dump_json_text(payload: Any, *, indent: int | None = 2) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=indent)


def write_json_file(
    path: Path,
    payload: Any,
    *,
    indent: int = 2,
) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json_text(payload, indent=indent) + "\n", encoding="utf-8")
