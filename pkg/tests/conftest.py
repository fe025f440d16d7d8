from __future__ import annotations

import os
import tempfile

import pytest

# Le répertoire de données doit être isolé avant le premier import du logger.
os.environ.setdefault("PYQUASI_DATA_DIR", tempfile.mkdtemp(prefix="pyquasi-tests-"))

from ideal_quasi.ideals import Ideal, parse_ideal_spec  # noqa: E402
from ideal_quasi.root_systems import build_positive_system  # noqa: E402


def make_ideal(rs_type: str, rank: int, spec: str | None = None) -> Ideal:
    system = build_positive_system(rs_type, rank)
    if spec is None:
        return Ideal(system, system.full_mask)
    return parse_ideal_spec(system, spec)


@pytest.fixture
def b5_height_cut() -> Ideal:
    return make_ideal("B", 5, "ht<=7")


@pytest.fixture
def c5_enclosed() -> Ideal:
    return make_ideal("C", 5, "gen:e1-e5,e2+e3")


@pytest.fixture
def d5_height_cut() -> Ideal:
    return make_ideal("D", 5, "ht<=6")
