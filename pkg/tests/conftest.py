import os
import sys

import pytest

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT_DIR, "TraceHub"))
sys.path.insert(0, ROOT_DIR)

from algebra.group_algebra import Endomorphism  # noqa: E402

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")

IDENTITY = Endomorphism.identity()
SHEAR = Endomorphism.from_rows([[1, 1], [0, 1]])

# det([phi]-I) = 0 for the first three and the last one
PHI_PANEL = [
    IDENTITY,
    SHEAR,
    Endomorphism.from_rows([[1, 2], [0, 3]]),
    Endomorphism.from_rows([[3, 0], [0, 2]]),
    Endomorphism.from_rows([[2, 0], [0, 2]]),
    Endomorphism.from_rows([[2, 1], [1, 1]]),
    Endomorphism.from_rows([[-1, 0], [0, -1]]),
    Endomorphism.from_rows([[1, 0], [0, -1]]),
]


@pytest.fixture(params=PHI_PANEL, ids=lambda phi: str(phi.rows()))
def phi(request):
    return request.param


@pytest.fixture(autouse=True)
def quiet_logs(monkeypatch):
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    monkeypatch.delenv("LOG_FILE", raising=False)
