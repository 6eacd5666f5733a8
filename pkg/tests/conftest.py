from __future__ import annotations

from pathlib import Path

import pytest

import cordalg
from cordalg import build_cord_algebra, parse_diagram

FIXTURES = Path(cordalg.__file__).parent / "fixtures"


def load(name: str):
    return parse_diagram((FIXTURES / f"{name}.json").read_text())


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def square():
    return load("square_knot")


@pytest.fixture(scope="session")
def trefoil():
    return load("trefoil")


@pytest.fixture(scope="session")
def square_alg(square):
    return build_cord_algebra(square)


@pytest.fixture(scope="session")
def trefoil_alg(trefoil):
    return build_cord_algebra(trefoil)


# (criterion, part, ok, detail, seconds), filled in by test_acceptance.py
ACCEPTANCE: list[tuple[int, str, bool, str, float]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted({r[0] for r in ACCEPTANCE}):
        parts = [r for r in ACCEPTANCE if r[0] == n]
        ok = all(r[2] for r in parts)
        secs = sum(r[4] for r in parts)
        detail = "; ".join(
            f"{p}: {'ok' if good else 'FAILED'}{' (' + d + ')' if d else ''}"
            for _, p, good, d, _ in parts
        )
        tr.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n} ({secs:.2f} s) {detail}")
