from __future__ import annotations

import functools

import pytest

from wallgrowth.cayley import grow_ball, tiling_source
from wallgrowth.cones import discover_types

# criterion number -> list of (label, passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, label: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, []).append((label, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[k]
        ok = all(p for _, p, _ in rows)
        tr.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}")
        for label, passed, detail in rows:
            tail = f"  ({detail})" if detail else ""
            tr.write_line(f"    {'pass' if passed else 'FAIL'}  {label}{tail}")


@functools.lru_cache(maxsize=None)
def strong_table(symbol: str):
    return discover_types(symbol)


@functools.lru_cache(maxsize=None)
def oracle_delta(symbol: str, depth: int) -> tuple[int, ...]:
    return tuple(grow_ball(tiling_source(symbol), depth).sphere_counts)


@pytest.fixture(scope="session")
def tables():
    return strong_table
