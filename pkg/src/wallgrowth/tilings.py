"""Periodic edge tables for the seven tilings.

A vertex of a tiling is ``(site, i, j)``: a site of the unit cell plus an
integer cell offset. Each undirected edge is listed once as
``(site_a, site_b, (di, dj))``, joining ``(site_a, i, j)`` to
``(site_b, i + di, j + dj)``. No group theory is involved here.
"""

from __future__ import annotations

TILINGS = ("3^6", "4^4", "6^3", "(3.6)^2", "4.8^2", "3.12^2", "4.6.12")

TILING_DEGREE = {
    "3^6": 6,
    "4^4": 4,
    "6^3": 3,
    "(3.6)^2": 4,
    "4.8^2": 3,
    "3.12^2": 3,
    "4.6.12": 3,
}

BIPARTITE = frozenset({"4^4", "6^3", "4.8^2", "4.6.12"})

_ALIASES = {
    "36": "3^6",
    "44": "4^4",
    "63": "6^3",
    "3.6.3.6": "(3.6)^2",
    "(3.6)2": "(3.6)^2",
    "3.6^2": "(3.6)^2",
    "4.8.8": "4.8^2",
    "3.12.12": "3.12^2",
}


def normalize_symbol(symbol: str) -> str:
    s = symbol.strip().replace(" ", "")
    s = _ALIASES.get(s, s)
    if s not in TILING_DEGREE:
        raise KeyError(f"unknown tiling {symbol!r}; expected one of {', '.join(TILINGS)}")
    return s


# Honeycomb with A at (a1+a2)/3 and B at 2(a1+a2)/3 in the triangular basis.
_HONEYCOMB = [("A", "B", (0, 0)), ("A", "B", (-1, 0)), ("A", "B", (0, -1))]


def _hexagons_round_honeycomb():
    # Each honeycomb vertex becomes a hexagon; site k sits at angle 60k degrees.
    # Squares cross the honeycomb edges at 30, 150 and 270 degrees from A.
    edges = []
    for p in "AB":
        for k in range(6):
            edges.append((f"{p}{k}", f"{p}{(k + 1) % 6}", (0, 0)))
    edges += [
        ("A0", "B4", (0, 0)),
        ("A1", "B3", (0, 0)),
        ("A2", "B0", (-1, 0)),
        ("A3", "B5", (-1, 0)),
        ("A4", "B2", (0, -1)),
        ("A5", "B1", (0, -1)),
    ]
    return edges


def _triangles_round_honeycomb():
    # Each honeycomb vertex becomes a triangle, one site per incident edge.
    edges = []
    for p in "AB":
        edges += [(f"{p}0", f"{p}1", (0, 0)), (f"{p}1", f"{p}2", (0, 0)), (f"{p}2", f"{p}0", (0, 0))]
    edges += [("A0", "B0", (0, 0)), ("A1", "B1", (-1, 0)), ("A2", "B2", (0, -1))]
    return edges


EDGE_TABLES: dict[str, list[tuple[str, str, tuple[int, int]]]] = {
    "3^6": [("v", "v", (1, 0)), ("v", "v", (0, 1)), ("v", "v", (1, 1))],
    "4^4": [("v", "v", (1, 0)), ("v", "v", (0, 1))],
    "6^3": list(_HONEYCOMB),
    # kagome: sites at 0, a1/2, a2/2
    "(3.6)^2": [
        ("A", "B", (0, 0)),
        ("A", "C", (0, 0)),
        ("B", "C", (0, 0)),
        ("A", "B", (-1, 0)),
        ("A", "C", (0, -1)),
        ("B", "C", (1, -1)),
    ],
    # small diamond N, E, S, W round every lattice point of Z^2
    "4.8^2": [
        ("N", "E", (0, 0)),
        ("E", "S", (0, 0)),
        ("S", "W", (0, 0)),
        ("W", "N", (0, 0)),
        ("E", "W", (1, 0)),
        ("N", "S", (0, 1)),
    ],
    "3.12^2": _triangles_round_honeycomb(),
    "4.6.12": _hexagons_round_honeycomb(),
}

ORIGIN_SITE = {"3^6": "v", "4^4": "v", "6^3": "A", "(3.6)^2": "A", "4.8^2": "N", "3.12^2": "A0", "4.6.12": "A0"}


def sites(symbol: str) -> list[str]:
    out: list[str] = []
    for a, b, _ in EDGE_TABLES[normalize_symbol(symbol)]:
        for s in (a, b):
            if s not in out:
                out.append(s)
    return out


def neighbor_offsets(symbol: str) -> dict[str, list[tuple[str, int, int]]]:
    """For each site, the list of (site, di, dj) it is joined to."""
    table: dict[str, list[tuple[str, int, int]]] = {s: [] for s in sites(symbol)}
    for a, b, (di, dj) in EDGE_TABLES[normalize_symbol(symbol)]:
        table[a].append((b, di, dj))
        table[b].append((a, -di, -dj))
    return table
