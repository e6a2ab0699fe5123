"""One test group per acceptance criterion; a PASS/FAIL line per criterion is
printed in the terminal summary (see conftest.py).

Published values are typed in below as plain data, independent of the
package's own reference table.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction as F

import pytest

from conftest import oracle_delta, record, strong_table
from wallgrowth.cannon import build_report, geodesic_series, geodesic_word_counts, spherical_series, type_counts
from wallgrowth.cayley import grow_ball, group_source, tiling_ball
from wallgrowth.cones import (
    WEAK,
    check_antennas,
    check_intersection,
    cone_isomorphism,
    discover_types,
    row_violations,
    truncated_cone,
)
from wallgrowth.isometry import compose, group_ids, realize, verify_relations
from wallgrowth.series import Polynomial, RationalFunction, taylor
from wallgrowth.tilings import TILING_DEGREE, TILINGS

rng = random.Random(2024)


def P(*c):
    return Polynomial(c)


ONE_MINUS = P(1, -1)

# spherical growth series, summary table
PUBLISHED_SERIES = {
    "3^6": RationalFunction(P(1, 4, 1), ONE_MINUS**2),
    "4^4": RationalFunction(P(1, 1) ** 2, ONE_MINUS**2),
    "6^3": RationalFunction(P(1, 1, 1), ONE_MINUS**2),
    "(3.6)^2": RationalFunction(P(1, 4, 6, 6, 3, -2), P(1, 0, -1) ** 2),
    "4.8^2": RationalFunction(P(1, 0, 1) * P(1, 1) ** 2, ONE_MINUS**2 * P(1, 1, 1)),
    "3.12^2": RationalFunction(P(1, 1, 1, 3, -1, 5, -3, 4, -2), ONE_MINUS**2 * P(1, 0, 1) ** 2),
    "4.6.12": RationalFunction(P(1, 1, 1) * P(1, -1, 1) * P(1, 1) ** 2, P(1, 0, 0, 0, 0, -1) * ONE_MINUS),
}
# the same entry as printed in the worked example for (3.6)^2
WORKED_EXAMPLE_36 = RationalFunction(P(1, 4, 6, 6, 3, -1), P(1, 0, -1) ** 2)

PUBLISHED_TYPE_COUNTS = {"3^6": 3, "4^4": 3, "6^3": 5, "(3.6)^2": 8, "4.8^2": 14, "3.12^2": 28, "4.6.12": 42}


def lin(a, b, d=1):
    """n -> (a n + b) / d"""
    return lambda n: F(a * n + b, d)


def quad(a, b, c, d=1):
    return lambda n: F(a * n * n + b * n + c, d)


# rows are (period, residue, first n, formula); exceptions are {n: value}
PUBLISHED_DELTA = {
    "3^6": ({0: 1}, [(1, 0, 1, lin(6, 0))]),
    "4^4": ({0: 1}, [(1, 0, 1, lin(4, 0))]),
    "6^3": ({0: 1}, [(1, 0, 1, lin(3, 0))]),
    "(3.6)^2": ({0: 1, 1: 4}, [(2, 0, 2, lin(5, -2)), (2, 1, 2, lin(4, 2))]),
    "4.8^2": ({0: 1}, [(3, 0, 1, lin(8, 0, 3)), (3, 1, 1, lin(8, 1, 3)), (3, 2, 1, lin(8, -1, 3))]),
    "3.12^2": (
        {0: 1, 1: 3, 2: 4},
        [(4, 0, 3, lin(5, -4, 4)), (4, 1, 3, lin(9, 3, 4)), (4, 2, 3, lin(2, 2)), (4, 3, 3, lin(9, -3, 4))],
    ),
    "4.6.12": (
        {0: 1},
        [(5, 0, 1, lin(12, 0, 5)), (5, 1, 1, lin(12, 3, 5)), (5, 2, 1, lin(12, 1, 5)),
         (5, 3, 1, lin(12, -1, 5)), (5, 4, 1, lin(12, -3, 5))],
    ),
}
PUBLISHED_GAMMA = {
    "3^6": ({}, [(1, 0, 0, quad(3, 3, 1))]),
    "4^4": ({}, [(1, 0, 0, quad(2, 2, 1))]),
    "6^3": ({}, [(1, 0, 0, quad(3, 3, 2, 2))]),
    "(3.6)^2": ({0: 1}, [(2, 0, 2, quad(9, 10, -4, 4)), (2, 1, 2, quad(9, 8, 3, 4))]),
    "4.8^2": ({}, [(3, 0, 1, quad(4, 4, 3, 3)), (3, 1, 1, quad(4, 4, 4, 3)), (3, 2, 1, quad(4, 4, 3, 3))]),
    "3.12^2": (
        {0: 1, 1: 4},
        [(4, 0, 3, quad(9, 10, -8, 8)), (4, 1, 3, quad(9, 10, -3, 8)),
         (4, 2, 3, quad(9, 8, 12, 8)), (4, 3, 3, quad(9, 8, 7, 8))],
    ),
    "4.6.12": (
        {},
        [(5, 0, 1, quad(6, 6, 5, 5)), (5, 1, 1, quad(6, 6, 8, 5)), (5, 2, 1, quad(6, 6, 9, 5)),
         (5, 3, 1, quad(6, 6, 8, 5)), (5, 4, 1, quad(6, 6, 5, 5))],
    ),
}
# printed rows known to disagree with their own series, and the corrected row
KNOWN_MISPRINTS = {("3.12^2", "delta", 0): lin(5, -4, 2)}

N_CHECK = 60


@pytest.fixture(scope="module")
def reports():
    return {t: build_report(t, 40 if t == "(3.6)^2" else 30) for t in TILINGS}


# -- 1 ------------------------------------------------------------------------


@pytest.mark.parametrize("symbol", TILINGS)
def test_c1_spherical_series_exact(reports, symbol):
    r = reports[symbol]
    ok = r.spherical == PUBLISHED_SERIES[symbol]
    detail = ""
    if symbol == "(3.6)^2":
        ok = ok and r.spherical != WORKED_EXAMPLE_36 and r.variant == "summary table"
        detail = f"confirmed variant: {r.variant}"
    record(1, f"Delta exact for {symbol}", ok, detail)
    assert ok


# -- 2 ------------------------------------------------------------------------


@pytest.mark.parametrize("symbol", TILINGS)
def test_c2_series_matches_breadth_first(symbol):
    delta, _ = spherical_series(strong_table(symbol))
    ok = taylor(delta, 30) == list(oracle_delta(symbol, 30))
    record(2, f"taylor(Delta, 30) = BFS for {symbol}", ok)
    assert ok


@pytest.mark.parametrize("gid", group_ids())
def test_c2_presentation_balls(gid):
    spec = realize(gid)
    a = grow_ball(group_source(spec), 25).sphere_counts
    ok = a == list(oracle_delta(spec.tiling, 25))
    record(2, f"{gid} ball = {spec.tiling} ball to radius 25", ok)
    assert ok


# -- 3 ------------------------------------------------------------------------

_COUNT_GAP = (
    "minimal strong-equivalence classes number 22 (3.12^2) and 41 (4.6.12), stable "
    "for truncation depths 10..26 and confirmed by the oracle; the published counts "
    "are not reproducible"
)


@pytest.mark.parametrize(
    "symbol",
    [
        pytest.param(t, marks=pytest.mark.xfail(strict=True, reason=_COUNT_GAP))
        if t in ("3.12^2", "4.6.12")
        else t
        for t in TILINGS
    ],
)
def test_c3_type_counts(symbol):
    t = strong_table(symbol)
    want = PUBLISHED_TYPE_COUNTS[symbol]
    ok = t.size == want and t.witness is not None and t.witness[1] == t.witness[0] + 1
    record(3, f"{symbol}: {want} types", ok, f"got {t.size}, stable at {t.witness[0]}/{t.witness[1]}")
    assert ok


# -- 4 ------------------------------------------------------------------------


def test_c4_hexagonal_m_and_n():
    t = strong_table("3^6")
    ok = t.m_values == [0, 1, 2] and t.transition == [[0, 6, 0], [0, 1, 2], [0, 0, 2]]
    record(4, "3^6 m = (0,1,2), n(e,A)=6, n(A,A)=1, n(A,B)=2, n(B,B)=2", ok)
    assert ok


# -- 5 ------------------------------------------------------------------------


def _compare_closed_form(symbol, kind, qp, published):
    exceptions, rows = published
    problems = []
    for n, v in exceptions.items():
        if qp(n) != v:
            problems.append(f"n={n}: {qp(n)} vs {v}")
    for k, (period, residue, first, formula) in enumerate(rows):
        fixed = KNOWN_MISPRINTS.get((symbol, kind, k))
        ns = [n for n in range(first, N_CHECK) if n % period == residue]
        printed_ok = all(qp(n) == formula(n) for n in ns)
        if fixed is None:
            if not printed_ok:
                problems.append(f"branch {residue} mod {period}")
        else:
            if printed_ok or not all(qp(n) == fixed(n) for n in ns):
                problems.append(f"misprinted branch {residue} mod {period} not resolved as expected")
    return problems


@pytest.mark.parametrize("symbol", TILINGS)
def test_c5_closed_forms(reports, symbol):
    r = reports[symbol]
    coeffs = taylor(r.spherical, N_CHECK)
    cum = taylor(r.cumulative, N_CHECK)
    assert all(r.spherical_closed(n) == coeffs[n] for n in range(N_CHECK))
    assert all(r.cumulative_closed(n) == cum[n] for n in range(N_CHECK))
    problems = _compare_closed_form(symbol, "delta", r.spherical_closed, PUBLISHED_DELTA[symbol])
    problems += _compare_closed_form(symbol, "gamma", r.cumulative_closed, PUBLISHED_GAMMA[symbol])
    detail = "; ".join(problems)
    if symbol == "3.12^2" and not problems:
        detail = "printed (5n-4)/4 for n = 0 mod 4 is (5n-4)/2"
    if symbol == "(3.6)^2":
        detail = "worked-example numerator -z^5 rejected by the oracle"
    record(5, f"closed forms for {symbol}", not problems, detail)
    assert not problems


# -- 6 ------------------------------------------------------------------------


@pytest.mark.parametrize("gid", group_ids())
def test_c6_relations(gid):
    spec = realize(gid)
    rep = verify_relations(spec)
    ok = rep.passed and spec.degree == TILING_DEGREE[spec.tiling]
    record(6, f"{gid} relations and degree", ok)
    assert ok


# -- 7 ------------------------------------------------------------------------


@pytest.mark.parametrize("gid", ["p1:b", "p3:b", "p31m", "p4g"])
def test_c7_geodesic_characterization(gid):
    # a word is geodesic iff each of its steps increases the length
    spec = realize(gid)
    src = group_source(spec)
    ball = grow_ball(src, 14)
    bad = 0
    for _ in range(400):
        path = [src.origin]
        for _ in range(rng.randint(1, 12)):
            path.append(rng.choice(src.expand(path[-1]))[1])
        geodesic = ball.length[path[-1]] == len(path) - 1
        stepwise = all(ball.length[b] == ball.length[a] + 1 for a, b in zip(path, path[1:]))
        bad += geodesic != stepwise
    record(7, f"geodesic characterization on {gid}", bad == 0, f"{bad} failures")
    assert bad == 0


def _distances_from(ball, g, limit):
    dist = {g: 0}
    queue = deque([g])
    while queue:
        v = queue.popleft()
        if dist[v] == limit:
            continue
        for w in ball.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


@pytest.mark.parametrize("symbol", ["3^6", "(3.6)^2", "3.12^2", "4.6.12"])
def test_c7_cone_distance(symbol):
    # inside C(g), the distance from g equals the length difference
    depth = 5
    ball = tiling_ball(symbol, 20)
    bad = 0
    for _ in range(20):
        g = rng.choice(ball.sphere(rng.randint(1, 8)))
        core = truncated_cone(ball, g, depth).core
        dist = _distances_from(ball, g, depth)
        bad += sum(dist.get(h) != ball.length[h] - ball.length[g] for h in core)
    record(7, f"cone distance on {symbol}", bad == 0, f"{bad} failures")
    assert bad == 0


@pytest.mark.parametrize("symbol", ["3^6", "(3.6)^2", "3.12^2", "4.8^2"])
def test_c7_isomorphisms_keep_edge_classes(symbol):
    t = strong_table(symbol)
    clf = t.classifier
    ball = clf.ensure(12 + t.depth + 4)
    members = {}
    for v in ball.order:
        if ball.length[v] > 10:
            break
        members.setdefault(t.type_of(v), []).append(v)
    bad = 0
    for j, vs in members.items():
        for u in rng.sample(vs, min(4, len(vs))):
            c1, c2 = clf.cone(t.reps[j]), clf.cone(u)
            phi = cone_isomorphism(c1, c2)
            for a, b in c1.core_edges + c1.antenna_edges:
                bad += (ball.length[b] - ball.length[a]) != (ball.length[phi[b]] - ball.length[phi[a]])
    record(7, f"edge classes preserved on {symbol}", bad == 0, f"{bad} failures")
    assert bad == 0


@pytest.mark.parametrize("symbol", TILINGS)
def test_c7_rows_depend_only_on_type(symbol):
    bad = row_violations(strong_table(symbol), 16)
    record(7, f"(m, n-row) is a type invariant on {symbol}", not bad, f"{len(bad)} violations")
    assert not bad


@pytest.mark.parametrize("gid", ["p1:b", "p3:b", "p31m"])
def test_c7_intersection_and_antennas(gid):
    spec = realize(gid)
    ball = grow_ball(group_source(spec), 20)
    bad = done = 0
    while done < 30:
        g = rng.choice(ball.sphere(rng.randint(0, 6)))
        up = [s for _, s in spec.alphabet() if ball.length.get(compose(s, g)) == ball.length[g] + 1]
        if not up:
            continue
        s = rng.choice(up)
        done += 1
        bad += not check_intersection(ball, g, s, 3)
        bad += not check_antennas(ball, g, s, 3)
    record(7, f"intersection and antenna identities on {gid} ({spec.tiling})", bad == 0, f"{bad} failures")
    assert bad == 0


@pytest.mark.parametrize("symbol", TILINGS)
def test_c7_double_count(symbol):
    t = strong_table(symbol)
    _, f = spherical_series(t)
    direct = type_counts(t, 20)
    coeffs = [taylor(fj, 20) for fj in f]
    bad = 0
    for n in range(21):
        for j in range(t.size):
            bad += coeffs[j][n] != direct[n][j]
            if n and j:
                bad += t.m_values[j] * direct[n][j] != sum(t.transition[i][j] * direct[n - 1][i] for i in range(t.size))
    record(7, f"per-type double count n <= 20 on {symbol}", bad == 0, f"{bad} failures")
    assert bad == 0


# -- 8 ------------------------------------------------------------------------


@pytest.mark.parametrize("symbol", TILINGS)
def test_c8_geodesic_dominates(symbol):
    geo, _ = geodesic_series(discover_types(symbol, WEAK))
    delta, _ = spherical_series(strong_table(symbol))
    ok = all(a >= b for a, b in zip(taylor(geo, 15), taylor(delta, 15)))
    record(8, f"l(n) >= delta(n), n <= 15, on {symbol}", ok)
    assert ok


def test_c8_square_lattice_enumeration():
    spec = realize("p1:a")
    geo, _ = geodesic_series(discover_types(spec, WEAK))
    ok = geodesic_word_counts(spec, 8) == taylor(geo, 8)
    record(8, "enumerated geodesic words on p1:a match the series, n <= 8", ok)
    assert ok
