"""Truncated cones, extended cones, and discovery of cone types.

The cone C(g) is the set of h with a geodesic from the identity through g to
h; it is built level by level along norm-increasing edges. The extended cone
adds every vertex joined to the cone by a tangent edge (an "antenna").
Cones are compared by canonical forms of the rooted, colored graphs they
span, truncated at a fixed depth below the root. Discovery is repeated at two
consecutive depths and accepted only when the results agree.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from string import ascii_uppercase

from .canon import canonical_form, isomorphism
from .cayley import Ball, FrontierError, GraphSource, as_source, grow_ball
from .isometry import Isometry, compose, inverse
from .tilings import TILING_DEGREE

STRONG = "strongExtended"
WEAK = "weakCone"


@dataclass
class RootedCone:
    root: object
    depth: int
    core: dict  # vertex -> depth below the root
    antenna: list = field(default_factory=list)
    core_edges: list = field(default_factory=list)
    antenna_edges: list = field(default_factory=list)  # (core vertex, antenna vertex)

    @property
    def vertices(self) -> list:
        return list(self.core) + list(self.antenna)

    @property
    def extended(self) -> bool:
        return bool(self.antenna)

    def graph(self, with_antennas: bool = True):
        """(vertex list, adjacency by index, colors) for canonical labeling."""
        verts = list(self.core) + (list(self.antenna) if with_antennas else [])
        index = {v: i for i, v in enumerate(verts)}
        adj: list[list[int]] = [[] for _ in verts]
        edges = self.core_edges + (self.antenna_edges if with_antennas else [])
        for a, b in edges:
            adj[index[a]].append(index[b])
            adj[index[b]].append(index[a])
        colors = []
        for v in verts:
            if v == self.root:
                colors.append((0, 0))
            elif v in self.core:
                colors.append((1, self.core[v]))
            else:
                colors.append((2, 0))
        return verts, adj, colors


def truncated_cone(ball: Ball, g, depth: int) -> RootedCone:
    """Vertices h >= g with |h| - |g| <= depth, and all ball edges among them."""
    if ball.length[g] + depth + 1 >= ball.radius:
        raise FrontierError(
            f"cone of depth {depth} at length {ball.length[g]} needs radius > {ball.length[g] + depth + 1}"
        )
    core = {g: 0}
    level = [g]
    for k in range(1, depth + 1):
        nxt = []
        for u in level:
            for w in ball.increasing(u):
                if w not in core:
                    core[w] = k
                    nxt.append(w)
        level = nxt
    edges = []
    order = {v: i for i, v in enumerate(core)}
    for u in core:
        for w in ball.neighbors(u):
            if w in order and order[u] < order[w]:
                edges.append((u, w))
    return RootedCone(g, depth, core, core_edges=edges)


def extend_cone(ball: Ball, cone: RootedCone) -> RootedCone:
    """Add the antennas: tangent edges leaving the cone, with their far ends."""
    antenna: list = []
    seen = set()
    aedges = []
    for u in cone.core:
        for w in ball.tangent(u):
            if w in cone.core:
                continue
            aedges.append((u, w))
            if w not in seen:
                seen.add(w)
                antenna.append(w)
    return RootedCone(cone.root, cone.depth, cone.core, antenna, cone.core_edges, aedges)


def extended_cone(ball: Ball, g, depth: int) -> RootedCone:
    return extend_cone(ball, truncated_cone(ball, g, depth))


def cone_certificate(cone: RootedCone, with_antennas: bool = True):
    _, adj, colors = cone.graph(with_antennas)
    return canonical_form(adj, colors)[0]


def strong_equivalent(c1: RootedCone, c2: RootedCone) -> bool:
    """Rooted isomorphism of extended cones carrying core onto core."""
    if c1.depth != c2.depth:
        raise ValueError("cones must be truncated at equal depths")
    return cone_certificate(c1) == cone_certificate(c2)


def weak_equivalent(c1: RootedCone, c2: RootedCone) -> bool:
    if c1.depth != c2.depth:
        raise ValueError("cones must be truncated at equal depths")
    return cone_certificate(c1, False) == cone_certificate(c2, False)


def cone_isomorphism(c1: RootedCone, c2: RootedCone, with_antennas: bool = True) -> dict | None:
    """An explicit root- and color-preserving isomorphism, or None."""
    v1, adj1, col1 = c1.graph(with_antennas)
    v2, adj2, col2 = c2.graph(with_antennas)
    cert1, lab1 = canonical_form(adj1, col1)
    cert2, lab2 = canonical_form(adj2, col2)
    if cert1 != cert2:
        return None
    phi = isomorphism(lab1, lab2)
    return {v1[i]: v2[phi[i]] for i in range(len(v1))}


# -- type discovery -----------------------------------------------------------


class StabilizationError(RuntimeError):
    pass


def type_name(k: int) -> str:
    if k == 0:
        return "e"
    k -= 1
    name = ""
    while True:
        name = ascii_uppercase[k % 26] + name
        k = k // 26 - 1
        if k < 0:
            return name


class ConeClassifier:
    """Computes cone certificates at a fixed depth, growing its ball on demand."""

    def __init__(self, source, depth: int, mode: str = STRONG, ball: Ball | None = None):
        self.source: GraphSource = as_source(source)
        self.depth = depth
        self.mode = mode
        self.ball = ball if ball is not None and ball.source is self.source else None
        self._cache: dict = {}

    def ensure(self, radius: int) -> Ball:
        if self.ball is None or self.ball.radius < radius:
            self.ball = grow_ball(self.source, max(radius, 2 * self.depth + 12))
        return self.ball

    def cone(self, g) -> RootedCone:
        ball = self.ball if self.ball is not None else self.ensure(0)
        need = ball.length.get(g)
        if need is None or need + self.depth + 2 > ball.radius:
            # lengths are stable under regrowth, so this only widens the ball
            n = need if need is not None else ball.radius
            ball = self.ensure(n + self.depth + 12)
        cone = truncated_cone(ball, g, self.depth)
        return extend_cone(ball, cone) if self.mode == STRONG else cone

    def certificate(self, g):
        c = self._cache.get(g)
        if c is None:
            c = cone_certificate(self.cone(g), self.mode == STRONG)
            self._cache[g] = c
        return c


@dataclass
class ConeTypeTable:
    graph: str
    tiling: str
    mode: str
    degree: int
    names: list[str]
    reps: list
    m_values: list[int]
    tangent: list[int]
    transition: list[list[int]]  # transition[i][j] = n_{i,j} (or k_{i,j})
    depth: int
    witness: tuple[int, int] | None = None
    certificates: list = field(default_factory=list, repr=False)
    classifier: ConeClassifier | None = field(default=None, repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.names)

    def signature(self):
        return (self.names, self.m_values, self.tangent, self.transition)

    def type_of(self, g) -> int:
        cert = self.classifier.certificate(g)
        try:
            return self.certificates.index(cert)
        except ValueError:
            raise KeyError("vertex has a cone type outside the table") from None

    def to_json(self) -> str:
        from .cayley import vertex_label

        doc = {
            "graph": self.graph,
            "tiling": self.tiling,
            "mode": self.mode,
            "degree": self.degree,
            "types": [
                {
                    "name": name,
                    "representative": vertex_label(self.reps[i]),
                    "m": self.m_values[i],
                    "tangent": self.tangent[i],
                    "children": {self.names[j]: c for j, c in enumerate(self.transition[i]) if c},
                }
                for i, name in enumerate(self.names)
            ],
            "depth": self.depth,
            "stability_witness": list(self.witness) if self.witness else None,
        }
        return json.dumps(doc, indent=1)


def _discover_at_depth(source: GraphSource, depth: int, mode: str, max_types: int, ball: Ball | None):
    clf = ConeClassifier(source, depth, mode, ball)
    clf.ensure(2 * depth + 12)
    origin = source.origin
    certs = [clf.certificate(origin)]
    by_cert = {certs[0]: 0}
    reps = [origin]
    m, tangent, rows = [], [], []
    i = 0
    while i < len(reps):
        g = reps[i]
        ball = clf.ball
        if ball.length[g] + 1 + depth + 2 > ball.radius:
            ball = clf.ensure(ball.length[g] + depth + 12)
        m.append(len(ball.decreasing(g)))
        tangent.append(len(ball.tangent(g)))
        row = Counter()
        for h in ball.increasing(g):
            c = clf.certificate(h)
            j = by_cert.get(c)
            if j is None:
                j = len(reps)
                by_cert[c] = j
                certs.append(c)
                reps.append(h)
                if len(reps) > max_types:
                    raise StabilizationError(f"more than {max_types} cone types at depth {depth}")
            row[j] += 1
        rows.append(row)
        i += 1
    size = len(reps)
    matrix = [[rows[i][j] for j in range(size)] for i in range(size)]
    return ConeTypeTable(
        source.name,
        source.tiling,
        mode,
        source.degree,
        [type_name(k) for k in range(size)],
        reps,
        m,
        tangent,
        matrix,
        depth,
        None,
        certs,
        clf,
    )


def discover_types(
    source,
    mode: str = STRONG,
    start_depth: int = 6,
    max_depth: int = 14,
    step: int = 2,
    max_types: int = 400,
    sweep: int | None = None,
) -> ConeTypeTable:
    """Close the set of cone types under "increasing neighbor of".

    Succeeds at the first depth d (d = start_depth, start_depth + step, ...)
    where depths d and d + 1 give identical tables and every vertex within
    distance ``sweep`` (default 2d) has the m-value, tangent count and
    children of its type. Agreement at two depths alone is not enough: on
    4.6.12 the tables at depths 8 and 9 agree but still merge cones that a
    depth-10 truncation separates.
    """
    if mode not in (STRONG, WEAK):
        raise ValueError(f"unknown mode {mode!r}")
    src = as_source(source)
    d = start_depth
    ball = None
    history = []
    while d <= max_depth:
        t1 = _discover_at_depth(src, d, mode, max_types, ball)
        t2 = _discover_at_depth(src, d + 1, mode, max_types, t1.classifier.ball)
        history.append((d, t1.size, t2.size))
        if t1.signature() == t2.signature() and not row_violations(t1, sweep if sweep is not None else 2 * d, limit=1):
            t1.witness = (d, d + 1)
            return t1
        ball = t2.classifier.ball
        d += step
    raise StabilizationError(f"{src.name}: no stable cone-type table up to depth {max_depth}: {history}")


def row_violations(table: ConeTypeTable, radius: int, limit: int | None = None) -> list[str]:
    """Vertices within ``radius`` whose (m, tangent, n-row) differ from their type's."""
    clf = table.classifier
    ball = clf.ensure(radius + table.depth + 4)
    index = {c: j for j, c in enumerate(table.certificates)}
    bad: list[str] = []
    for v in ball.order:
        if ball.length[v] > radius or (limit is not None and len(bad) >= limit):
            break
        j = index.get(clf.certificate(v))
        if j is None:
            bad.append(f"{v!r}: cone type outside the table")
            continue
        row = [0] * table.size
        for h in ball.increasing(v):
            k = index.get(clf.certificate(h))
            if k is None:
                bad.append(f"{h!r}: cone type outside the table")
                break
            row[k] += 1
        got = (len(ball.decreasing(v)), len(ball.tangent(v)), row)
        want = (table.m_values[j], table.tangent[j], table.transition[j])
        if got != want:
            bad.append(f"{v!r}: type {table.names[j]} has {got[:2]}, row differs from {want[:2]}")
    return bad


# -- identities relating the cones at g, s and sg (need the group action) ----


def _core_set(ball: Ball, g, depth: int) -> dict:
    return truncated_cone(ball, g, depth).core


def check_intersection(ball: Ball, g: Isometry, s: Isometry, depth: int = 5) -> bool:
    """C(sg) == C(g) n C(s).g, compared on vertices at most ``depth`` below sg."""
    sg = compose(s, g)
    lg = ball.length[g]
    if ball.length.get(sg) != lg + 1:
        raise ValueError("sg must be an increasing neighbor of g")
    s_depth = 2 * lg + depth
    if max(lg + depth + 2, 1 + s_depth) + 1 >= ball.radius:
        raise FrontierError("ball too small for the intersection check")
    lhs = set(_core_set(ball, sg, depth))
    cg = _core_set(ball, g, depth + 1)
    cs = _core_set(ball, s, s_depth)
    g_inv = inverse(g)
    rhs = {k for k, dk in cg.items() if dk <= depth + 1 and compose(k, g_inv) in cs}
    return lhs == rhs


def check_antennas(ball: Ball, g: Isometry, s: Isometry, depth: int = 5) -> bool:
    """Every edge leaving truncated C(sg) is an antenna iff case 1 or case 2 holds."""
    sg = compose(s, g)
    lg = ball.length[g]
    if ball.length.get(sg) != lg + 1:
        raise ValueError("sg must be an increasing neighbor of g")
    s_depth = 2 * lg + depth + 1
    if max(lg + depth + 3, 1 + s_depth) + 1 >= ball.radius:
        raise FrontierError("ball too small for the antenna check")
    length = ball.length
    csg = _core_set(ball, sg, depth)
    cg = _core_set(ball, g, depth + 1)
    cs = _core_set(ball, s, s_depth)
    g_inv = inverse(g)
    for h in csg:
        hg = compose(h, g_inv)
        for k in ball.neighbors(h):
            if k in csg:
                continue
            antenna = length[k] == length[h]
            case1 = antenna and k not in cg
            kg = compose(k, g_inv)
            case2 = k in cg and hg in cs and kg not in cs and length[hg] == length[kg]
            if antenna != (case1 or case2):
                return False
    return True


# -- diagram ------------------------------------------------------------------


def export_diagram(table: ConeTypeTable, parallel_edges: bool = False) -> str:
    """DOT multigraph of types; m is shown unless it equals 1."""
    lines = [f'digraph "{table.tiling}" {{', "  rankdir=LR;"]
    for i, name in enumerate(table.names):
        label = name if table.m_values[i] == 1 else f"{name} (m={table.m_values[i]})"
        lines.append(f'  "{name}" [label="{label}"];')
    for i, row in enumerate(table.transition):
        for j, n in enumerate(row):
            if not n:
                continue
            a, b = table.names[i], table.names[j]
            if parallel_edges:
                lines += [f'  "{a}" -> "{b}";'] * n
            else:
                lines.append(f'  "{a}" -> "{b}" [label="{n}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
