"""Breadth-first balls in Cayley graphs and in periodic tilings."""

from __future__ import annotations

import csv
import enum
import io
import json
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from .isometry import IDENTITY, GroupSpec, Isometry, canonical_key, compose
from .tilings import ORIGIN_SITE, TILING_DEGREE, neighbor_offsets, normalize_symbol

DEFAULT_MAX_VERTICES = 200_000


def max_vertices() -> int:
    return int(os.environ.get("WALLGROWTH_MAX_VERTICES", DEFAULT_MAX_VERTICES))


class BallTooLarge(RuntimeError):
    """The vertex cap was hit; ask for a smaller radius or raise the cap."""


class FrontierError(ValueError):
    """Data near the ball's frontier is not settled; grow a larger ball."""


@dataclass(frozen=True)
class GraphSource:
    """A vertex-transitive graph given by an origin and a neighbor function."""

    name: str
    tiling: str
    origin: Hashable
    expand: Callable[[Hashable], list[tuple[str, Hashable]]]
    degree: int
    group: GroupSpec | None = None


def group_source(spec: GroupSpec) -> GraphSource:
    """Left Cayley graph: the neighbors of g are s g for s in S u S^-1."""
    letters = spec.alphabet()

    def expand(g: Isometry):
        return [(label, compose(s, g)) for label, s in letters]

    return GraphSource(spec.group_id, spec.tiling, IDENTITY, expand, spec.degree, spec)


def tiling_source(symbol: str) -> GraphSource:
    symbol = normalize_symbol(symbol)
    offsets = neighbor_offsets(symbol)

    def expand(v):
        site, i, j = v
        return [(f"{site}>{b}", (b, i + di, j + dj)) for b, di, dj in offsets[site]]

    return GraphSource(symbol, symbol, (ORIGIN_SITE[symbol], 0, 0), expand, TILING_DEGREE[symbol])


def as_source(obj) -> GraphSource:
    if isinstance(obj, GraphSource):
        return obj
    if isinstance(obj, GroupSpec):
        return group_source(obj)
    return tiling_source(obj)


@dataclass
class Ball:
    """Every vertex within ``radius`` of the origin, with exact word lengths.

    Neighbor lists are complete exactly for the vertices with length < radius;
    those are the vertices whose surroundings are settled.
    """

    source: GraphSource
    radius: int
    length: dict = field(default_factory=dict)
    adjacency: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    @property
    def origin(self):
        return self.source.origin

    @property
    def degree(self) -> int:
        return self.source.degree

    def settled(self, v) -> bool:
        return self.length[v] < self.radius

    def neighbors(self, v) -> list:
        try:
            return [w for _, w in self.adjacency[v]]
        except KeyError:
            raise FrontierError(f"neighbors of a frontier vertex (radius {self.radius})") from None

    @property
    def sphere_counts(self) -> list[int]:
        counts = [0] * (self.radius + 1)
        for n in self.length.values():
            counts[n] += 1
        return counts

    @property
    def cumulative_counts(self) -> list[int]:
        out, acc = [], 0
        for d in self.sphere_counts:
            acc += d
            out.append(acc)
        return out

    def sphere(self, n: int) -> list:
        return [v for v in self.order if self.length[v] == n]

    def increasing(self, v) -> list:
        lv = self.length[v]
        return [w for w in self.neighbors(v) if self.length[w] == lv + 1]

    def decreasing(self, v) -> list:
        lv = self.length[v]
        return [w for w in self.neighbors(v) if self.length[w] == lv - 1]

    def tangent(self, v) -> list:
        lv = self.length[v]
        return [w for w in self.neighbors(v) if self.length[w] == lv]


def grow_ball(source, radius: int, cap: int | None = None) -> Ball:
    """FIFO breadth-first search out to ``radius``, generators in listed order."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    src = as_source(source)
    cap = max_vertices() if cap is None else cap
    ball = Ball(src, radius)
    length, adjacency, order = ball.length, ball.adjacency, ball.order
    length[src.origin] = 0
    order.append(src.origin)
    queue = deque([src.origin])
    while queue:
        v = queue.popleft()
        lv = length[v]
        if lv >= radius:
            continue
        nbrs = src.expand(v)
        adjacency[v] = nbrs
        for _, w in nbrs:
            if w not in length:
                length[w] = lv + 1
                order.append(w)
                if len(order) > cap:
                    raise BallTooLarge(f"more than {cap} vertices before radius {radius}")
                queue.append(w)
    return ball


def tiling_ball(symbol: str, radius: int, cap: int | None = None) -> Ball:
    return grow_ball(tiling_source(symbol), radius, cap)


class EdgeClass(enum.Enum):
    TANGENT = "tangent"
    INCREASING = "increasing"
    DECREASING = "decreasing"


def edge_class(ball: Ball, g, h) -> EdgeClass:
    if not (ball.settled(g) and ball.settled(h)):
        raise FrontierError("edge touches the unsettled frontier")
    d = ball.length[h] - ball.length[g]
    if d == 0:
        return EdgeClass.TANGENT
    if d == 1:
        return EdgeClass.INCREASING
    if d == -1:
        return EdgeClass.DECREASING
    raise AssertionError("adjacent vertices differ in length by more than one")


def classify_edges(ball: Ball) -> dict[tuple, EdgeClass]:
    """Class of every oriented edge with both ends settled."""
    if ball.radius < 1:
        raise FrontierError("need radius >= 1 to classify edges")
    out = {}
    for g, nbrs in ball.adjacency.items():
        for _, h in nbrs:
            if ball.settled(h):
                out[(g, h)] = edge_class(ball, g, h)
    return out


# -- exports ------------------------------------------------------------------


def vertex_label(v) -> str:
    if isinstance(v, Isometry):
        return ",".join(str(x) for x in canonical_key(v))
    site, i, j = v
    return f"{site}@{i},{j}"


def ball_to_json(ball: Ball) -> str:
    index = {v: k for k, v in enumerate(ball.order)}
    doc = {
        "graph": ball.source.name,
        "tiling": ball.source.tiling,
        "radius": ball.radius,
        "delta": ball.sphere_counts,
        "gamma": ball.cumulative_counts,
        "vertices": [{"id": index[v], "key": vertex_label(v), "length": ball.length[v]} for v in ball.order],
        "edges": [
            {"from": index[v], "to": index[w], "label": label}
            for v in ball.order
            for label, w in ball.adjacency.get(v, ())
            if w in index
        ],
    }
    return json.dumps(doc, indent=1)


def counts_to_csv(delta: Iterable[int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "delta", "gamma"])
    acc = 0
    for n, d in enumerate(delta):
        acc += d
        w.writerow([n, d, acc])
    return buf.getvalue()
