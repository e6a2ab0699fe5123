"""Canonical labeling of small vertex-colored graphs.

Individualization-refinement: refine an ordered partition to an equitable one
(1-dimensional Weisfeiler-Leman with cell order kept invariant), branch on the
first non-singleton cell, and keep the lexicographically least certificate
over all leaves. Automorphisms discovered at leaves prune the search tree.
"""

from __future__ import annotations

from typing import Hashable, Sequence


def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    """Coarsest equitable refinement; colors are ranks 0..k-1 in invariant order."""
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == ncolors:
            return new
        colors, ncolors = new, len(ranking)


def _ranks(values: Sequence[Hashable]) -> list[int]:
    ranking = {v: i for i, v in enumerate(sorted(set(values)))}
    return [ranking[v] for v in values]


def _orbit_rep(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


class _Search:
    def __init__(self, adj, init_colors):
        self.adj = adj
        self.n = len(adj)
        self.init_colors = init_colors
        self.edges = [(v, u) for v in range(self.n) for u in adj[v] if v < u]
        self.first = None  # (cert, labeling)
        self.best = None
        self.autos: list[list[int]] = []

    def certificate(self, lab: list[int]):
        inv = [0] * self.n
        for v, k in enumerate(lab):
            inv[k] = v
        colors = tuple(self.init_colors[inv[k]] for k in range(self.n))
        edges = tuple(sorted((min(lab[a], lab[b]), max(lab[a], lab[b])) for a, b in self.edges))
        return (self.n, colors, edges)

    def _auto_from(self, lab_a: list[int], lab_b: list[int]) -> list[int]:
        # sigma with lab_a[sigma(v)] == lab_b[v]
        inv_a = [0] * self.n
        for v, k in enumerate(lab_a):
            inv_a[k] = v
        return [inv_a[lab_b[v]] for v in range(self.n)]

    def run(self, colors: list[int], fixed: tuple[int, ...], on_first_path: bool) -> bool:
        """Explore a node; return True to unwind to the nearest first-path ancestor."""
        colors = _refine(self.adj, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            cert = self.certificate(colors)
            if self.first is None:
                self.first = self.best = (cert, colors)
                return False
            if cert == self.first[0]:
                self.autos.append(self._auto_from(self.first[1], colors))
                return True
            if cert == self.best[0]:
                self.autos.append(self._auto_from(self.best[1], colors))
            elif cert < self.best[0]:
                self.best = (cert, colors)
            return False

        explored: list[int] = []
        for k, v in enumerate(cells[target]):
            if explored:
                # skip v if an automorphism fixing `fixed` maps an explored sibling onto it
                parent = list(range(self.n))
                for a in self.autos:
                    if all(a[f] == f for f in fixed):
                        for x in range(self.n):
                            rx, ry = _orbit_rep(parent, x), _orbit_rep(parent, a[x])
                            if rx != ry:
                                parent[rx] = ry
                rv = _orbit_rep(parent, v)
                if any(_orbit_rep(parent, e) == rv for e in explored):
                    continue
            child = [2 * c + (0 if u == v else 1) if c == target else 2 * c + 1 for u, c in enumerate(colors)]
            child_first = on_first_path and k == 0
            jump = self.run(child, fixed + (v,), child_first)
            explored.append(v)
            if jump and not on_first_path:
                return True
        return False


def canonical_form(adj: Sequence[Sequence[int]], colors: Sequence[Hashable]):
    """Return ``(certificate, labeling)``.

    Two colored graphs are isomorphic (by a color-preserving map) iff their
    certificates are equal. ``labeling[v]`` is v's position in the canonical
    order, so composing one graph's labeling with the inverse of another's
    gives an isomorphism between them.
    """
    init = _ranks(colors)
    # keep the actual color values in the certificate so graphs with different
    # palettes never collide
    search = _Search(adj, list(colors))
    if not adj:
        return (0, (), ()), []
    search.run(init, (), True)
    return search.best[0], list(search.best[1])


def isomorphism(lab_a: Sequence[int], lab_b: Sequence[int]) -> list[int]:
    """Map from graph a's vertices to graph b's, given two equal certificates."""
    inv_b = [0] * len(lab_b)
    for v, k in enumerate(lab_b):
        inv_b[k] = v
    return [inv_b[lab_a[v]] for v in range(len(lab_a))]
