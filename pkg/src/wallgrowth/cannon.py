"""Growth series from cone-type data, closed forms, and the end-to-end report."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .cayley import Ball, as_source, grow_ball
from .cones import STRONG, WEAK, ConeTypeTable, discover_types
from .series import (
    ONE,
    Z,
    Polynomial,
    QuasiPolynomial,
    RationalFunction,
    format_quasi,
    parse,
    pretty,
    serialize,
    solve_block_triangular,
    taylor,
    to_quasi_polynomial,
)
from .tilings import TILINGS, normalize_symbol


class OracleMismatch(AssertionError):
    """The series disagrees with breadth-first counting."""


def spherical_series(table: ConeTypeTable) -> tuple[RationalFunction, list[RationalFunction]]:
    """Solve f_0 = 1, m_j f_j = z sum_i n_ij f_i and return (sum of f_j, [f_j])."""
    size = table.size
    for j in range(1, size):
        if table.m_values[j] == 0:
            raise ValueError(f"type {table.names[j]} has no decreasing edge")
    z = RationalFunction(Z)
    matrix = [[RationalFunction(0)] * size for _ in range(size)]
    rhs = [RationalFunction(0)] * size
    matrix[0][0] = RationalFunction(1)
    rhs[0] = RationalFunction(1)
    for j in range(1, size):
        row = matrix[j]
        row[j] = RationalFunction(1)
        for i in range(size):
            n = table.transition[i][j]
            if n:
                row[i] = row[i] - z * Fraction(n, table.m_values[j])
    f = solve_block_triangular(matrix, rhs)
    total = RationalFunction(0)
    for fj in f:
        total = total + fj
    return total, f


def cumulative_series(delta: RationalFunction) -> RationalFunction:
    return delta / RationalFunction(ONE - Z)


def geodesic_series(table: ConeTypeTable) -> tuple[RationalFunction, list[RationalFunction]]:
    """Solve L_i = 1 + z sum_j k_ij L_j over the (weak) cone types."""
    size = table.size
    z = RationalFunction(Z)
    matrix = [[RationalFunction(0)] * size for _ in range(size)]
    for i in range(size):
        matrix[i][i] = RationalFunction(1)
        for j, k in enumerate(table.transition[i]):
            if k:
                matrix[i][j] = matrix[i][j] - z * k
    by_type = solve_block_triangular(matrix, [RationalFunction(1)] * size)
    return by_type[0], by_type


def geodesic_word_counts(source, n_max: int) -> list[int]:
    """Count geodesic words by enumerating every word of each length.

    A word of length n is geodesic when it reaches a vertex at distance n.
    Exponential in n; meant as an independent check for small n.
    """
    src = as_source(source)
    ball = grow_ball(src, n_max + 1)
    out = [1]
    for n in range(1, n_max + 1):
        count = 0
        for word in itertools.product(range(src.degree), repeat=n):
            v = src.origin
            for k in word:
                v = ball.adjacency[v][k][1]
            if ball.length[v] == n:
                count += 1
        out.append(count)
    return out


def type_counts(table: ConeTypeTable, n_max: int) -> list[list[int]]:
    """counts[n][j] = number of vertices at distance n whose cone has type j."""
    clf = table.classifier
    ball = clf.ensure(n_max + table.depth + 3)
    counts = [[0] * table.size for _ in range(n_max + 1)]
    for v in ball.order:
        n = ball.length[v]
        if n > n_max:
            break
        counts[n][table.type_of(v)] += 1
    return counts


# -- reference values ---------------------------------------------------------

# Spherical growth series as published, with the (3.6)^2 entry printed in two
# different ways in the source; both are kept so the oracle can pick one.
_REFERENCE_TEXT = {
    "3^6": "(1, 4, 1)/(1, -2, 1)",
    "4^4": "(1, 2, 1)/(1, -2, 1)",
    "6^3": "(1, 1, 1)/(1, -2, 1)",
    "(3.6)^2": "(1, 4, 6, 6, 3, -2)/(1, 0, -2, 0, 1)",
    "4.8^2": None,
    "3.12^2": None,
    "4.6.12": None,
}
VARIANTS_36 = {
    "summary table": "(1, 4, 6, 6, 3, -2)/(1, 0, -2, 0, 1)",
    "worked example": "(1, 4, 6, 6, 3, -1)/(1, 0, -2, 0, 1)",
}


def reference_series(symbol: str) -> RationalFunction:
    """Published spherical growth series (the summary-table form)."""
    symbol = normalize_symbol(symbol)
    text = _REFERENCE_TEXT[symbol]
    if text is not None:
        return parse(text)
    one_minus = Polynomial([1, -1])
    if symbol == "4.8^2":
        return RationalFunction(
            Polynomial([1, 0, 1]) * Polynomial([1, 1]) ** 2, one_minus**2 * Polynomial([1, 1, 1])
        )
    if symbol == "3.12^2":
        return RationalFunction(
            Polynomial([1, 1, 1, 3, -1, 5, -3, 4, -2]), one_minus**2 * Polynomial([1, 0, 1]) ** 2
        )
    return RationalFunction(
        Polynomial([1, 1, 1]) * Polynomial([1, -1, 1]) * Polynomial([1, 1]) ** 2,
        Polynomial([1, 0, 0, 0, 0, -1]) * one_minus,
    )


# -- report -------------------------------------------------------------------


@dataclass
class GrowthReport:
    tiling: str
    graph: str
    type_count: int
    witness: tuple[int, int] | None
    spherical: RationalFunction
    cumulative: RationalFunction
    per_type: list[RationalFunction]
    spherical_closed: QuasiPolynomial
    cumulative_closed: QuasiPolynomial
    oracle_depth: int
    oracle_delta: list[int]
    cannon_delta: list[int]
    reference_match: bool
    variant: str | None = None
    table: ConeTypeTable | None = field(default=None, repr=False)

    @property
    def oracle_pass(self) -> bool:
        return self.oracle_delta == self.cannon_delta

    def to_dict(self) -> dict:
        return {
            "tiling": self.tiling,
            "graph": self.graph,
            "cone_types": self.type_count,
            "stability_witness": list(self.witness) if self.witness else None,
            "spherical_series": serialize(self.spherical),
            "spherical_series_pretty": pretty(self.spherical),
            "cumulative_series": serialize(self.cumulative),
            "per_type_series": {
                self.table.names[j]: serialize(f) for j, f in enumerate(self.per_type)
            }
            if self.table
            else {},
            "delta_closed_form": [list(r) for r in format_quasi(self.spherical_closed)],
            "gamma_closed_form": [list(r) for r in format_quasi(self.cumulative_closed)],
            "oracle": {"depth": self.oracle_depth, "pass": self.oracle_pass},
            "delta": self.cannon_delta,
            "matches_reference": self.reference_match,
            "reference_variant": self.variant,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _as_ints(coeffs) -> list[int]:
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise OracleMismatch(f"non-integral coefficient {c}")
        out.append(int(c))
    return out


def build_report(symbol: str, oracle_depth: int = 30, source=None, table: ConeTypeTable | None = None) -> GrowthReport:
    """Discovery, linear system, closed forms, and the breadth-first cross-check.

    ``source`` may be a GroupSpec realizing the tiling; the default is the
    tiling's own periodic graph. Raises OracleMismatch on disagreement.
    """
    symbol = normalize_symbol(symbol)
    src = as_source(source if source is not None else symbol)
    if table is None:
        table = discover_types(src, STRONG)
    delta, f = spherical_series(table)
    gamma = cumulative_series(delta)
    cannon = _as_ints(taylor(delta, oracle_depth))
    oracle = grow_ball(src, oracle_depth).sphere_counts
    if cannon != oracle:
        raise OracleMismatch(f"{symbol}: series {cannon} vs breadth-first {oracle}")
    variant = None
    if symbol == "(3.6)^2":
        for name, text in VARIANTS_36.items():
            if parse(text) == delta:
                variant = name
    return GrowthReport(
        symbol,
        src.name,
        table.size,
        table.witness,
        delta,
        gamma,
        f,
        to_quasi_polynomial(delta),
        to_quasi_polynomial(gamma),
        oracle_depth,
        oracle,
        cannon,
        delta == reference_series(symbol),
        variant,
        table,
    )


def all_reports(oracle_depth: int = 30) -> list[GrowthReport]:
    return [build_report(t, oracle_depth) for t in TILINGS]


def _closed_cell(rows: list[tuple[str, str]]) -> str:
    return "; ".join(f"{v} ({c})" for c, v in rows)


def tables_markdown(reports: list[GrowthReport]) -> str:
    out = ["| Cayley graph | spherical growth series |", "|---|---|"]
    out += [f"| {r.tiling} | {pretty(r.spherical)} |" for r in reports]
    out += ["", "| Cayley graph | spherical growth function |", "|---|---|"]
    out += [f"| {r.tiling} | {_closed_cell(format_quasi(r.spherical_closed))} |" for r in reports]
    out += ["", "| Cayley graph | cumulative growth function |", "|---|---|"]
    out += [f"| {r.tiling} | {_closed_cell(format_quasi(r.cumulative_closed))} |" for r in reports]
    return "\n".join(out) + "\n"


def tables_csv(reports: list[GrowthReport]) -> str:
    lines = ["tiling,table,condition,value"]
    for r in reports:
        lines.append(f'"{r.tiling}",series,all,"{pretty(r.spherical)}"')
        for c, v in format_quasi(r.spherical_closed):
            lines.append(f'"{r.tiling}",delta,"{c}","{v}"')
        for c, v in format_quasi(r.cumulative_closed):
            lines.append(f'"{r.tiling}",gamma,"{c}","{v}"')
    return "\n".join(lines) + "\n"


def tables_json(reports: list[GrowthReport]) -> str:
    doc = []
    for r in reports:
        d = r.to_dict()
        d.pop("per_type_series")
        doc.append(d)
    return json.dumps(doc, indent=1) + "\n"
