"""Command-line front end: ``wallgrowth <command> ...``.

Exit status is 0 on success, 1 when a verification or cross-check fails and
2 on usage errors (bad flags, unknown tiling or group).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cannon, cayley, cones, isometry, series
from .tilings import TILINGS, normalize_symbol

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _source(args):
    """Resolve --tiling/--group into (tiling symbol, graph source)."""
    group = getattr(args, "group", None)
    tiling = getattr(args, "tiling", None)
    try:
        symbol = normalize_symbol(tiling) if tiling else None
        if group:
            spec = isometry.realize(group)
            if symbol and spec.tiling != symbol:
                raise UsageError(f"group {group} has Cayley graph {spec.tiling}, not {symbol}")
            return spec.tiling, cayley.group_source(spec)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    if symbol is None:
        raise UsageError("give --tiling or --group")
    return symbol, cayley.tiling_source(symbol)


def _ints(xs) -> str:
    return ", ".join(str(x) for x in xs)


def _closed(qp) -> str:
    return "; ".join(f"{cond}: {val}" for cond, val in series.format_quasi(qp))


def cmd_groups(args, out) -> int:
    for gid in isometry.group_ids():
        spec = isometry.realize(gid)
        out.write(f"{gid}  tiling {spec.tiling}  basis {spec.basis}\n")
        for g in spec.generators:
            tx, ty = g.element.t
            kind = "  (involution)" if g.involution else ""
            out.write(f"  {g.name}: M = {list(g.element.m)}, t = ({tx}, {ty}){kind}\n")
        for rel in spec.relations:
            out.write(f"  {rel} = 1\n")
    return OK


def cmd_verify(args, out) -> int:
    ids = isometry.group_ids() if args.all else [args.group]
    if not args.all and not args.group:
        raise UsageError("give --group or --all")
    status = OK
    for gid in ids:
        try:
            spec = isometry.realize(gid)
        except KeyError as e:
            raise UsageError(e.args[0]) from None
        report = isometry.verify_relations(spec)
        out.write(f"{gid}: {'PASS' if report.passed else 'FAIL'}\n")
        for line in report.lines():
            out.write(f"  {line}\n")
        if args.radius:
            a = cayley.grow_ball(cayley.group_source(spec), args.radius).sphere_counts
            b = cayley.tiling_ball(spec.tiling, args.radius).sphere_counts
            same = a == b
            out.write(f"  {'ok  ' if same else 'FAIL'} ball matches {spec.tiling} to radius {args.radius}\n")
            if not same:
                status = MISMATCH
        if not report.passed:
            status = MISMATCH
    return status


def cmd_growth(args, out) -> int:
    symbol, src = _source(args)
    if args.terms < 0:
        raise UsageError("--terms must be non-negative")
    n = args.terms
    out.write(f"graph {src.name} ({symbol})\n")
    oracle = None
    if args.mode in ("oracle", "both"):
        oracle = cayley.grow_ball(src, n).sphere_counts
    status = OK
    if args.mode in ("cannon", "both"):
        table = cones.discover_types(src, cones.STRONG)
        delta, _ = cannon.spherical_series(table)
        gamma = cannon.cumulative_series(delta)
        seq = [int(c) for c in series.taylor(delta, n)]
        out.write(f"cone types: {table.size} (stable at depth {table.witness[0]}/{table.witness[1]})\n")
        out.write(f"Delta(z) = {series.pretty(delta)}\n")
        out.write(f"Gamma(z) = {series.pretty(gamma)}\n")
        out.write(f"delta(n): {_closed(series.to_quasi_polynomial(delta))}\n")
        out.write(f"gamma(n): {_closed(series.to_quasi_polynomial(gamma))}\n")
        if oracle is not None:
            same = seq == oracle
            out.write(f"check: {'PASS' if same else 'FAIL'} (series vs breadth-first, n = 0..{n})\n")
            if not same:
                out.write(f"oracle delta = {_ints(oracle)}\n")
                status = MISMATCH
    else:
        seq = oracle
    out.write(f"delta = {_ints(seq)}\n")
    out.write(f"gamma = {_ints(_cumsum(seq))}\n")
    if args.csv:
        Path(args.csv).write_text(cayley.counts_to_csv(seq), encoding="utf-8")
    return status


def _cumsum(xs):
    acc, out = 0, []
    for x in xs:
        acc += x
        out.append(acc)
    return out


def cmd_geodesic(args, out) -> int:
    symbol, src = _source(args)
    n = args.terms
    table = cones.discover_types(src, cones.WEAK)
    geo, _ = cannon.geodesic_series(table)
    coeffs = [int(c) for c in series.taylor(geo, n)]
    delta = cayley.grow_ball(src, n).sphere_counts
    out.write(f"graph {src.name} ({symbol}), {table.size} cone types\n")
    out.write(f"geodesic series = {series.pretty(geo)}\n")
    out.write(f"l = {_ints(coeffs)}\n")
    ok = all(a >= b for a, b in zip(coeffs, delta))
    out.write(f"check: {'PASS' if ok else 'FAIL'} delta(n) <= l(n) for n = 0..{n}\n")
    if args.brute is not None:
        brute = cannon.geodesic_word_counts(src, args.brute)
        same = brute == coeffs[: args.brute + 1] if args.brute <= n else brute[: n + 1] == coeffs
        out.write(f"enumerated = {_ints(brute)}\n")
        out.write(f"check: {'PASS' if same else 'FAIL'} enumeration of geodesic words\n")
        ok = ok and same
    return OK if ok else MISMATCH


def cmd_diagram(args, out) -> int:
    symbol, src = _source(args)
    table = cones.discover_types(src, cones.STRONG)
    text = cones.export_diagram(table, parallel_edges=args.parallel)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        out.write(f"wrote {args.out} ({table.size} types)\n")
    else:
        out.write(text)
    return OK


def cmd_tables(args, out) -> int:
    reports = cannon.all_reports(args.depth)
    render = {"md": cannon.tables_markdown, "csv": cannon.tables_csv, "json": cannon.tables_json}
    out.write(render[args.format](reports))
    return OK


def cmd_conetypes(args, out) -> int:
    symbol, src = _source(args)
    mode = cones.WEAK if args.mode == "weak" else cones.STRONG
    table = cones.discover_types(src, mode)
    if args.json:
        out.write(table.to_json() + "\n")
        return OK
    d, d1 = table.witness
    out.write(f"{symbol}: {table.size} types, stable at depth {d}/{d1}\n")
    for i, name in enumerate(table.names):
        kids = ", ".join(f"{table.names[j]}x{c}" for j, c in enumerate(table.transition[i]) if c)
        out.write(f"  {name}: m={table.m_values[i]} tangent={table.tangent[i]} -> {kids or '-'}\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wallgrowth", description="Growth series of the wallpaper groups.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("groups", help="list the 20 presentations")
    g.add_argument("action", choices=["list"])
    g.set_defaults(func=cmd_groups)

    v = sub.add_parser("verify", help="check a presentation's relations")
    v.add_argument("--group")
    v.add_argument("--all", action="store_true")
    v.add_argument("--radius", type=int, default=0, help="also compare balls with the tiling to this radius")
    v.set_defaults(func=cmd_verify)

    def graph_flags(sp, tiling_required=False):
        sp.add_argument("--tiling", required=tiling_required, help=", ".join(TILINGS))
        sp.add_argument("--group", help="use this presentation's Cayley graph")

    gr = sub.add_parser("growth", help="spherical and cumulative growth")
    graph_flags(gr)
    gr.add_argument("--terms", type=int, default=10)
    gr.add_argument("--mode", choices=["oracle", "cannon", "both"], default="both")
    gr.add_argument("--csv", help="also write n,delta,gamma to this file")
    gr.set_defaults(func=cmd_growth)

    ge = sub.add_parser("geodesic", help="geodesic growth series")
    graph_flags(ge)
    ge.add_argument("--terms", type=int, default=15)
    ge.add_argument("--brute", type=int, help="also enumerate words up to this length")
    ge.set_defaults(func=cmd_geodesic)

    di = sub.add_parser("diagram", help="cone-type diagram in DOT")
    graph_flags(di)
    di.add_argument("--out")
    di.add_argument("--parallel", action="store_true", help="draw multiplicities as parallel edges")
    di.set_defaults(func=cmd_diagram)

    ta = sub.add_parser("tables", help="series and closed forms for all seven graphs")
    ta.add_argument("--format", choices=["md", "csv", "json"], default="md")
    ta.add_argument("--depth", type=int, default=30, help="breadth-first cross-check depth")
    ta.set_defaults(func=cmd_tables)

    co = sub.add_parser("conetypes", help="cone types with m and n data")
    graph_flags(co)
    co.add_argument("--mode", choices=["strong", "weak"], default="strong")
    co.add_argument("--json", action="store_true")
    co.set_defaults(func=cmd_conetypes)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args, out)
    except UsageError as e:
        sys.stderr.write(f"wallgrowth: error: {e}\n")
        return USAGE
    except cannon.OracleMismatch as e:
        sys.stderr.write(f"wallgrowth: mismatch: {e}\n")
        return MISMATCH


if __name__ == "__main__":
    sys.exit(main())
