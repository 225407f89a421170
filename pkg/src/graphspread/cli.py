"""Command-line interface: ``graphspread <subcommand> ...``.

Graph sources (exactly one for graph-consuming commands):

  --sparse6 STR | --graph6 STR | --file PATH | --construct NAME[:k=v,...]

Construction names: p4*, q3*, hadamard-equality:k=K, clique-union:j=J,
half-closed-bipartite:i=I, clique-loops:n=N,t=T, and the search graphs
G1..G7 and their closed complements G1c, G2c, G5c.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

from . import bounds as B
from . import checks
from .codec import SEARCH_GRAPHS, FormatError, UnavailableCertificate, decode, graph6_encode, read_graphs, sparse6_encode
from .constructions import FAMILIES, parse_construction
from .eigen import ConvergenceError
from .graph import GraphError, LoopedGraph, degree_profile
from .search import SearchSizeError, exhaustive, hill_climb
from .spectral import SpreadQuery, eigenvalues

THREADS_ENV = "GRAPHSPREAD_THREADS"


class CliError(Exception):
    pass


ZERO_PRINT = 1e-12


def _fmt(x: float) -> str:
    # roundoff-sized values print as 0
    s = f"{0.0 if abs(x) < ZERO_PRINT else x:.12g}"
    return "0" if s == "-0" else s


def load_graph(args) -> LoopedGraph:
    sources = [s for s in ("sparse6", "graph6", "file", "construct") if getattr(args, s, None)]
    if len(sources) != 1:
        raise CliError("give exactly one graph source: --sparse6, --graph6, --file or --construct")
    if args.sparse6:
        return decode(args.sparse6 if args.sparse6.startswith((":", ">>")) else ":" + args.sparse6)
    if args.graph6:
        return decode(args.graph6)
    if args.file:
        graphs = read_graphs(args.file)
        if not graphs:
            raise CliError(f"no graphs in {args.file}")
        return graphs[0]
    name = args.construct
    if name in SEARCH_GRAPHS:
        return SEARCH_GRAPHS[name].graph()
    return parse_construction(name)


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph source")
    g.add_argument("--sparse6")
    g.add_argument("--graph6")
    g.add_argument("--file", help="file with one sparse6/graph6 string per line; the first is used")
    g.add_argument("--construct", metavar="NAME", help="named construction, e.g. clique-loops:n=8,t=4 or G1c")
    p.add_argument("--tol", type=float, default=None, help="eigensolver residual tolerance (>= 1e-14)")


def _tol(args) -> dict:
    if args.tol is None:
        return {}
    if args.tol < 1e-14:
        raise CliError("--tol must be at least 1e-14")
    return {"tol": args.tol}


def cmd_spectrum(args, out) -> int:
    g = load_graph(args)
    spec = eigenvalues(g, **_tol(args))
    prof = degree_profile(g)
    print(f"n: {g.n}", file=out)
    print(f"loops: {len(g.loops)}", file=out)
    print(f"degrees: {' '.join(map(str, prof.degrees))}", file=out)
    print(f"average degree: {_fmt(float(prof.average))}", file=out)
    print("eigenvalues: " + " ".join(_fmt(v) for v in spec.values), file=out)
    if args.i is not None or args.j is not None:
        _print_spread(g, spec, args, out)
    return 0


def _print_spread(g, spec, args, out) -> None:
    if args.i is None or args.j is None:
        raise CliError("--i and --j must be given together")
    q = SpreadQuery(args.i, args.j)
    q.validate(g.n)
    value = float(spec.values[q.i] - spec.values[g.n - q.j - 1])
    print(f"spread({q.i},{q.j}): {_fmt(value)}", file=out)
    print(f"ratio: {_fmt(value / g.n)}", file=out)


def cmd_spread(args, out) -> int:
    g = load_graph(args)
    SpreadQuery(args.i, args.j).validate(g.n)
    spec = eigenvalues(g, **_tol(args))
    print(f"n: {g.n}", file=out)
    _print_spread(g, spec, args, out)
    return 0


def cmd_construct(args, out) -> int:
    g = load_graph(args)
    print(sparse6_encode(g), file=out)
    return 0


def cmd_encode(args, out) -> int:
    g = load_graph(args)
    print(graph6_encode(g) if args.format == "graph6" else sparse6_encode(g), file=out)
    return 0


def cmd_decode(args, out) -> int:
    g = decode(args.string)
    print(f"n: {g.n}", file=out)
    print(f"loops: {' '.join(map(str, g.loops))}", file=out)
    print("edges: " + " ".join(f"{u}-{v}" for u, v in g.edges()), file=out)
    if args.matrix:
        for row in g.adj:
            print("".join(map(str, row)), file=out)
    return 0


CSV_FIELDS = ["i", "j", "lower", "upper", "exact", "certificate", "upper_source", "status"]


def table_rows(cells):
    for c in cells:
        yield {
            "i": c.i,
            "j": c.j,
            "lower": "" if c.lower.value is None else repr(c.lower.value),
            "upper": repr(c.upper.value),
            "exact": "" if c.exact is None else repr(c.exact.value),
            "certificate": c.lower.source,
            "upper_source": c.upper.source,
            "status": "ok" if c.available else "unavailable",
        }


def format_table(cells, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(table_rows(cells))
        return buf.getvalue()
    imax = max(c.i for c in cells)
    jmax = max(c.j for c in cells)
    grid = {(c.i, c.j): c for c in cells}

    def text(c) -> str:
        if c.exact is not None:
            return c.symbol() or B.round3(c.exact.value)
        if not c.lower.available:
            return f"n/a ({c.lower.source} unavailable) / {B.round3(c.upper.value)}"
        lo = "-" if c.lower.value is None else B.round3(c.lower.value)
        return f"{lo} / {B.round3(c.upper.value)}"

    header = ["i\\j"] + [str(j) for j in range(jmax + 1)]
    rows = [[str(i)] + [text(grid[i, j]) for j in range(jmax + 1)] for i in range(imax + 1)]
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    widths = [max(len(r[k]) for r in [header] + rows) for k in range(len(header))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + rows) + "\n"


def cmd_bounds_table(args, out) -> int:
    if not args.formulas_only and (args.imax >= B.TABLE_SIZE or args.jmax >= B.TABLE_SIZE):
        raise CliError(f"certificate-backed cells stop at {B.TABLE_SIZE - 1}; use --formulas-only beyond")
    cells = B.bounds_table(args.imax, args.jmax, formulas_only=args.formulas_only)
    out.write(format_table(cells, args.format))
    return 0


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get(THREADS_ENV, "1"))


def cmd_search(args, out) -> int:
    q = (args.i, args.j)
    if args.method == "exhaustive":
        rec = exhaustive(args.n, q, args.space, threads=_threads(args))
    else:
        rec = hill_climb(args.n, q, args.space, seed=args.seed, restarts=args.restarts, iters=args.iters)
    print(rec.to_line(), file=out)
    return 0


def cmd_verify(args, out) -> int:
    if args.suite == "all":
        selected = checks.ALL
    elif args.suite == "hadamard" and args.k:
        selected = [lambda: checks.check_hadamard(tuple(args.k))]
    else:
        selected = checks.SUITES[args.suite]
    results = checks.run(selected)
    for r in results:
        print(r.line(), file=out)
    counts = {s: sum(r.status == s for r in results) for s in ("PASS", "FAIL", "SKIP")}
    print(f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIP']} skipped", file=out)
    return 0 if counts["FAIL"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphspread",
        description="Spectral (i,j)-spread of graphs with loops: spectra, constructions, bounds and search.",
        epilog="constructions: " + ", ".join(FAMILIES) + ", " + ", ".join(SEARCH_GRAPHS),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues and degrees of a graph")
    _add_source(p)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("spread", help="lambda_{i+1} - lambda_{n-j} and its ratio to n")
    _add_source(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=cmd_spread)

    p = sub.add_parser("construct", help="print a named construction as sparse6")
    p.add_argument("construct", metavar="NAME")
    p.set_defaults(func=cmd_construct, sparse6=None, graph6=None, file=None)

    p = sub.add_parser("encode", help="encode a graph as sparse6 or graph6")
    _add_source(p)
    p.add_argument("--format", choices=("sparse6", "graph6"), default="sparse6")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a sparse6 or graph6 string")
    p.add_argument("string")
    p.add_argument("--matrix", action="store_true", help="also print the adjacency matrix")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bounds-table", help="lower/upper bounds on the normalised spread")
    p.add_argument("--format", choices=("text", "csv", "markdown"), default="text")
    p.add_argument("--imax", type=int, default=B.TABLE_SIZE - 1)
    p.add_argument("--jmax", type=int, default=B.TABLE_SIZE - 1)
    p.add_argument("--formulas-only", action="store_true", help="closed forms only, no certificate graphs")
    p.set_defaults(func=cmd_bounds_table)

    p = sub.add_parser("search", help="maximise the (i,j)-spread over graphs on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--space", choices=("L", "S"), default="L", help="L: loops allowed, S: simple graphs")
    p.add_argument("--method", choices=("exhaustive", "hill-climb"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--threads", type=int, default=None, help=f"worker threads (default ${THREADS_ENV} or 1)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="run verification checks; exit status 1 on any failure")
    p.add_argument("--suite", choices=["all"] + list(checks.SUITES), default="all")
    p.add_argument("--k", type=int, action="append", help="Hadamard parameter(s) for --suite hadamard")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (CliError, GraphError, FormatError, SearchSizeError, IndexError, ConvergenceError, UnavailableCertificate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
