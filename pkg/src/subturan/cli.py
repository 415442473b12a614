"""Command-line front end.

Exit codes: 0 success / found, 1 witness rejected by ``verify``, 2 usage,
input or resource-cap error, 3 not found, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from ._limits import ResourceLimitError
from .certify import InvalidWitness
from .colored import Color, blue_stats, build_colored, count_proper_blue_stars, proper_star_partition
from .families import FamilySpec, subdivide
from .graph import BipartiteGraph, Graph, GraphError, NotBipartite, bipartition_of
from .extremal.record import CSV_HEADER_EX, CSV_HEADER_Z
from .graphio import graph_to_json, read_graph, to_graph6, write_graph

EXIT_OK, EXIT_REJECTED, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _single(spec_text: str) -> tuple[FamilySpec, Graph]:
    spec = FamilySpec.parse(spec_text)
    graphs = spec.build()
    if len(graphs) != 1:
        raise UsageError(f"{spec_text} names {len(graphs)} graphs; use gen --list for families")
    return spec, graphs[0]


def _plain(g: Graph | BipartiteGraph) -> Graph:
    return g.graph if isinstance(g, BipartiteGraph) else g


def _as_bipartite(g: Graph | BipartiteGraph, side: str) -> BipartiteGraph:
    bg = g if isinstance(g, BipartiteGraph) else bipartition_of(g)
    return bg.swapped() if side == "b" else bg


def _emit_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj: Any, out: str | None) -> None:
    _emit_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def _emit_graph(g: Graph | BipartiteGraph, out: str | None, fmt: str) -> None:
    if out:
        write_graph(g, out, fmt)
    elif fmt == "json":
        _emit_json(graph_to_json(g), None)
    else:
        sys.stdout.write(to_graph6(_plain(g)).decode("ascii") + "\n")


def _labels_json(labels) -> dict[str, Any]:
    return {
        "branch": {str(k): v for k, v in sorted(labels.branch.items())},
        "bridge": {f"[{u},{v}]": b for (u, v), b in sorted(labels.bridge.items())},
    }


def _csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands -----------------------------------------------------------


def cmd_gen(args) -> int:
    spec = FamilySpec.parse(args.spec)
    graphs = spec.build()
    if len(graphs) > 1 and not args.list:
        raise UsageError(f"{args.spec} has {len(graphs)} members; pass --list")
    if args.list:
        if args.sub:
            graphs = [subdivide(g)[0] for g in graphs]
        if args.output:
            outdir = Path(args.output)
            outdir.mkdir(parents=True, exist_ok=True)
            ext = "json" if args.format == "json" else "g6"
            for i, g in enumerate(graphs):
                write_graph(g, outdir / f"member_{i:04d}.{ext}", args.format)
        else:
            for g in graphs:
                sys.stdout.write(to_graph6(g).decode("ascii") + "\n")
        print(f"count {len(graphs)}", file=sys.stderr)
        return EXIT_OK
    g = graphs[0]
    if args.sub:
        sub, labels = subdivide(g)
        _emit_graph(sub, args.output, args.format)
        if args.labels:
            _emit_json(_labels_json(labels), args.labels)
        return EXIT_OK
    _emit_graph(g, args.output, args.format)
    return EXIT_OK


def cmd_subdivide(args) -> int:
    g = _plain(read_graph(args.input))
    sub, labels = subdivide(g)
    parts = BipartiteGraph(sub, frozenset(labels.branch.values()), frozenset(labels.bridge.values()))
    _emit_graph(parts, args.output, args.format)
    if args.labels:
        _emit_json(_labels_json(labels), args.labels)
    return EXIT_OK


def cmd_color_stats(args) -> int:
    host = _as_bipartite(read_graph(args.input), args.side)
    if args.pattern:
        pattern = _single(args.pattern)[1]
        threshold = pattern.num_edges
    elif args.threshold:
        threshold = args.threshold
    else:
        raise UsageError("give --pattern or --threshold")
    C = build_colored(host, threshold)
    st = blue_stats(C)
    out: dict[str, Any] = {
        "threshold": threshold,
        "part_a": len(host.part_a),
        "part_b": len(host.part_b),
        "blue_edges": st.blue_edges,
        "red_edges": len(C.pairs(Color.RED)),
        "max_blue_vertex": st.max_blue_vertex,
        "max_blue_degree": st.max_blue_degree,
        "delta_ratio": st.delta_ratio,
        "blue_degrees": [[v, d] for v, d in st.degrees.items()],
    }
    if args.vertex is not None:
        y = args.vertex
        Y = sorted(C.blue_neighbors(y))
        blocks = proper_star_partition(C, y, Y, args.window)
        out["star"] = {
            "vertex": y,
            "blue_degree": len(Y),
            "blocks": [sorted(b) for b in blocks],
            "partition_lower_bound": count_proper_blue_stars(C, y, Y, args.s, "partition_lower_bound", args.window),
        }
        if args.exact:
            out["star"]["exact"] = count_proper_blue_stars(C, y, Y, args.s, "exact")
    _emit_json(out, args.output)
    return EXIT_OK


def cmd_find(args) -> int:
    from .finder import BudgetExceeded, PipelineConfig, find_subdivision, find_subgraph, pipeline_cone_cycle

    host = _plain(read_graph(args.host))
    spec, pattern = _single(args.pattern)
    budget = None if args.budget == 0 else args.budget
    trace = None
    try:
        if args.mode == "pipeline":
            if spec.kind != "cone_cycle":
                raise UsageError("pipeline mode needs a cone_cycle:k=... pattern")
            cfg = PipelineConfig(root=args.root, slack=args.slack, budget=budget)
            wit, trace = pipeline_cone_cycle(host, dict(spec.params)["k"], cfg)
            if trace.outcome == "budget_exceeded":
                raise BudgetExceeded(trace.expansions)
            payload = wit.to_json() if wit else None
        elif args.sub:
            wit = find_subdivision(host, pattern, budget)
            payload = wit.to_json() if wit else None
        else:
            emb = find_subgraph(host, pattern, budget)
            payload = None
            if emb:
                payload = {
                    "pattern": {"n": pattern.n, "edges": [list(e) for e in pattern.edges()]},
                    "map": {str(v): x for v, x in enumerate(emb.mapping)},
                }
    except BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        if args.trace and trace is not None:
            _emit_json(trace.to_json(), args.trace)
        return EXIT_BUDGET
    if args.trace and trace is not None:
        _emit_json(trace.to_json(), args.trace)
    if payload is None:
        print("not found" + (" (this strategy only)" if args.mode == "pipeline" else ""), file=sys.stderr)
        return EXIT_NOT_FOUND
    _emit_json(payload, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .certify import check_embedding
    from .finder import SubdivisionWitness

    host = _plain(read_graph(args.host))
    try:
        obj = json.loads(Path(args.witness).read_text())
    except json.JSONDecodeError as exc:
        raise GraphError(f"witness is not JSON: {exc}") from exc
    try:
        if "map" in obj:
            p = obj["pattern"]
            pattern = Graph(int(p["n"]), [tuple(e) for e in p["edges"]])
            check_embedding(pattern, host, {int(k): int(v) for k, v in obj["map"].items()})
        else:
            SubdivisionWitness.from_json(obj, host).validate()
    except InvalidWitness as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    print("ok", file=sys.stderr)
    return EXIT_OK


def _timing(rec, seedless: bool):
    if seedless:
        rec = type(rec)(**{**rec.__dict__, "runtime_ms": 0.0})
    return rec


def _extremal_rows(pattern: Graph, nmin: int, nmax: int, seedless: bool) -> list[list[str]]:
    from .extremal import exact_ex

    return [_timing(exact_ex(n, pattern), seedless).csv_row() for n in range(nmin, nmax + 1)]


def _zbound_rows(pattern: Graph, pairs, seedless: bool, with_bound: int | None) -> list[list[str]]:
    from .extremal import check_naor_verstraete_bound, exact_z

    rows = []
    for m, n in pairs:
        rec = _timing(exact_z(m, n, pattern), seedless)
        row = rec.csv_row()
        if with_bound is not None:
            chk = check_naor_verstraete_bound(m, n, with_bound, rec.value)
            row += [f"{chk.bound:.4f}", str(chk.holds).lower()]
        rows.append(row)
    return rows


def _even_cycle_half(spec: FamilySpec) -> int | None:
    p = dict(spec.params)
    if spec.kind == "cycle" and p["k"] % 2 == 0 and p["k"] >= 4:
        return p["k"] // 2
    return None


ZHEADER = list(CSV_HEADER_Z)
EXHEADER = list(CSV_HEADER_EX)


def cmd_extremal(args) -> int:
    _, pattern = _single(args.pattern)
    nmin = args.nmin if args.nmin is not None else args.n
    _emit_text(_csv(EXHEADER, _extremal_rows(pattern, nmin, args.n, args.seedless)), args.output)
    return EXIT_OK


def cmd_zbound(args) -> int:
    spec, pattern = _single(args.pattern)
    if args.m > args.n:
        raise UsageError("need m <= n")
    half = _even_cycle_half(spec)
    header = ZHEADER + (["nv_bound", "nv_holds"] if half else [])
    _emit_text(_csv(header, _zbound_rows(pattern, [(args.m, args.n)], args.seedless, half)), args.output)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.task == "density":
        from .extremal import density_table, gq_incidence_graph

        qs = [int(x) for x in args.gq.split(",") if x.strip()] if args.gq else []
        exponent = Fraction(args.exponent)
        graphs = [gq_incidence_graph(q).graph.graph for q in qs]
        rows = [[str(r.n), str(r.e), f"{r.ratio:.6f}", str(exponent)] for r in density_table(graphs, exponent)]
        _emit_text(_csv(["n", "e", "ratio", "exponent"], rows), args.output)
        return EXIT_OK
    if not args.pattern:
        header = EXHEADER if args.task == "extremal" else ZHEADER
        _emit_text(_csv(header, []), args.output)
        return EXIT_OK
    spec, pattern = _single(args.pattern)
    if args.task == "extremal":
        nmax = args.nmax or 0
        rows = _extremal_rows(pattern, args.nmin, nmax, args.seedless) if nmax >= args.nmin else []
        _emit_text(_csv(EXHEADER, rows), args.output)
        return EXIT_OK
    mmax, nmax = args.mmax or 0, args.nmax or 0
    pairs = [(m, n) for m in range(1, mmax + 1) for n in range(m, nmax + 1)]
    half = _even_cycle_half(spec)
    header = ZHEADER + (["nv_bound", "nv_holds"] if half else [])
    _emit_text(_csv(header, _zbound_rows(pattern, pairs, args.seedless, half)), args.output)
    return EXIT_OK


def cmd_gq(args) -> int:
    from .extremal import gq_incidence_graph

    c = gq_incidence_graph(args.q)
    g = c.graph.graph
    summary = {
        "q": args.q,
        "points": len(c.points),
        "lines": len(c.lines),
        "vertices": g.n,
        "edges": g.num_edges,
        "degree": args.q + 1,
        "girth": 8,
    }
    if args.output:
        write_graph(c.graph, args.output, args.format)
        _emit_json(summary, None)
    elif args.format == "json":
        _emit_json(graph_to_json(c.graph), None)
    else:
        sys.stdout.write(to_graph6(g).decode("ascii") + "\n")
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seedless", "--deterministic", action="store_true", help="zero timing columns so output is byte-identical across runs")
    common.add_argument("--workers", type=int, default=1, help="accepted for compatibility; execution is single-threaded")

    p = argparse.ArgumentParser(prog="subturan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write a named graph or family")
    g.add_argument("spec", help="e.g. cone_cycle:k=4, kst:s=3,t=4, family_f:s=2,t=3:strict")
    g.add_argument("--sub", action="store_true", help="write the 1-subdivision instead")
    g.add_argument("--labels", help="with --sub: write branch/bridge labels JSON here")
    g.add_argument("--list", action="store_true", help="write every member (a directory with -o)")
    g.add_argument("-o", "--output")
    g.add_argument("--format", choices=["graph6", "json"], default="graph6")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("subdivide", parents=[common], help="1-subdivide a graph file")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.add_argument("--labels")
    s.add_argument("--format", choices=["graph6", "json"], default="json")
    s.set_defaults(func=cmd_subdivide)

    c = sub.add_parser("color-stats", parents=[common], help="red/blue pair statistics of a bipartite host")
    c.add_argument("input")
    c.add_argument("--pattern", help="colour relative to e(pattern)")
    c.add_argument("--threshold", type=int, help="explicit red threshold")
    c.add_argument("--side", choices=["a", "b"], default="a", help="which part is coloured")
    c.add_argument("--vertex", type=int, help="also partition this vertex's blue neighbourhood")
    c.add_argument("--s", type=int, default=2)
    c.add_argument("--window", type=int)
    c.add_argument("--exact", action="store_true", help="also count proper stars exactly")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_color_stats)

    f = sub.add_parser("find", parents=[common], help="search a host for a pattern or its subdivision")
    f.add_argument("host")
    f.add_argument("--pattern", required=True)
    f.add_argument("--sub", action="store_true", help="search for the 1-subdivision of the pattern")
    f.add_argument("--mode", choices=["generic", "pipeline"], default="generic")
    f.add_argument("--budget", type=int, default=10**7, help="extension cap; 0 for none")
    f.add_argument("--root", type=int)
    f.add_argument("--slack", type=float, default=0.5)
    f.add_argument("--trace", "--report", dest="trace", help="write the pipeline trace JSON here")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_find)

    v = sub.add_parser("verify", parents=[common], help="re-check a witness file against its host")
    v.add_argument("host")
    v.add_argument("witness")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extremal", parents=[common], help="exact ex(n, H) as CSV")
    e.add_argument("--pattern", required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--nmin", type=int)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_extremal)

    z = sub.add_parser("zbound", parents=[common], help="exact z(m, n, H) as CSV, with the even-cycle bound")
    z.add_argument("--pattern", required=True)
    z.add_argument("--m", type=int, required=True)
    z.add_argument("--n", type=int, required=True)
    z.add_argument("-o", "--output")
    z.set_defaults(func=cmd_zbound)

    t = sub.add_parser("table", parents=[common], help="CSV tables over parameter ranges")
    t.add_argument("task", choices=["extremal", "zbound", "density"])
    t.add_argument("--pattern")
    t.add_argument("--nmin", type=int, default=1)
    t.add_argument("--nmax", type=int)
    t.add_argument("--mmax", type=int)
    t.add_argument("--gq", help="comma-separated q values for the density table")
    t.add_argument("--exponent", default="4/3")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_table)

    q = sub.add_parser("gq", parents=[common], help="incidence graph of the symplectic quadrangle W(q)")
    q.add_argument("--q", type=int, required=True)
    q.add_argument("-o", "--output")
    q.add_argument("--format", choices=["graph6", "json"], default="graph6")
    q.set_defaults(func=cmd_gq)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, NotBipartite, ResourceLimitError, OSError, ValueError) as exc:
        print(f"subturan {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
