"""Command-line front end: ``diagcent <command> ...``.

Results go to standard output in the chosen format; progress and diagnostics
go to standard error.  Exit codes: 0 success (including OUT_OF_RANGE answers),
1 verification failure, 2 bad request, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import random
import sys
from pathlib import Path

from diagcent import __version__
from diagcent.config import HARD_LIMITS, CapExceeded, override_caps

log = logging.getLogger("diagcent")

CACHE_ENV = "DIAGCENT_CACHE_DIR"
GROUP_TO_GRAPH = {"sym": "Sym", "orthq": "Orth", "orthq2": "Orth", "symp": "Symp"}


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "diagcent"


class VerificationFailed(Exception):
    pass


# output helpers -------------------------------------------------------------------


def _emit(args, payload: dict, table_lines: list[str], csv_rows: list[list] | None = None):
    out = sys.stdout
    if args.format == "json":
        out.write(json.dumps(payload) + "\n")
    elif args.format == "csv" and csv_rows is not None:
        for row in csv_rows:
            out.write(",".join(str(x) for x in row) + "\n")
    else:
        for line in table_lines:
            out.write(line + "\n")


def _cache(args):
    return None if args.no_cache else args.cache_dir


# commands -------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    from diagcent.partitions import enumerate_brauer, enumerate_partitions

    parts = enumerate_brauer(args.d) if args.brauer else enumerate_partitions(2 * args.d)
    texts = [str(p) for p in parts]
    _emit(
        args,
        {"command": "enumerate", "d": args.d, "brauer": args.brauer, "count": len(texts), "partitions": texts},
        texts + [f"count: {len(texts)}"],
        [["partition"]] + [[f'"{t}"'] for t in texts],
    )
    return 0


def cmd_count_graphs(args) -> int:
    from diagcent.graphs import census

    graphs = census(args.d, max_vertices=args.max_vertices, cycles_only=args.cycles_only,
                    cache_dir=_cache(args), threads=args.threads)
    payload = {
        "command": "count-graphs",
        "d": args.d,
        "max_vertices": args.max_vertices,
        "cycles_only": args.cycles_only,
        "count": len(graphs),
    }
    lines = []
    if args.list:
        payload["graphs"] = [str(g) for g in graphs]
        lines = payload["graphs"]
    _emit(args, payload, lines + [f"count: {len(graphs)}"],
          [["graph"]] + [[f'"{g}"'] for g in graphs] if args.list else [["count"], [len(graphs)]])
    return 0


def cmd_dim(args) -> int:
    from diagcent.invariants import OUT_OF_RANGE, graph_count_dim, molien_dim_sym
    from diagcent.schur_weyl import centralizer_dimension_in_commutant

    if args.method == "molien":
        if args.group != "sym":
            raise ValueError("the molien method applies to the finite group sym only")
        value = molien_dim_sym(args.n, args.d)
    elif args.method == "commutant":
        value = centralizer_dimension_in_commutant(args.group, args.n, args.d)
    else:
        value = graph_count_dim(GROUP_TO_GRAPH[args.group], args.n, args.d, cache_dir=_cache(args))
    out_of_range = value is OUT_OF_RANGE
    payload = {
        "command": "dim",
        "group": args.group,
        "n": args.n,
        "d": args.d,
        "method": args.method,
        "status": "OUT_OF_RANGE" if out_of_range else "ok",
        "dim": None if out_of_range else value,
    }
    text = str(value)
    _emit(args, payload, [text], [["group", "n", "d", "method", "dim"],
                                  [args.group, args.n, args.d, args.method, text]])
    return 0


def cmd_gct(args) -> int:
    from diagcent.gct import enumerate_gct

    types = [str(c) for c in enumerate_gct(args.d)]
    payload = {"command": "gct", "d": args.d, "count": len(types)}
    lines = []
    if args.list:
        payload["gct"] = types
        lines = types
    _emit(args, payload, lines + [f"count: {len(types)}"],
          [["gct"]] + [[f'"{t}"'] for t in types] if args.list else [["count"], [len(types)]])
    return 0


def cmd_hilbert(args) -> int:
    from diagcent.invariants import hilbert_table

    table = hilbert_table(args.group, range(1, args.max_n + 1), range(0, args.max_d + 1))
    if args.format == "json":
        sys.stdout.write(table.to_json() + "\n")
    elif args.format == "csv":
        sys.stdout.write(table.to_csv())
    else:
        width = max(len(str(v)) for v in table.entries.values()) + 1
        width = max(width, 4)
        head = "n\\d".ljust(5) + "".join(str(d).rjust(width) for d in table.d_values)
        lines = [head]
        for n in table.n_values:
            lines.append(str(n).ljust(5) + "".join(str(table.entries[(n, d)]).rjust(width)
                                                   for d in table.d_values))
        marks = []
        for d in table.d_values:
            s = table.stable_from(d)
            marks.append("-" if s is None else f">={s}")
        lines.append("stab".ljust(5) + "".join(m.rjust(width) for m in marks))
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


# verification suites --------------------------------------------------------------


def _suite_action(d: int, n: int, rng: random.Random):
    from diagcent.graphs import psi, psi_inverse, relabel_edges
    from diagcent.partitions import Permutation, conjugate_by, enumerate_partitions

    parts = enumerate_partitions(2 * d)
    bad = 0
    for _ in range(200):
        p = rng.choice(parts)
        sigma = Permutation(rng.sample(range(1, d + 1), d))
        if psi_inverse(relabel_edges(psi(p), sigma)) != conjugate_by(sigma, p):
            bad += 1
    yield "relabeling arrows matches conjugation (200 random pairs)", bad == 0, f"{bad} mismatches"


def _suite_orbit_basis(d: int, n: int, rng: random.Random):
    from diagcent.diagram_algebra import AlgebraElement, from_orbit_basis, multiply, to_orbit_basis
    from diagcent.partitions import enumerate_partitions

    parts = enumerate_partitions(2 * d)
    ok = all(from_orbit_basis(to_orbit_basis(AlgebraElement.basis_element(p))) == AlgebraElement.basis_element(p)
             for p in parts)
    yield "orbit-basis roundtrip on every diagram", ok, ""
    bad = 0
    for _ in range(30):
        a, b, c = (AlgebraElement.basis_element(rng.choice(parts)) for _ in range(3))
        if multiply(multiply(a, b), c) != multiply(a, multiply(b, c)):
            bad += 1
    yield "diagram product is associative (30 random triples)", bad == 0, f"{bad} failures"


def _suite_schur_weyl(d: int, n: int, rng: random.Random):
    from diagcent.graphs import census
    from diagcent.invariants import molien_dim_sym
    from diagcent.schur_weyl import centralizer_dimension_in_commutant, partition_image_report

    rep = partition_image_report(n, d)
    yield f"orbit basis vanishes exactly when blocks > n (rank {rep.rank})", rep.ok(), \
        f"rank {rep.rank}, {len(rep.vanishing)} vanishing"
    cent = centralizer_dimension_in_commutant("sym", n, d)
    mol = molien_dim_sym(n, d)
    graphs = len(census(d, max_vertices=n))
    yield f"centralizer {cent} = molien {mol} = graphs {graphs}", cent == mol == graphs, ""


def _suite_gct(d: int, n: int, rng: random.Random):
    from diagcent.gct import enumerate_gct, gct_of_brauer, nu, rho
    from diagcent.graphs import census, phi
    from diagcent.partitions import conjugation_orbits, enumerate_brauer

    brauer = enumerate_brauer(d)
    graphs = census(d, cycles_only=True)
    types = enumerate_gct(d)
    orbits = conjugation_orbits(d, brauer)
    yield f"orbits {len(orbits)} = cycle graphs {len(graphs)} = types {len(types)}", \
        len(orbits) == len(graphs) == len(types), ""
    yield "nu(rho(g)) = g", all(nu(rho(g)) == g for g in graphs), ""
    yield "rho(nu(c)) = c", all(rho(nu(c)) == c for c in types), ""
    yield "traced type equals rho(phi(p))", all(gct_of_brauer(p) == rho(phi(p)) for p in brauer), ""


def _suite_dims(d: int, n: int, rng: random.Random):
    from diagcent.invariants import graph_count_dim, molien_dim_sym

    for dd in range(1, d + 1):
        for nn in range(1, n + 1):
            a, b = molien_dim_sym(nn, dd), graph_count_dim("Sym", nn, dd)
            yield f"n={nn} d={dd}: molien {a} = graphs {b}", a == b, ""


SUITES = {
    "action": _suite_action,
    "orbit-basis": _suite_orbit_basis,
    "schur-weyl": _suite_schur_weyl,
    "gct": _suite_gct,
    "dims": _suite_dims,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rng = random.Random(args.seed)
    results = []
    for name in names:
        log.info("running suite %s (d=%d, n=%d)", name, args.d, args.n)
        for label, ok, detail in SUITES[name](args.d, args.n, rng):
            results.append({"suite": name, "check": label, "passed": bool(ok), "detail": "" if ok else detail})
    failed = [r for r in results if not r["passed"]]
    payload = {"command": "verify", "suite": args.suite, "d": args.d, "n": args.n,
               "passed": not failed, "results": results}
    lines = [f"{'PASS' if r['passed'] else 'FAIL'} [{r['suite']}] {r['check']}"
             + (f": {r['detail']}" if r["detail"] else "") for r in results]
    lines.append("PASS" if not failed else f"FAIL ({len(failed)} of {len(results)} checks)")
    _emit(args, payload, lines,
          [["suite", "check", "passed"]] + [[r["suite"], f'"{r["check"]}"', r["passed"]] for r in results])
    if args.report_json:
        Path(args.report_json).write_text(json.dumps({"passed": not failed, "failures": failed}, indent=2) + "\n")
    return 0 if not failed else 1


# argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help=f"census cache location (default ${CACHE_ENV} or ~/.cache/diagcent)")
    common.add_argument("--no-cache", action="store_true", help="ignore and do not write the cache")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--cap-nd", type=int, default=None, help="raise the n^d limit for matrix work")
    common.add_argument("--accept-long-runtime", action="store_true",
                        help="required together with --cap-nd")
    common.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")

    parser = argparse.ArgumentParser(prog="diagcent", description="Diagram algebra centralizer workbench.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list set partitions or Brauer diagrams")
    p.add_argument("d", type=int)
    p.add_argument("--brauer", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count-graphs", parents=[common], help="census of multidigraphs with d arrows")
    p.add_argument("d", type=int)
    p.add_argument("--max-vertices", type=int, default=None)
    p.add_argument("--cycles-only", action="store_true")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_count_graphs)

    p = sub.add_parser("dim", parents=[common], help="dimension of degree-d invariants")
    p.add_argument("--group", choices=tuple(GROUP_TO_GRAPH), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=("molien", "commutant", "graph"), default="graph")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("gct", parents=[common], help="generalized cycle types of total length d")
    p.add_argument("d", type=int)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_gct)

    p = sub.add_parser("verify", parents=[common], help="run property checks")
    p.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-json", default=None, help="write a JSON failure report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hilbert", parents=[common], help="table of invariant dimensions")
    p.add_argument("--group", choices=("sym",), default="sym")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-d", type=int, default=3)
    p.set_defaults(func=cmd_hilbert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if args.cache_dir is None:
        args.cache_dir = default_cache_dir()
    if args.threads < 1:
        parser.error("--threads must be positive")

    overrides = {}
    if args.cap_nd is not None:
        if not args.accept_long_runtime:
            parser.error("--cap-nd needs --accept-long-runtime")
        if args.cap_nd > HARD_LIMITS.max_tensor_dim:
            parser.error(f"--cap-nd above the hard limit {HARD_LIMITS.max_tensor_dim}")
        overrides["max_tensor_dim"] = args.cap_nd

    try:
        with override_caps(**overrides) if overrides else contextlib.nullcontext():
            return args.func(args)
    except CapExceeded as exc:
        print(f"diagcent: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"diagcent: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
