"""Command-line entry point.

Exit codes: 0 success or passing verification, 1 failing verification,
2 usage error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import extremal as ex
from . import oracle
from .graph import CapacityError, FormatError, PreconditionError, from_edge_list, to_edge_list, to_json, turan
from .homology import FieldSpec, betti, betti_independence
from .persistence import (
    EdgewiseFiltration,
    betti_curve,
    flag_persistence,
    from_filtration_text,
    metric_realization,
    to_filtration_text,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from err


def filtration_output(f: EdgewiseFiltration, fmt: str) -> str:
    if fmt == "edge-list":
        return to_filtration_text(f)
    if fmt == "csv":
        return "index,u,v\n" + "".join(f"{i},{u},{v}\n" for i, (u, v) in enumerate(f.edges, start=1))
    return json.dumps(oracle.filtration_dict(f), separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_turan(args) -> int:
    g, part = turan(args.n, args.k)
    if args.format == "edge-list":
        text = to_edge_list(g)
    elif args.format == "csv":
        text = "u,v\n" + "".join(f"{u},{v}\n" for u, v in g.edges())
    else:
        data = json.loads(to_json(g))
        data["classes"] = [list(c) for c in part.classes]
        text = json.dumps(data, separators=(",", ":")) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_hfilt(args) -> int:
    _emit(filtration_output(ex.h_filtration(args.n, args.k), args.format), args.out)
    return EXIT_OK


def cmd_optfilt(args) -> int:
    reps = ex.optimal_representations(args.n)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
    ext = {"edge-list": "txt", "csv": "csv", "json": "json"}[args.format]
    for i, rep in enumerate(reps, start=1):
        f = ex.representation_to_filtration(rep, complete=args.complete)
        body = filtration_output(f, args.format)
        if args.out:
            (outdir / f"optfilt_n{args.n}_{i}.{ext}").write_text(body)
            sys.stdout.write(f"{rep}\t{rep.to_path()}\n")
        else:
            sys.stdout.write(f"# {rep} {rep.to_path()}\n{body}")
    return EXIT_OK


def cmd_repfilt(args) -> int:
    path = ex.parse_moves(args.rep, args.n)
    f = ex.representation_to_filtration(path, complete=args.complete)
    _emit(filtration_output(f, args.format), args.out)
    sys.stderr.write(f"post-Turán total persistence: {ex.post_turan_total_persistence(path)}\n")
    return EXIT_OK


def cmd_barcode(args) -> int:
    f = from_filtration_text(_read(args.file))
    field = FieldSpec(args.p)
    bc = flag_persistence(f, args.k, field)
    curve = betti_curve(f, args.k, field)
    csv = "index,betti\n" + "".join(f"{i},{b}\n" for i, b in enumerate(curve, start=1))
    if args.format == "csv":
        _emit(csv, args.out)
        return EXIT_OK
    _emit(bc.to_json(), args.out)
    if args.curve:
        Path(args.curve).write_text(csv)
    return EXIT_OK


def cmd_betti(args) -> int:
    g = from_edge_list(_read(args.file))
    field = FieldSpec(args.p)
    fn = betti_independence if args.independence else betti
    degrees = [args.k] if args.k is not None else list(range(-1, args.max_degree + 1))
    values = {str(k): fn(g, k, field) for k in degrees}
    if args.format == "csv":
        text = "degree,betti\n" + "".join(f"{k},{v}\n" for k, v in values.items())
    else:
        text = json.dumps({"n": g.n, "p": args.p, "complex": "independence" if args.independence else "flag",
                           "betti": values}, separators=(",", ":")) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_realize_metric(args) -> int:
    f = from_filtration_text(_read(args.file))
    _emit(metric_realization(f).to_json(), args.out)
    return EXIT_OK


def _need(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"verify {args.claim} needs {', '.join(missing)}")


def cmd_verify(args) -> int:
    field = FieldSpec(args.p)
    workers = oracle.resolve_workers(args.workers)
    c = args.claim
    if c == "fiberwise":
        _need(args, "n", "k")
        report = oracle.verify_fiberwise_optimality(args.n, args.k, field, workers, args.force)
    elif c == "vanishing":
        _need(args, "n", "k")
        report = oracle.verify_vanishing(args.n, args.k, field, workers, args.force)
    elif c == "bounds":
        report = oracle.verify_bound_hierarchy(args.samples or 500, args.seed, args.n or 9, args.k or 2, field)
    elif c == "optimal":
        _need(args, "n")
        report = oracle.verify_optimal_filtrations(args.n, force=args.force)
    elif c == "maxbars":
        _need(args, "n")
        report = oracle.verify_max_bars(args.n, args.trials or 200, args.seed, field)
    elif c == "support":
        report = oracle.verify_triangle_free_bound(args.trials or 100, args.seed, args.n or 7, field)
    elif c == "metric":
        report = oracle.verify_metric_realization(args.trials or 200, args.seed, args.n or 10)
    elif c == "kunneth":
        report = oracle.verify_kunneth(args.n or 5, range(-1, 4), field)
    elif c == "conj-bars":
        _need(args, "n", "k")
        report = oracle.check_bar_count_conjecture(args.n, args.k, args.trials or 200, args.seed)
    elif c == "conj-tp":
        _need(args, "n")
        report = oracle.check_total_persistence_conjecture(args.n, args.trials or 200, args.seed)
    elif c == "conj-spanning":
        _need(args, "n")
        report = oracle.check_spanning_bipartite_conjecture(args.n, args.force)
    else:  # argparse restricts choices
        raise UsageError(f"unknown claim {c}")
    _emit(report.to_json(include_timing=args.timing) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(args) -> int:
    full = oracle.sweep_t_range(args.n)
    lo = full.start if args.t_min is None else args.t_min
    hi = full.stop - 1 if args.t_max is None else args.t_max
    if lo < full.start or hi >= full.stop or lo > hi:
        raise UsageError(f"t range must lie in {full.start}..{full.stop - 1}")
    rows = oracle.sweep_bipartite_optimum(args.n, range(lo, hi + 1), args.mode)
    _emit(oracle.sweep_csv(rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

CLAIMS = ("fiberwise", "vanishing", "bounds", "optimal", "maxbars", "support", "metric", "kunneth",
          "conj-bars", "conj-tp", "conj-spanning")

VERIFY_HELP = """claims:
  fiberwise      --n --k   the co-lexicographic Turán filtration maximizes beta_k at every edge count
  vanishing      --n --k   beta_k = 0 above C(n-1,2)+k edges; complement of k+1 stars attains C(n-1,2)+k
  bounds         [--samples --n --k --seed]  link / vertex-deletion and Turán upper bounds on random graphs
  optimal        --n       exhaustive post-Turán paths: optimal total persistence representations
  maxbars        --n [--trials --seed]  at most beta_1(T_{n,2}) degree-1 bars, attained by Turán-first orders
  support        [--trials --n --seed]  a triangle-free subgraph carries at least |B_1| independent cycles
  metric         [--trials --n --seed]  every edgewise filtration is a Vietoris-Rips filtration
  kunneth        [--n]     Betti numbers of independence complexes of disjoint unions (join formula)
  conj-bars      --n --k   evidence only: |B_k| <= beta_k(T_{n,k+1})
  conj-tp        --n       evidence only: post-Turán optimum beats random filtrations in total persistence
  conj-spanning  --n       exhaustive: does every beta_1 maximizer contain a complete bipartite
                           spanning subgraph? fails from n=5 with a counterexample
"""


def _common(p: argparse.ArgumentParser, formats=("json", "csv", "edge-list"), default="json") -> None:
    p.add_argument("--out", "-o", help="output path (default: stdout)")
    p.add_argument("--format", choices=formats, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagpers",
        description="Extremal Betti numbers and persistence of flag complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("turan", help="Turán graph T_{n,k}",
                       description="Write the Turán graph T_{n,k}, whose flag complex has the largest "
                                   "beta_{k-1} among graphs on n vertices.")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    _common(p)
    p.set_defaults(func=cmd_turan)

    p = sub.add_parser("hfilt", help="co-lexicographic filtration of T_{n,k+1}",
                       description="Write the co-lexicographic edge order of T_{n,k+1}; every prefix "
                                   "maximizes beta_k among graphs with that many edges.")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    _common(p, default="edge-list")
    p.set_defaults(func=cmd_hfilt)

    p = sub.add_parser("optfilt", help="filtrations with optimal degree-1 total persistence",
                       description="Write the post-Turán filtrations with maximal degree-1 total persistence, "
                                   "one file per optimal representation. --out names a directory.")
    p.add_argument("n", type=int)
    p.add_argument("--complete", action="store_true", help="continue co-lexicographically up to K_n")
    _common(p, default="edge-list")
    p.set_defaults(func=cmd_optfilt)

    p = sub.add_parser("repfilt", help="filtration of a post-Turán representation or L/R word",
                       description="Realize a representation '(1,1)(3,3)(4,4)' or a move word 'LLRRLR' as "
                                   "an edgewise filtration; its post-Turán total persistence goes to stderr.")
    p.add_argument("n", type=int)
    p.add_argument("rep")
    p.add_argument("--complete", action="store_true")
    _common(p, default="edge-list")
    p.set_defaults(func=cmd_repfilt)

    p = sub.add_parser("barcode", help="degree-k barcode of a filtration file",
                       description="Compute the degree-k barcode of an edgewise filtration file ('n m' then "
                                   "m lines 'u v'). Prints JSON; --curve also writes the 'index,betti' CSV.")
    p.add_argument("file", help="filtration file, or - for stdin")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--p", type=int, default=2, help="prime field characteristic")
    p.add_argument("--curve", help="path for the Betti-curve CSV")
    _common(p, formats=("json", "csv"))
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("betti", help="reduced Betti numbers of a graph's flag complex",
                       description="Reduced Betti numbers of X(G), or of Ind(G) with --independence.")
    p.add_argument("file", help="graph edge list, or - for stdin")
    p.add_argument("--k", type=int)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--independence", action="store_true")
    _common(p, formats=("json", "csv"))
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", help="run a verification harness",
                       description="Run one verification harness and print a JSON report line.",
                       epilog=VERIFY_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("claim", choices=CLAIMS)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--trials", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, help="worker processes (default: TP_MAX_WORKERS or CPU count)")
    p.add_argument("--force", action="store_true", help="allow runs beyond the oracle caps")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="optimal beta_1 over graphs with a complete bipartite spanning subgraph",
                       description="For t extra edges, the largest beta_1 of a graph on n vertices with "
                                   "(n/2)^2 + t edges containing a complete bipartite spanning subgraph. "
                                   "CSV columns n,t,max_beta1,witness (witness n1:n2:d1:d2:e1:e2).")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-min", type=int)
    p.add_argument("--t-max", type=int)
    p.add_argument("--mode", choices=("auto", "exhaustive", "structured"), default="auto",
                   help="exhaustive (n <= 8) checks joins of all side graphs; structured scales to large n")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("realize-metric", help="metric whose Vietoris-Rips filtration is the given one",
                       description="Distances 2 - 1/i for the edge added at index i and 2 elsewhere, as "
                                   "exact fractions; every edgewise filtration arises this way.")
    p.add_argument("file")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_realize_metric)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stderr.close()
        return EXIT_OK
    except FormatError as err:
        sys.stderr.write(f"malformed input: {err}\n")
    except (UsageError, ex.DomainError, PreconditionError, CapacityError, oracle.OracleCapError) as err:
        sys.stderr.write(f"error: {err}\n")
    except ValueError as err:
        sys.stderr.write(f"error: {err}\n")
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
