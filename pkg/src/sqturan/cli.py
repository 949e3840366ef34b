"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 budget exhausted (partial or unknown
answer), 3 internal check failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import report
from .coloring import (chromatic_number, critical_edges, good_partition_uniqueness_check, explicit_coloring_cycle,
                       explicit_coloring_edge_deleted)
from .detector import contains_squared_cycle
from .errors import BudgetExceeded, CheckFailure, NonConvergence, ParameterError
from .graph import (Graph, complete, complete_multipartite, cycle, cycle_square, gn, gn_edge_count,
                    path, path_square, star, turan, turan3_edge_count)
from .io import from_dimacs, from_graph6, to_dimacs, to_graph6
from .matching import max_matching
from .prooflab import DEFAULT_ETA, DEFAULT_RESTARTS, lemma_audit, max_cross_tripartition
from .search import CONSISTENCY_COLUMNS, exhaustive_extremal, hillclimb_extremal, theorem_consistency
from .spectral import DEFAULT_TOL, eigenvector_balance_check, spectral_radius

THREADS_ENV = "SQTURAN_THREADS"
EXIT_OK, EXIT_USAGE, EXIT_PARTIAL, EXIT_CHECK = 0, 1, 2, 3

FAMILIES = ("gn", "cycle", "path", "cycle-square", "path-square", "turan", "multipartite",
            "complete", "empty", "star")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    flags: dict = field(default_factory=dict)
    threads: int = 1

    def as_dict(self) -> dict:
        return asdict(self)


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        t = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV}={raw!r} is not an integer")
    if t < 1:
        raise UsageError(f"{THREADS_ENV} must be >= 1, got {t}")
    return t


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_graph_source(p):
    p.add_argument("--family", choices=FAMILIES, help="named graph family")
    p.add_argument("--n", type=int, help="number of vertices")
    p.add_argument("--ell", type=int, help="cycle length")
    p.add_argument("--r", type=int, default=3, help="number of Turán parts (default 3)")
    p.add_argument("--parts", type=_int_list, help="part sizes for --family multipartite")
    p.add_argument("--graph6", help="graph given inline in graph6")
    p.add_argument("--input", help="graph file (graph6, or DIMACS edge format)")


def _need(args, name, lo=None):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for this graph source")
    if lo is not None and v < lo:
        raise UsageError(f"--{name.replace('_', '-')} must be >= {lo}, got {v}")
    return v


def load_graph(args) -> Graph:
    sources = [args.family is not None, args.graph6 is not None, args.input is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --family, --graph6, --input")
    if args.graph6 is not None:
        return from_graph6(args.graph6)
    if args.input is not None:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise UsageError(f"--input {args.input}: {exc.strerror or exc}")
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if any(ln.startswith("p ") for ln in lines):
            return from_dimacs(text)
        if not lines:
            raise UsageError(f"--input {args.input}: no graph found")
        return from_graph6(lines[0])
    f = args.family
    if f == "gn":
        return gn(_need(args, "n", 4))
    if f == "cycle":
        return cycle(_need(args, "ell", 3))
    if f == "path":
        return path(_need(args, "n", 1))
    if f == "cycle-square":
        return cycle_square(_need(args, "ell", 3))
    if f == "path-square":
        return path_square(_need(args, "ell", 1))
    if f == "turan":
        return turan(_need(args, "n", 1), args.r)
    if f == "multipartite":
        return complete_multipartite(_need(args, "parts"))
    if f == "complete":
        return complete(_need(args, "n", 1))
    if f == "empty":
        return Graph.empty(_need(args, "n", 1))
    return star(_need(args, "n", 1))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sqturan", description="Squared-cycle Turán toolkit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("construct", help="build a graph and write it")
    _add_graph_source(c)
    c.add_argument("--format", choices=("graph6", "dimacs"), default="graph6")
    c.add_argument("--out", default="-")

    c = sub.add_parser("edges", help="edge count and closed forms")
    _add_graph_source(c)
    c.add_argument("--list", action="store_true", help="also list the edges")
    c.add_argument("--out", default="-")

    c = sub.add_parser("matching", help="maximum matching")
    _add_graph_source(c)
    c.add_argument("--out", default="-")

    c = sub.add_parser("chromatic", help="exact chromatic number with certificate")
    _add_graph_source(c)
    c.add_argument("--node-limit", type=int, default=10_000_000)
    c.add_argument("--out", default="-")

    c = sub.add_parser("good-partition", help="residue partitions for squared paths and cycles")
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--out", default="-")

    c = sub.add_parser("detect", help="search for a squared cycle")
    _add_graph_source(c)
    c.add_argument("--length", type=int, help="pattern length (defaults to --ell)")
    c.add_argument("--node-limit", type=int, default=100_000_000)
    c.add_argument("--out", default="-")

    c = sub.add_parser("spectral", help="spectral radius by power iteration")
    _add_graph_source(c)
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--vector-out", help="write the Perron vector as CSV")
    c.add_argument("--out", default="-")

    c = sub.add_parser("eigen-balance", help="Perron-vector balance on K1 + K3(n1,n2,n3)")
    c.add_argument("--sizes", type=_int_list, required=True, help="n1,n2,n3")
    c.add_argument("--tol", type=float, default=1e-8)
    c.add_argument("--out", default="-")

    c = sub.add_parser("audit", help="proof-set statistics and lemma predicates")
    _add_graph_source(c)
    c.add_argument("--eta", type=float, default=DEFAULT_ETA)
    c.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default="-")

    c = sub.add_parser("maxcut3", help="3-partition maximising crossing edges")
    _add_graph_source(c)
    c.add_argument("--mode", choices=("exact", "local"), default="local")
    c.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default="-")

    c = sub.add_parser("search", help="extremal search")
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--objective", choices=("edges", "spectral"), default="edges")
    c.add_argument("--method", choices=("exhaustive", "hillclimb"), default="exhaustive")
    c.add_argument("--budget", type=int, help="candidate budget (exhaustive) or freeness checks (hillclimb)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--threads", type=int)
    c.add_argument("--out", default="-", help="CSV report path")
    c.add_argument("--witness-out", help="graph6 witness file")

    c = sub.add_parser("verify-theorem", help="freeness and comparison rows for G(n) and Turán graphs")
    c.add_argument("--ell", type=_int_list, required=True, help="one or more lengths, comma-separated")
    c.add_argument("--n-min", type=int, required=True)
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--out", default="-")
    return p


def _config(args) -> dict:
    flags = {k: v for k, v in vars(args).items() if k != "command"}
    return RunConfig(args.command, flags, getattr(args, "threads", None) or 1).as_dict()


def _cmd_construct(args):
    g = load_graph(args)
    header = report.config_line(_config(args))
    if args.format == "graph6":
        text = header + "\n" + to_graph6(g) + "\n"
    else:
        text = to_dimacs(g, comment=header)
    report.emit(text, args.out)
    return EXIT_OK


def _cmd_edges(args):
    g = load_graph(args)
    pairs = [("n", g.n), ("e", g.edge_count())]
    if args.family == "gn":
        pairs.append(("closed_form", gn_edge_count(g.n)))
    elif args.family == "turan" and args.r == 3:
        pairs.append(("closed_form", turan3_edge_count(g.n)))
    text = report.to_text(pairs, _config(args))
    if args.list:
        text += "".join(f"{u},{v}\n" for u, v in g.edges())
    report.emit(text, args.out)
    return EXIT_OK


def _cmd_matching(args):
    g = load_graph(args)
    m = max_matching(g)
    if not m.is_valid_in(g):
        raise CheckFailure("matching is not valid in the input graph")
    text = report.to_csv(("u", "v"), sorted(m.edges), _config(args))
    report.emit(text + f"nu={m.size}\n", args.out)
    return EXIT_OK


def _cmd_chromatic(args):
    g = load_graph(args)
    chi, cert = chromatic_number(g, args.node_limit)
    cert.check(g)
    report.emit(f"chi={chi}\n" + report.coloring_csv(cert.colors, _config(args)), args.out)
    return EXIT_OK


def _cmd_good_partition(args):
    ell = args.ell
    if not 4 <= ell <= 20:
        raise UsageError(f"--ell must be in [4, 20], got {ell}")
    unique = good_partition_uniqueness_check(ell)
    rows = []
    part = explicit_coloring_cycle(ell) if ell >= 6 else None
    if part is not None:
        for v, c in enumerate(part.colors(ell)):
            rows.append(("cycle", v, c))
        part.check(cycle_square(ell))
    if ell >= 6 and ell % 3 in (1, 2):
        dpart = explicit_coloring_edge_deleted(ell)
        dpart.check(cycle_square(ell).delete_edges(critical_edges(ell)))
        for v, c in enumerate(dpart.colors(ell)):
            rows.append(("edge-deleted", v, c))
    text = report.to_csv(("graph", "vertex", "class"), rows, _config(args))
    report.emit(text + f"path_square_partition_unique={report.fmt(unique)}\n", args.out)
    return EXIT_OK


def _cmd_detect(args):
    g = load_graph(args)
    length = args.length if args.length is not None else args.ell
    if length is None:
        raise UsageError("--length (or --ell) is required")
    emb = contains_squared_cycle(g, length, args.node_limit)
    pairs = [("length", length), ("contains", emb is not None)]
    if emb is not None:
        pairs.append(("embedding", list(emb.ordering)))
    report.emit(report.to_text(pairs, _config(args)), args.out)
    return EXIT_OK


def _cmd_spectral(args):
    g = load_graph(args)
    res = spectral_radius(g, args.tol)
    report.emit(report.spectral_text(res, _config(args)), args.out)
    if args.vector_out:
        report.emit(report.vector_csv(res, _config(args)), args.vector_out)
    return EXIT_OK


def _cmd_eigen_balance(args):
    if len(args.sizes) != 3:
        raise UsageError(f"--sizes needs exactly three values, got {args.sizes}")
    rep = eigenvector_balance_check(*args.sizes, tol=args.tol)
    pairs = [("rho", rep.rho), ("x_dominating", rep.x_dominating), ("part_values", list(rep.part_values)),
             ("sign_quantity", rep.sign_quantity)]
    pairs += [(k, v) for k, v in sorted(rep.checks.items())]
    pairs.append(("holds", rep.holds))
    report.emit(report.to_text(pairs, _config(args)), args.out)
    return EXIT_OK


def _cmd_audit(args):
    g = load_graph(args)
    reps = lemma_audit(g, args.eta, args.ell, restarts=args.restarts, seed=args.seed)
    text = report.lemma_csv(reps, _config(args))
    report.emit(text, args.out)
    if args.out != "-":
        sys.stdout.write(report.lemma_summary(reps))
    return EXIT_OK


def _cmd_maxcut3(args):
    g = load_graph(args)
    tri = max_cross_tripartition(g, args.mode, args.restarts, args.seed)
    rows = [(v, i) for i, p in enumerate(tri.parts) for v in p]
    text = report.to_csv(("vertex", "part"), rows, _config(args))
    report.emit(text + f"cross_edges={tri.cross_edges}\ninternal_edges={tri.internal_edges}\n", args.out)
    return EXIT_OK


def _cmd_search(args):
    threads = args.threads if args.threads is not None else default_threads()
    if threads < 1:
        raise UsageError(f"--threads must be >= 1, got {threads}")
    args.threads = threads
    if args.method == "exhaustive":
        rep = exhaustive_extremal(args.ell, args.n, args.objective, args.budget, threads)
    else:
        rep = hillclimb_extremal(args.ell, args.n, args.objective, args.budget or 2000, args.seed)
    cfg = _config(args)
    report.emit(report.search_csv(rep, cfg), args.out)
    if args.witness_out:
        report.emit(report.search_graph6(rep, cfg), args.witness_out)
    if args.method == "exhaustive" and not rep.exhaustive:
        return EXIT_PARTIAL
    return EXIT_OK


def _cmd_verify_theorem(args):
    if args.n_min < 4 or args.n_max < args.n_min:
        raise UsageError(f"need 4 <= --n-min <= --n-max, got {args.n_min}..{args.n_max}")
    rows = theorem_consistency(args.ell, range(args.n_min, args.n_max + 1))
    report.emit(report.consistency_csv(rows, CONSISTENCY_COLUMNS, _config(args)), args.out)
    return EXIT_OK


COMMANDS = {
    "construct": _cmd_construct, "edges": _cmd_edges, "matching": _cmd_matching,
    "chromatic": _cmd_chromatic, "good-partition": _cmd_good_partition, "detect": _cmd_detect,
    "spectral": _cmd_spectral, "eigen-balance": _cmd_eigen_balance, "audit": _cmd_audit,
    "maxcut3": _cmd_maxcut3, "search": _cmd_search, "verify-theorem": _cmd_verify_theorem,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    except (CheckFailure, NonConvergence) as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
