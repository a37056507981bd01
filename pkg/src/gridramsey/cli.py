"""Command-line interface: ``gridramsey {construct,verify,witness,solve}``.

Exit codes: 0 success or property holds, 1 property violated (witness
printed), 2 usage or input error, 3 node budget exhausted. Diagnostics go to
stderr prefixed ``error:``; long runs report progress there every 5 seconds.
Reports on stdout are deterministic for fixed arguments and seed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from math import comb
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from . import fileformat
from .colorings import EdgePartition, GraphColoring, GridColoring
from .constructions import (
    asymmetric_grid,
    binary_coloring,
    default_grid_provider,
    f3_43_coloring,
    f3_56_coloring,
    grid_to_partite3,
    mubayi_coloring,
    partite3_to_grid,
    product_partition,
    random_grid,
)
from .graphs import OddCycle
from .solvers import DEFAULT_BUDGET, BudgetExhausted, Checkpoint, SearchResult, exact_G, exact_f, exact_g
from .verifiers import (
    find_alternating_rectangle,
    verify_bipartite_rows,
    verify_chi_slow_grow,
    verify_chromatic_pq,
    verify_pq,
)
from .witnesses import PreconditionError, shelah_bound, shelah_witness, stepdown_bound, stepdown_witness

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FAMILIES = (
    "binary", "mubayi", "product-partition", "grid-random",
    "asym-grid", "f3-43", "f3-56", "partite3",
)
PROPERTIES = ("alternating-free", "pq", "chromatic-pq", "chi-slow-grow", "bipartite-rows")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # route argparse failures through our prefix
        raise UsageError(message)


class _Progress:
    """Throttled progress lines on the diagnostic stream."""

    def __init__(self, label: str, stream: TextIO, every: float = 5.0) -> None:
        self.label, self.stream, self.every = label, stream, every
        self.last = time.monotonic()

    def __call__(self, done: int, total: int | None = None) -> None:
        now = time.monotonic()
        if now - self.last >= self.every:
            self.last = now
            of = f"/{total}" if total else ""
            print(f"progress: {self.label} {done}{of}", file=self.stream, flush=True)


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gridramsey", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for verifiers")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a colouring and write it as a coloring file")
    c.add_argument("--family", required=True, choices=FAMILIES)
    c.add_argument("--n", type=int, help="vertices (or digits N for product-partition)")
    c.add_argument("--m", type=int, help="rows for grid-random")
    c.add_argument("--r", type=int, help="colours")
    c.add_argument("--t", type=int, help="word length for product-partition")
    c.add_argument("--seed", type=int, help="seed for randomised families")
    c.add_argument("--in", dest="inp", help="input file (partite3 conversions, grid-random partition)")
    c.add_argument("--out", help="output file (default: stdout)")

    v = sub.add_parser("verify", help="check a property of a coloring file")
    v.add_argument("--property", required=True, choices=PROPERTIES)
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--p", type=int)
    v.add_argument("--q", type=int)
    v.add_argument("--samples", type=int, help="random colour sets instead of all of them")
    v.add_argument("--max-size", type=int, default=8, help="largest sampled set for chi-slow-grow")
    v.add_argument("--seed", type=int, default=0)

    w = sub.add_parser("witness", help="run a pigeonhole witness finder")
    w.add_argument("--method", required=True, choices=("shelah", "stepdown"))
    w.add_argument("--r", type=int, required=True)
    w.add_argument("--k", type=int, default=2)
    w.add_argument("--p", type=int)
    w.add_argument("--q", type=int)
    w.add_argument("--n", type=int, help="size of the random instance (default: the bound)")
    w.add_argument("--seed", type=int, help="seed for the random instance")
    w.add_argument("--in", dest="inp", help="colouring to search instead of a random one")

    s = sub.add_parser("solve", help="exact small values by backtracking")
    s.add_argument("--solver", required=True, choices=("g", "G", "f"))
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--r-max", type=int)
    s.add_argument("--n-max", type=int)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--checkpoint", help="where to write the search state if the budget runs out")
    s.add_argument("--resume", help="checkpoint file to continue from")
    s.add_argument("--out", help="write the certificate colouring here")
    return parser


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


def _load(path: str):
    try:
        return fileformat.read(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _describe(obj) -> dict[str, Any]:
    if isinstance(obj, GridColoring):
        return {"kind": "grid", "rows": obj.m, "columns": obj.n,
                "row_colors": len(obj.row_palette()), "column_colors": len(obj.col_palette())}
    if isinstance(obj, EdgePartition):
        return {"kind": "partition", "vertices": obj.n, "classes": obj.t}
    kind = "graph" if obj.k == 2 else "hyper"
    return {"kind": kind, "vertices": obj.n, "uniformity": obj.k, "colors": len(obj.used_colors())}


def _one_based(vertices) -> list[int]:
    return [int(v) + 1 for v in vertices]


# ---------------------------------------------------------------- construct


def _construct(args) -> Any:
    fam = args.family
    if fam in ("binary", "mubayi", "f3-43", "f3-56"):
        _need(args, "n")
        if fam == "binary":
            return binary_coloring(args.n)
        if fam == "mubayi":
            return mubayi_coloring(args.n)
        provider = default_grid_provider(args.seed or 0)
        return (f3_43_coloring if fam == "f3-43" else f3_56_coloring)(args.n, provider)
    if fam == "product-partition":
        _need(args, "n", "t")
        return product_partition(args.n, args.t)
    if fam == "asym-grid":
        _need(args, "r")
        return asymmetric_grid(args.r)
    if fam == "grid-random":
        _need(args, "r", "m", "seed")
        if args.inp:
            part = _load(args.inp)
            if not isinstance(part, EdgePartition):
                raise UsageError("grid-random needs a partition file")
        else:
            _need(args, "n")
            part = EdgePartition.from_coloring(binary_coloring(args.n))
        grid = random_grid(part, args.r, args.m, args.seed)
        if grid is None:
            raise _Failure(f"fewer than {args.m} rows survived; try another seed or more colours")
        return grid
    # partite3, direction chosen by the input kind
    _need(args, "inp")
    obj = _load(args.inp)
    if isinstance(obj, GridColoring):
        return grid_to_partite3(obj)
    if isinstance(obj, GraphColoring) and obj.k == 3:
        return partite3_to_grid(obj)
    raise UsageError("partite3 needs a square grid file or a 3-uniform hyper file")


class _Failure(Exception):
    """A construction that legitimately found nothing (exit 1)."""


def cmd_construct(args, out: TextIO, err: TextIO) -> tuple[int, dict]:
    try:
        obj = _construct(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except _Failure as exc:
        return EXIT_VIOLATED, {"command": "construct", "family": args.family, "status": "failed",
                               "reason": str(exc)}
    text = fileformat.dumps(obj)
    report = {"command": "construct", "family": args.family, "status": "ok", **_describe(obj)}
    if args.out:
        Path(args.out).write_text(text)
        report["out"] = args.out
        return EXIT_OK, report
    out.write(text)
    return EXIT_OK, {}


# ---------------------------------------------------------------- verify


def _expect(obj, kind, prop):
    if not isinstance(obj, kind):
        raise UsageError(f"property {prop} does not apply to a {_describe(obj)['kind']} file")


def cmd_verify(args, out: TextIO, err: TextIO) -> tuple[int, dict]:
    obj = _load(args.inp)
    prop = args.property
    report: dict[str, Any] = {"command": "verify", "property": prop, **_describe(obj)}
    progress = _Progress(prop, err)
    if prop == "alternating-free":
        _expect(obj, GridColoring, prop)
        rect = find_alternating_rectangle(obj)
        if rect is not None:
            report.update(holds=False, rectangle=list(rect.one_based()))
    elif prop == "bipartite-rows":
        _expect(obj, GridColoring, prop)
        bad = verify_bipartite_rows(obj)
        if bad is not None:
            i, ip, cycle = bad
            report.update(holds=False, rows=[i + 1, ip + 1], odd_cycle=_one_based(cycle.cycle))
    elif prop == "pq":
        _expect(obj, GraphColoring, prop)
        _need(args, "p", "q")
        try:
            bad = verify_pq(obj, args.p, args.q, threads=args.threads, progress=progress)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report.update(p=args.p, q=args.q, checked=comb(obj.n, args.p))
        if bad is not None:
            report.update(holds=False, vertices=_one_based(bad.vertices), color_count=bad.color_count,
                          colors=sorted(bad.colors))
    elif prop == "chromatic-pq":
        _expect(obj, GraphColoring, prop)
        _need(args, "p", "q")
        if obj.k != 2:
            raise UsageError("chromatic-pq needs a graph file")
        try:
            bad = verify_chromatic_pq(obj, args.p, args.q, samples=args.samples, seed=args.seed,
                                      progress=progress)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report.update(p=args.p, q=args.q, mode="sampled" if args.samples else "exhaustive")
        if bad is not None:
            report.update(holds=False, colors=list(bad.colors), chromatic_number=bad.result.chi)
    else:  # chi-slow-grow
        _expect(obj, GraphColoring, prop)
        if obj.k != 2:
            raise UsageError("chi-slow-grow needs a graph file")
        res = verify_chi_slow_grow(obj, samples=1000 if args.samples is None else args.samples,
                                   max_size=args.max_size, seed=args.seed, progress=progress)
        report.update(
            exhaustive={str(k): v for k, v in res.exhaustive_checked.items()},
            exhaustive_max_colors={str(k): v for k, v in res.exhaustive_max_colors.items()},
            sampled=res.sampled, independent_sets_checked=res.independent_sets_checked,
            sampled_max_ratio=round(res.sampled_max_ratio, 6),
        )
        if not res.ok:
            report.update(holds=False, failures=[[kind, list(X)] for kind, X in res.failures[:10]])
    holds = report.setdefault("holds", True)
    return (EXIT_OK if holds else EXIT_VIOLATED), report


# ---------------------------------------------------------------- witness


def cmd_witness(args, out: TextIO, err: TextIO) -> tuple[int, dict]:
    r = args.r
    report: dict[str, Any] = {"command": "witness", "method": args.method, "r": r}
    if args.inp is None:
        _need(args, "seed")
        report["seed"] = args.seed
    rng = np.random.default_rng(args.seed)
    try:
        if args.method == "shelah":
            if args.inp:
                grid = _load(args.inp)
                _expect(grid, GridColoring, "shelah")
            else:
                grid = GridColoring.random(r + 1, args.n or shelah_bound(r), r, rng)
            rect = shelah_witness(grid, r)
            report.update(rows=grid.m, columns=grid.n, rectangle=list(rect.one_based()),
                          reverified=bool(grid.is_alternating(rect)))
        else:
            _need(args, "p", "q")
            if args.inp:
                c = _load(args.inp)
                _expect(c, GraphColoring, "stepdown")
            else:
                n = args.n or stepdown_bound(args.k, r, args.p, args.q)
                c = GraphColoring.random(n, args.k, r, rng)
            bad = stepdown_witness(c, r, args.p, args.q)
            report.update(vertices_total=c.n, k=c.k, p=args.p, q=args.q,
                          vertices=_one_based(bad.vertices), color_count=bad.color_count,
                          degenerate=bad.degenerate, reverified=True)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK, report


# ---------------------------------------------------------------- solve


def _solve_report(res: SearchResult) -> dict[str, Any]:
    rep: dict[str, Any] = {
        "value": res.value,
        "bracket": [res.bracket[0], res.bracket[1]],
        "nodes": res.stats.nodes,
        "exhausted": [
            {"parameter": e.parameter, "nodes": e.nodes, "brute_force": e.brute_force}
            for e in res.exhausted
        ],
    }
    return rep


def cmd_solve(args, out: TextIO, err: TextIO) -> tuple[int, dict]:
    resume = None
    if args.resume:
        try:
            resume = Checkpoint.loads(Path(args.resume).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.resume}: {exc.strerror}") from exc
    progress = _Progress(f"solve {args.solver}", err)
    report: dict[str, Any] = {"command": "solve", "solver": args.solver}
    try:
        if args.solver == "g":
            _need(args, "m", "n", "r_max")
            report.update(m=args.m, n=args.n)
            res = exact_g(args.m, args.n, args.r_max, args.budget, progress, resume)
        elif args.solver == "f":
            _need(args, "n", "p", "q", "r_max")
            report.update(n=args.n, k=args.k, p=args.p, q=args.q)
            res = exact_f(args.n, args.p, args.q, args.k, args.r_max, args.budget, progress, resume)
        else:
            _need(args, "r", "n_max")
            report.update(r=args.r)
            res = exact_G(args.r, args.n_max, args.budget, progress, resume)
    except BudgetExhausted as exc:
        report.update(status="budget-exhausted", lower=exc.lower, nodes=exc.checkpoint.nodes)
        _save_checkpoint(args, exc.checkpoint, report)
        return EXIT_BUDGET, report
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report.update(_solve_report(res))
    if res.certificate is not None and args.out:
        fileformat.write(res.certificate, args.out)
        report["certificate"] = args.out
    if res.interrupted is not None:
        report["status"] = "budget-exhausted"
        _save_checkpoint(args, res.interrupted, report)
        return EXIT_BUDGET, report
    report["status"] = "solved" if res.value is not None else "undecided"
    return EXIT_OK, report


def _save_checkpoint(args, cp: Checkpoint, report: dict) -> None:
    if args.checkpoint:
        Path(args.checkpoint).write_text(cp.dumps())
        report["checkpoint"] = args.checkpoint


# ---------------------------------------------------------------- entry points


def _render(report: dict[str, Any], as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2) + "\n"
    lines = []
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        elif value is None:
            value = "-"
        elif isinstance(value, (bool, np.bool_)):
            value = "yes" if value else "no"
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "witness": cmd_witness, "solve": cmd_solve}


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        code, report = COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except fileformat.FormatError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    if report:
        out.write(_render(report, args.json))
    return code


def main() -> None:
    sys.exit(run())
