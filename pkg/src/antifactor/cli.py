"""Command-line front end: ``antifactor solve|analyze|gen|selftest``."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import countdp, repset, setanalysis
from .generate import erdos_renyi, grid, grid_path_decomposition, random_constraints
from .graph import (
    DegreeConstraints,
    InputError,
    Instance,
    format_constraints,
    format_graph,
    parse_constraints,
    parse_graph,
)
from .oracle import DEFAULT_BUDGET, BudgetExceeded, enumerate_solutions
from .selftest import run_selftest
from .treedec import format_td, heuristic_decomposition, make_nice, parse_td, validate

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

COUNT_ALGOS = {"brute", "dp", "dp-zeta"}
WITNESS_ALGOS = {"brute", "repset"}


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def load_instance(args) -> Instance:
    graph = parse_graph(Path(args.graph).read_text())
    if args.constraints:
        cons = parse_constraints(Path(args.constraints).read_text(), graph.n)
    else:
        cons = DegreeConstraints.uniform(graph.n, ())
    return Instance(graph, cons)


def _decomposition(args, inst):
    if args.td:
        td, n = parse_td(Path(args.td).read_text())
        if n != inst.n:
            raise InputError(f"decomposition declares {n} vertices, graph has {inst.n}")
        bad = validate(td, inst.graph)
        if bad is not None:
            raise InputError(f"invalid tree decomposition: {bad}")
        source = "file"
    else:
        td = heuristic_decomposition(inst.graph)
        source = "min-fill"
    return td, make_nice(td, inst.graph), source


def solve(args) -> tuple[dict, int]:
    """Dispatch one solve request; returns the report and the exit code."""
    if args.mode == "count" and args.algo not in COUNT_ALGOS:
        raise InputError(f"--mode count requires --algo in {sorted(COUNT_ALGOS)}")
    if args.witness and args.algo not in WITNESS_ALGOS:
        raise InputError(f"--witness requires --algo in {sorted(WITNESS_ALGOS)}")
    if args.mode == "decide" and args.size is None:
        raise InputError("--mode decide requires --size")
    inst = load_instance(args)
    report: dict = {"mode": args.mode, "algo": args.algo, "n": inst.n, "m": inst.m}
    witness = None

    if args.algo == "brute":
        oracle = enumerate_solutions(inst, args.budget)
        counts = list(oracle.counts_by_size)
        feasible = [s for s, c in enumerate(counts) if c]
    else:
        td, ntd, source = _decomposition(args, inst)
        report["width"] = td.width
        report["decomposition"] = source
        if args.algo in ("dp", "dp-zeta"):
            join = "naive" if args.algo == "dp" else "zeta"
            counts = countdp.run(inst, ntd, join, transform=args.transform)
            feasible = [s for s, c in enumerate(counts) if c]
        else:
            counts = None
            target = args.size if args.mode == "decide" else None
            if target is not None and not 0 <= target <= inst.m:
                feasible = []
                result = None
            else:
                result = repset.run(inst, ntd, target=target, keep_tables=args.witness)
                feasible = result.feasible_sizes()

    if args.mode == "count":
        report["counts"] = {str(s): str(c) for s, c in enumerate(counts) if c}
        report["total"] = str(sum(counts))
        answer_size = None
        code = EXIT_OK
    elif args.mode == "decide":
        yes = args.size in feasible
        report["answer"] = "yes" if yes else "no"
        answer_size = args.size if yes else None
        code = EXIT_OK if yes else EXIT_NO
    else:
        answer_size = (min(feasible) if args.mode == "min" else max(feasible)) if feasible else None
        report["answer"] = "none" if answer_size is None else answer_size
        code = EXIT_OK if answer_size is not None else EXIT_NO

    if args.witness and answer_size is not None:
        if args.algo == "brute":
            witness = _brute_witness(inst, answer_size, args.budget)
        else:
            witness = result.witness(answer_size)
        report["witness"] = [[u + 1, v + 1] for u, v in (inst.graph.edges[e] for e in sorted(witness))]
    return report, code


def _brute_witness(inst, size, budget):
    """Lexicographically least solution of the given size."""
    from itertools import combinations

    from .graph import is_solution

    for S in combinations(range(inst.m), size):
        if is_solution(inst, S):
            return frozenset(S)
    raise AssertionError("oracle reported a size with no solution")


def _emit(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return
    for key, val in report.items():
        if key == "counts":
            for s, c in val.items():
                out.write(f"{s} {c}\n")
        elif key == "witness":
            for u, v in val:
                out.write(f"w {u} {v}\n")
        else:
            out.write(f"{key}: {val}\n")


def analyze(args) -> tuple[dict, int]:
    ex = args.ex
    prof = setanalysis.profile(ex)
    report = {
        "ex": ",".join(map(str, prof.excluded)),
        "maxgap_complement": prof.maxgap_complement,
        "ap_length": prof.ap_length,
        "ap_start": prof.ap_start,
        "ap_difference": prof.ap_difference,
        "him_lower_bound": prof.him_lower_bound,
        "tags": " ".join(prof.tags),
    }
    him = prof.him
    if args.search_bound is not None:
        found = setanalysis.max_him_exhaustive(ex, args.search_bound, len(ex) + 2)
        report["him_search_bound"] = args.search_bound
        report["him_search_size"] = len(found)
        if len(found) > len(him):
            him = found
    report["him"] = [list(p) for p in him.pairs]
    if args.k and len(prof.him) >= 2:
        hard = setanalysis.build_hard_repset(ex, prof.him, args.k)
        report["hard_repset_size"] = len(hard.vectors)
        report["hard_repset_index_sum"] = hard.index_sum
    return report, EXIT_OK


def _emit_analysis(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return
    for key, val in report.items():
        if key == "him":
            for a, b in val:
                out.write(f"({a}, {b})\n")
        else:
            out.write(f"{key}: {'-' if val is None else val}\n")


def gen(args) -> tuple[dict, int]:
    rng = random.Random(args.seed)
    if args.family == "grid":
        g = grid(args.rows, args.cols)
    else:
        g = erdos_renyi(args.n, args.p, rng)
    cons = random_constraints(
        g.n, rng, max_ex=args.max_ex, ex_size=args.ex_size,
        uniform=args.uniform_ex,
    )
    out = Path(args.out)
    files = {out.with_suffix(".graph"): format_graph(g), out.with_suffix(".ex"): format_constraints(cons)}
    if args.family == "grid":
        files[out.with_suffix(".td")] = format_td(grid_path_decomposition(args.rows, args.cols), g.n)
    for path, text in files.items():
        path.write_text(text)
    return {"files": " ".join(str(p) for p in files), "n": g.n, "m": g.m}, EXIT_OK


def selftest(args) -> tuple[dict, int]:
    if args.trials == 0:
        print("warning: zero trials requested; nothing checked", file=sys.stderr)
    results = run_selftest(args.trials, args.seed, inject_fault=args.inject_fault, workers=args.parallel)
    report = {}
    for res in results:
        report[res.name] = f"{'pass' if res.ok else 'FAIL'} ({res.trials} trials)"
        for msg in res.failures[:5]:
            print(f"{res.name}: {msg}", file=sys.stderr)
    ok = all(r.ok for r in results)
    report["result"] = "pass" if ok else "FAIL"
    return report, EXIT_OK if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="antifactor", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("--graph", required=True)
    s.add_argument("--constraints")
    s.add_argument("--td", help="PACE .td decomposition (default: min-fill heuristic)")
    s.add_argument("--mode", choices=["decide", "count", "min", "max"], default="count")
    s.add_argument("--algo", choices=["brute", "dp", "dp-zeta", "repset"], default="dp-zeta")
    s.add_argument("--size", type=int)
    s.add_argument("--witness", action="store_true")
    s.add_argument("--transform", action="store_true", help="NTT inner convolution for dp-zeta joins")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle edge cap")
    s.add_argument("--parallel", type=int, default=1, help="accepted for uniformity; solve is sequential")
    s.add_argument("--format", choices=["text", "json"], default="text")

    a = sub.add_parser("analyze", help="analyze an excluded-degree set")
    a.add_argument("--ex", type=_int_list, required=True, help="e.g. 0,2,3")
    a.add_argument("--search-bound", type=int, help="label bound for exhaustive matching search")
    a.add_argument("--k", type=int, default=0, help="dimension of the hard witness set")
    a.add_argument("--format", choices=["text", "json"], default="text")

    g = sub.add_parser("gen", help="write a random instance")
    g.add_argument("--family", choices=["er", "grid"], default="er")
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--p", type=float, default=0.4)
    g.add_argument("--rows", type=int, default=3)
    g.add_argument("--cols", type=int, default=3)
    g.add_argument("--max-ex", type=int, default=3)
    g.add_argument("--ex-size", type=int, default=2)
    g.add_argument("--uniform-ex", type=_int_list)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="path prefix; writes .graph, .ex (and .td for grids)")
    g.add_argument("--format", choices=["text", "json"], default="text")

    t = sub.add_parser("selftest", help="run differential cross-checks")
    t.add_argument("--trials", type=int, default=30)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--parallel", type=int, default=1, help="worker processes")
    t.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    t.add_argument("--format", choices=["text", "json"], default="text")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "solve":
            report, code = solve(args)
            _emit(report, args.format)
        elif args.command == "analyze":
            report, code = analyze(args)
            _emit_analysis(report, args.format)
        elif args.command == "gen":
            report, code = gen(args)
            _emit(report, args.format)
        else:
            report, code = selftest(args)
            _emit(report, args.format)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
