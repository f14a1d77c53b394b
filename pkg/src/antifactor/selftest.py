"""Differential cross-checks between the solvers and the brute-force oracle."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import countdp, repset, setanalysis
from .generate import random_instance
from .graph import is_solution
from .oracle import enumerate_solutions
from .treedec import heuristic_decomposition, make_nice


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _nice_for(inst, rng):
    td = heuristic_decomposition(inst.graph)
    return make_nice(td, inst.graph, root=rng.randrange(len(td.bags)))


def check_counting(seed: int, inject_fault: bool = False) -> list[str]:
    rng = random.Random(seed)
    inst = random_instance(rng)
    ntd = _nice_for(inst, rng)
    expect = list(enumerate_solutions(inst).counts_by_size)
    if inject_fault:
        expect[0] += 1
    errs = []
    for label, got in (
        ("naive", countdp.run(inst, ntd, "naive")),
        ("zeta", countdp.run(inst, ntd, "zeta")),
        ("zeta+ntt", countdp.run(inst, ntd, "zeta", transform=True)),
    ):
        if got != expect:
            errs.append(f"seed {seed}: count-dp/{label} {got} != oracle {expect}")
    return errs


def check_repset(seed: int) -> list[str]:
    rng = random.Random(seed)
    inst = random_instance(rng, ex_size=2)
    ntd = _nice_for(inst, rng)
    oracle = enumerate_solutions(inst)
    errs = []
    result = repset.run(inst, ntd, keep_tables=True)
    feasible = set(result.feasible_sizes())
    for s, c in enumerate(oracle.counts_by_size):
        if (s in feasible) != (c > 0):
            errs.append(f"seed {seed}: repset feasibility at s={s} disagrees with oracle count {c}")
        if s in feasible and not is_solution(inst, result.witness(s)):
            errs.append(f"seed {seed}: invalid witness at s={s}")
    if (min(feasible) if feasible else None) != oracle.min_size:
        errs.append(f"seed {seed}: min mismatch")
    if (max(feasible) if feasible else None) != oracle.max_size:
        errs.append(f"seed {seed}: max mismatch")
    return errs


def check_join(seed: int) -> list[str]:
    rng = random.Random(seed)
    M, k = rng.randint(0, 2), rng.randint(0, 3)

    def table():
        counts = {}
        for _ in range(rng.randint(0, 10)):
            f = tuple(rng.randint(0, M + 1) for _ in range(k))
            counts[(f, rng.randint(0, 6))] = rng.randint(1, 9)
        return countdp.CountTable.from_counts(M, range(k), counts)

    c1, c2 = table(), table()
    errs = []
    if countdp.join_zeta(c1, c2).counts() != countdp.join_naive(c1, c2).counts():
        errs.append(f"seed {seed}: join_zeta != join_naive")
    if countdp.mobius(countdp.zeta(c1)).counts() != c1.counts():
        errs.append(f"seed {seed}: mobius(zeta(c)) != c")
    return errs


def check_him(seed: int) -> list[str]:
    rng = random.Random(seed)
    ex = sorted(rng.sample(range(9), rng.randint(1, 4)))
    errs = []
    w = setanalysis.him_from_ap(ex)
    length = setanalysis.longest_ap(ex)[0]
    if not setanalysis.verify_him(w, ex) or len(w) != length + 1:
        errs.append(f"Ex={ex}: him_from_ap gave {w.pairs}")
    if len(w) >= 2:
        k = rng.randint(1, 3)
        hard = setanalysis.build_hard_repset(ex, w, k)
        field = repset.PrimeField.for_universe(max(max(v) for v in hard.vectors) + 1)
        rep = repset.compute_representative(sorted(hard.vectors), len(ex) + 1, field)
        if set(rep) != set(hard.vectors):
            errs.append(f"Ex={ex}, k={k}: hard witness set was shrunk")
    return errs


SUITES = {
    "counting": check_counting,
    "repset": check_repset,
    "join": check_join,
    "him": check_him,
}


def _run_one(args):
    name, seed, fault = args
    if name == "counting":
        return check_counting(seed, fault)
    return SUITES[name](seed)


def run_selftest(trials: int = 50, seed: int = 0, inject_fault: bool = False, workers: int = 1) -> list[SuiteResult]:
    results = []
    for name in SUITES:
        jobs = [(name, seed * 100003 + i, inject_fault and i == 0) for i in range(trials)]
        if workers > 1 and trials:
            with ProcessPoolExecutor(workers) as pool:
                outs = list(pool.map(_run_one, jobs))
        else:
            outs = [_run_one(j) for j in jobs]
        res = SuiteResult(name, trials)
        for errs in outs:
            res.failures.extend(errs)
        results.append(res)
    return results
