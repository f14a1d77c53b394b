from __future__ import annotations

import random
from itertools import combinations

import pytest
from conftest import complete, path, uniform

from antifactor.generate import random_instance
from antifactor.graph import DegreeConstraints, Instance, MultiGraph, is_solution
from antifactor.oracle import BudgetExceeded, enumerate_solutions


def test_triangle_covers(k3_cover):
    rep = enumerate_solutions(k3_cover)
    assert rep.counts_by_size == (0, 0, 3, 1)
    assert rep.total == 4


def test_path_cover_is_unique():
    rep = enumerate_solutions(uniform(path(3), [0]))
    assert rep.total == 1 and rep.min_size == rep.max_size == 2
    assert rep.witness == frozenset({0, 1})


def test_k4_perfect_matchings(k4_matching):
    rep = enumerate_solutions(k4_matching)
    assert rep.counts_by_size == (0, 0, 3, 0, 0, 0, 0)


def test_infeasible_has_no_extremes():
    rep = enumerate_solutions(uniform(MultiGraph(1, ()), [0]))
    assert rep.total == 0 and rep.min_size is None and rep.witness is None


def test_budget_refusal():
    with pytest.raises(BudgetExceeded):
        enumerate_solutions(uniform(complete(8), [1]), edge_budget_limit=20)


def _naive(inst):
    counts = [0] * (inst.m + 1)
    for s in range(inst.m + 1):
        for S in combinations(range(inst.m), s):
            counts[s] += is_solution(inst, S)
    return tuple(counts)


@pytest.mark.parametrize("seed", range(40))
def test_gray_code_matches_plain_enumeration(seed):
    inst = random_instance(random.Random(seed), max_m=9)
    rep = enumerate_solutions(inst)
    assert rep.counts_by_size == _naive(inst)
    if rep.witness is not None:
        assert is_solution(inst, rep.witness) and len(rep.witness) == rep.max_size


@pytest.mark.parametrize("seed", range(20))
def test_dropping_an_exclusion_never_hurts(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    lists = [list(x) for x in inst.constraints.excluded]
    nonempty = [v for v, x in enumerate(lists) if x]
    if not nonempty:
        return
    v = rng.choice(nonempty)
    lists[v].remove(rng.choice(lists[v]))
    looser = Instance(inst.graph, DegreeConstraints(tuple(map(tuple, lists))))
    assert enumerate_solutions(looser).total >= enumerate_solutions(inst).total
