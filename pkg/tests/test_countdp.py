from __future__ import annotations

import random

import pytest
from conftest import complete, uniform

from antifactor import countdp
from antifactor.countdp import CountTable, forget, introduce_edge, introduce_vertex, join_naive, join_zeta, leaf_table
from antifactor.generate import random_instance
from antifactor.graph import MultiGraph
from antifactor.oracle import enumerate_solutions
from antifactor.treedec import TreeDecomposition, heuristic_decomposition, make_nice


def table(M, bag, counts):
    return CountTable.from_counts(M, bag, counts)


def test_leaf_and_introduce_vertex():
    assert leaf_table().counts() == {((), 0): 1}
    assert leaf_table().counts() == leaf_table().counts()
    t = introduce_vertex(leaf_table(), 4)
    assert t.bag == (4,) and t.counts() == {((0,), 0): 1}


def test_introduce_edge_select_or_skip():
    base = table(1, (0, 1), {((0, 0), 0): 1})
    assert introduce_edge(base, 0, 1).counts() == {((0, 0), 0): 1, ((1, 1), 1): 1}
    base0 = table(0, (0, 1), {((0, 0), 0): 1})
    assert introduce_edge(base0, 0, 1).counts() == {((0, 0), 0): 1, ((1, 1), 1): 1}  # 1 is TOP when M = 0


def test_forget_examples():
    t = table(0, (0,), {((0,), 0): 1, ((1,), 1): 1})
    assert forget(t, 0, [0]).counts() == {((), 1): 1}
    assert forget(t, 0, []).counts() == {((), 0): 1, ((), 1): 1}
    t = table(1, (0,), {((0,), 0): 1, ((1,), 1): 1, ((2,), 2): 1})
    assert forget(t, 0, [0, 1]).counts() == {((), 2): 1}


JOIN_EXAMPLES = [
    (table(0, (0,), {((0,), 0): 1}), table(0, (0,), {((0,), 0): 1}), {((0,), 0): 1}),
    (table(1, (0,), {((1,), 1): 1}), table(1, (0,), {((1,), 1): 1}), {((2,), 2): 1}),
    (table(1, (0,), {((2,), 2): 2}), table(1, (0,), {((0,), 0): 3}), {((2,), 2): 6}),
]


@pytest.mark.parametrize("c1, c2, want", JOIN_EXAMPLES)
def test_join_examples(c1, c2, want):
    assert join_naive(c1, c2).counts() == want
    assert join_zeta(c1, c2).counts() == want
    assert join_zeta(c1, c2, transform=True).counts() == want


def test_join_rejects_mismatched_bags():
    with pytest.raises(ValueError):
        join_naive(table(0, (0,), {}), table(0, (1,), {}))


def test_oplus_saturates():
    assert countdp.oplus(1, 1, 2) == 2
    assert countdp.oplus(2, 1, 2) == 3
    assert countdp.oplus(3, 0, 2) == 3
    assert countdp.saturating_increment(2, 2) == 3
    assert countdp.saturating_increment(3, 2) == 3


def test_zeta_is_upward_sum():
    t = table(1, (0,), {((0,), 0): 1, ((1,), 0): 2, ((2,), 1): 5})
    z = countdp.zeta(t).counts()
    assert z[((0,), 0)] == 1 and z[((2,), 0)] == 3 and z[((2,), 1)] == 5
    assert countdp.mobius(countdp.zeta(t)).counts() == t.counts()
    assert countdp.zeta(countdp.mobius(t)).counts() == t.counts()


def test_run_examples(k3_cover):
    td = TreeDecomposition([{0, 1, 2}])
    ntd = make_nice(td, k3_cover.graph)
    assert countdp.run(k3_cover, ntd, "naive") == [0, 0, 3, 1]
    assert countdp.run(k3_cover, ntd, "zeta") == [0, 0, 3, 1]
    free = uniform(MultiGraph(3, ()), [1])
    assert countdp.run(free, make_nice(heuristic_decomposition(free.graph), free.graph)) == [1]
    lonely = uniform(MultiGraph(1, ()), [0])
    assert countdp.run(lonely, make_nice(heuristic_decomposition(lonely.graph), lonely.graph)) == [0]


def test_unknown_join_mode(k3_cover):
    with pytest.raises(ValueError):
        countdp.run(k3_cover, make_nice(TreeDecomposition([{0, 1, 2}]), k3_cover.graph), "fast")


def test_tables_stay_within_state_space():
    inst = uniform(complete(5), [0, 2])
    ntd = make_nice(heuristic_decomposition(inst.graph), inst.graph)
    seen = []
    countdp.run(inst, ntd, on_table=lambda i, t: seen.append(len(t) <= countdp.state_space_bound(2, len(t.bag))))
    assert seen and all(seen)


@pytest.mark.parametrize("seed", range(30))
def test_matches_oracle_with_joins(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    td = heuristic_decomposition(inst.graph)
    ntd = make_nice(td, inst.graph, root=rng.randrange(len(td.bags)))
    expect = list(enumerate_solutions(inst).counts_by_size)
    assert countdp.run(inst, ntd, "naive") == expect
    assert countdp.run(inst, ntd, "zeta") == expect
