"""Decision and optimization via partial-solution sets pruned to representative sets.

A partial solution at a node is summarised by its degree vector on the bag.
After every node operation each size class is replaced by a subset whose
Vandermonde tensor vectors form the lexicographically first column basis;
with rank ``ex + 1`` that subset preserves, for every extension, whether
some stored vector is compatible with it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as _field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .graph import InputError, Instance, is_solution
from .ntt import is_prime
from .treedec import (
    FORGET,
    INTRODUCE_EDGE,
    INTRODUCE_VERTEX,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    check_nice,
)

Vector = tuple  # degree vector aligned with a sorted bag


def smallest_prime_above(x: int) -> int:
    p = x + 1
    while not is_prime(p):
        p += 1
    return p


@dataclass(frozen=True)
class PrimeField:
    """Prime ``p`` together with the value universe ``[0, universe]`` it must separate."""

    p: int
    universe: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p <= self.universe + 1:
            raise ValueError(f"field too small: p={self.p} must exceed universe size {self.universe + 1}")

    @classmethod
    def for_universe(cls, universe: int) -> PrimeField:
        return cls(smallest_prime_above(universe + 1), universe)


def vandermonde(r: int, field: PrimeField) -> np.ndarray:
    """``r x (universe + 1)`` matrix; column ``u`` is ``(1, u, ..., u^(r-1)) mod p``."""
    p = field.p
    cols = np.arange(field.universe + 1, dtype=np.int64)
    rows = [np.ones_like(cols)]
    for _ in range(1, r):
        rows.append(rows[-1] * cols % p)
    return np.stack(rows) if r else np.zeros((0, len(cols)), dtype=np.int64)


def tensor_vectors(R: Sequence[Vector], r: int, field: PrimeField) -> np.ndarray:
    """Row ``S`` holds ``prod_i V[I_j[i], S[i]]`` for ``I_j`` running over ``[r]^k`` lexicographically."""
    V = vandermonde(r, field)
    p = field.p
    k = len(R[0]) if R else 0
    X = np.ones((len(R), 1), dtype=np.int64)
    if not R:
        return np.zeros((0, r ** k), dtype=np.int64)
    A = np.asarray(R, dtype=np.int64).reshape(len(R), k)
    for i in range(k):
        col = V[:, A[:, i]].T  # |R| x r
        X = (X[:, :, None] * col[:, None, :]).reshape(len(R), -1) % p
    return X


def first_basis(X: np.ndarray, p: int) -> list[int]:
    """Indices of the earliest rows of ``X`` forming a basis of its row space mod ``p``."""
    n, D = X.shape
    basis = np.zeros((0, D), dtype=np.int64)
    pivots: list[int] = []
    keep: list[int] = []
    for idx in range(n):
        if len(pivots) == D:
            break
        v = X[idx] % p
        if pivots:
            v = (v - v[pivots] @ basis) % p
        nz = np.flatnonzero(v)
        if not nz.size:
            continue
        piv = int(nz[0])
        v = v * pow(int(v[piv]), p - 2, p) % p
        if pivots:
            basis = (basis - np.outer(basis[:, piv], v)) % p
        basis = np.vstack([basis, v])
        pivots.append(piv)
        keep.append(idx)
    return keep


def compute_representative(R: Iterable[Vector], r: int, field: PrimeField) -> list[Vector]:
    """Subset of ``R`` (in input order) that ``k``-``(r-1)``-represents ``R``.

    At most ``r**k`` vectors are returned.
    """
    R = [tuple(a) for a in R]
    if r < 1:
        raise ValueError("rank must be at least 1")
    if not R:
        return []
    if any(not 0 <= x <= field.universe for a in R for x in a):
        raise ValueError(f"vector entries must lie in [0, {field.universe}]")
    X = tensor_vectors(R, r, field)
    return [R[i] for i in first_basis(X, field.p)]


def compatible(a: Vector, b: Vector, excluded: Sequence[Iterable[int]]) -> bool:
    """``a`` and ``b`` combine without hitting any excluded degree."""
    return all(x + y not in ex for x, y, ex in zip(a, b, excluded))


def q_compatible(a: Vector, blockers: Sequence[Iterable[int]]) -> bool:
    return all(x not in B for x, B in zip(a, blockers))


# ---------------------------------------------------------------------------
# partial-solution tables
# ---------------------------------------------------------------------------


@dataclass
class PartialSolutionSet:
    """Per size ``s``: degree vectors mapped to a back-pointer (or ``None``)."""

    bag: tuple[int, ...]
    sets: dict[int, dict[Vector, object]] = _field(default_factory=dict)

    def vectors(self, s: int) -> set[Vector]:
        return set(self.sets.get(s, ()))

    def as_sets(self) -> dict[int, set[Vector]]:
        return {s: set(d) for s, d in self.sets.items() if d}


def leaf() -> PartialSolutionSet:
    return PartialSolutionSet((), {0: {(): None}})


def introduce_vertex(child: PartialSolutionSet, v: int) -> PartialSolutionSet:
    if v in child.bag:
        raise InputError(f"vertex {v} already in bag {child.bag}")
    bag = tuple(sorted(child.bag + (v,)))
    i = bag.index(v)
    sets = {s: {a[:i] + (0,) + a[i:]: (s, a) for a in d} for s, d in child.sets.items()}
    return PartialSolutionSet(bag, sets)


def introduce_edge(child: PartialSolutionSet, u: int, v: int, cap: int) -> PartialSolutionSet:
    try:
        i, j = child.bag.index(u), child.bag.index(v)
    except ValueError:
        raise InputError(f"edge ({u}, {v}) endpoint not in bag {child.bag}") from None
    sets: dict[int, dict[Vector, object]] = {s: {a: (s, a, False) for a in d} for s, d in child.sets.items()}
    for s, d in child.sets.items():
        out = sets.setdefault(s + 1, {})
        for a in d:
            b = list(a)
            b[i] = min(b[i] + 1, cap)
            b[j] = min(b[j] + 1, cap)
            out.setdefault(tuple(b), (s, a, True))
    return PartialSolutionSet(child.bag, sets)


def forget(child: PartialSolutionSet, v: int, excluded: Iterable[int]) -> PartialSolutionSet:
    if v not in child.bag:
        raise InputError(f"vertex {v} not in bag {child.bag}")
    i = child.bag.index(v)
    excluded = set(excluded)
    sets = {}
    for s, d in child.sets.items():
        out: dict[Vector, object] = {}
        for a in d:
            if a[i] not in excluded:
                out.setdefault(a[:i] + a[i + 1:], (s, a))
        if out:
            sets[s] = out
    return PartialSolutionSet(child.bag[:i] + child.bag[i + 1:], sets)


def join(c1: PartialSolutionSet, c2: PartialSolutionSet, cap: int) -> PartialSolutionSet:
    if c1.bag != c2.bag:
        raise InputError(f"join of mismatched bags {c1.bag} / {c2.bag}")
    sets: dict[int, dict[Vector, object]] = {}
    for s1, d1 in c1.sets.items():
        for s2, d2 in c2.sets.items():
            out = sets.setdefault(s1 + s2, {})
            for a1 in d1:
                for a2 in d2:
                    a = tuple(min(x + y, cap) for x, y in zip(a1, a2))
                    out.setdefault(a, (s1, a1, s2, a2))
    return PartialSolutionSet(c1.bag, sets)


def prune(
    table: PartialSolutionSet,
    rank: int,
    field: PrimeField,
    always: bool = False,
    on_prune: Optional[Callable[[int, set, set], None]] = None,
) -> PartialSolutionSet:
    """Replace every size class by a representative subset (sorted-order first basis)."""
    bound = rank ** len(table.bag)
    sets = {}
    for s, d in table.sets.items():
        if len(d) > bound or always:
            kept = compute_representative(sorted(d), rank, field)
            new = {a: d[a] for a in kept}
        else:
            new = d
        if on_prune is not None:
            on_prune(s, set(d), set(new))
        if new:
            sets[s] = new
    return PartialSolutionSet(table.bag, sets)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def universe_cap(inst: Instance) -> int:
    """Degree entries saturate here; anything above the largest excluded degree is equivalent."""
    return max(inst.n, inst.constraints.max_ex + 1)


@dataclass
class RepsetRun:
    inst: Instance
    ntd: NiceTreeDecomposition
    tables: dict[int, PartialSolutionSet]
    rank: int
    field: PrimeField

    @property
    def root(self) -> PartialSolutionSet:
        return self.tables[self.ntd.root]

    def feasible_sizes(self) -> list[int]:
        return sorted(s for s, d in self.root.sets.items() if () in d)

    def witness(self, s: int) -> Optional[frozenset[int]]:
        """Re-trace back-pointers from the root; requires ``keep_tables``."""
        if () not in self.root.sets.get(s, {}):
            return None
        edges = set()
        stack = [(self.ntd.root, s, ())]
        while stack:
            idx, size, vec = stack.pop()
            nd = self.ntd.nodes[idx]
            bp = self.tables[idx].sets[size][vec]
            if nd.kind == LEAF:
                continue
            if nd.kind == JOIN:
                s1, a1, s2, a2 = bp
                stack.append((nd.children[0], s1, a1))
                stack.append((nd.children[1], s2, a2))
            elif nd.kind == INTRODUCE_EDGE:
                cs, ca, took = bp
                if took:
                    edges.add(nd.edge)
                stack.append((nd.children[0], cs, ca))
            else:
                cs, ca = bp
                stack.append((nd.children[0], cs, ca))
        S = frozenset(edges)
        if len(S) != s or not is_solution(self.inst, S):
            raise RuntimeError(f"reconstructed witness {sorted(S)} failed validation")
        return S


def run(
    inst: Instance,
    ntd: NiceTreeDecomposition,
    *,
    target: Optional[int] = None,
    keep_tables: bool = False,
    always_prune: bool = False,
    schedule: str = "every",
    on_prune: Optional[Callable[[int, int, set, set], None]] = None,
) -> RepsetRun:
    """Run the pruned partial-solution DP.

    ``target`` restricts every node to sizes that can still reach it.
    ``schedule`` is ``"every"`` (prune after each node) or ``"forget-join"``.
    """
    if schedule not in ("every", "forget-join"):
        raise ValueError(f"unknown schedule {schedule!r}")
    bad = check_nice(ntd, inst.graph)
    if bad is not None:
        raise InputError(f"decomposition does not fit instance: {bad}")
    g, cons = inst.graph, inst.constraints
    cap = universe_cap(inst)
    field = PrimeField.for_universe(cap)
    rank = cons.ex + 1
    m = g.m

    edges_below = []
    for nd in ntd.nodes:
        cnt = sum(edges_below[c] for c in nd.children) + (nd.kind == INTRODUCE_EDGE)
        edges_below.append(cnt)

    tables: dict[int, PartialSolutionSet] = {}
    for idx, nd in enumerate(ntd.nodes):
        kids = [tables[c] if keep_tables else tables.pop(c) for c in nd.children]
        if nd.kind == LEAF:
            t = leaf()
        elif nd.kind == INTRODUCE_VERTEX:
            t = introduce_vertex(kids[0], nd.vertex)
        elif nd.kind == INTRODUCE_EDGE:
            t = introduce_edge(kids[0], *g.edges[nd.edge], cap)
        elif nd.kind == FORGET:
            t = forget(kids[0], nd.vertex, cons[nd.vertex])
        elif nd.kind == JOIN:
            t = join(kids[0], kids[1], cap)
        else:
            raise InputError(f"unknown node kind {nd.kind!r}")
        if target is not None:
            lo = target - (m - edges_below[idx])
            t.sets = {s: d for s, d in t.sets.items() if lo <= s <= target}
        if schedule == "every" or nd.kind in (FORGET, JOIN):
            hook = None
            if on_prune is not None:
                hook = lambda s, before, after, idx=idx: on_prune(idx, s, before, after)
            t = prune(t, rank, field, always=always_prune, on_prune=hook)
        tables[idx] = t
    return RepsetRun(inst, ntd, tables, rank, field)


def decide(inst: Instance, ntd: NiceTreeDecomposition, s: int, **kw) -> bool:
    """Is there a solution with exactly ``s`` edges?"""
    if not 0 <= s <= inst.m:
        return False
    return s in run(inst, ntd, target=s, **kw).feasible_sizes()


def find_solution(inst: Instance, ntd: NiceTreeDecomposition, s: int, **kw) -> Optional[frozenset[int]]:
    """A validated solution with exactly ``s`` edges, or ``None``."""
    if not 0 <= s <= inst.m:
        return None
    return run(inst, ntd, target=s, keep_tables=True, **kw).witness(s)


def minimize(inst: Instance, ntd: NiceTreeDecomposition, **kw) -> Optional[int]:
    sizes = run(inst, ntd, **kw).feasible_sizes()
    return sizes[0] if sizes else None


def maximize(inst: Instance, ntd: NiceTreeDecomposition, **kw) -> Optional[int]:
    sizes = run(inst, ntd, **kw).feasible_sizes()
    return sizes[-1] if sizes else None

