"""Exact solution counting by size over a nice tree decomposition.

States per bag vertex are degrees ``0..M`` plus a saturated state ``TOP``
(encoded ``M + 1``) meaning "degree above M", where ``M`` is the largest
excluded degree in the instance. Every table maps a state vector
(aligned with the node's sorted bag) to a polynomial in the solution
size ``s``, stored as a list of exact integer coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional

from .graph import InputError, Instance
from .treedec import (
    FORGET,
    INTRODUCE_EDGE,
    INTRODUCE_VERTEX,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    check_nice,
)

Poly = list  # coefficient list indexed by size s


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, x in enumerate(b):
        out[i] += x
    return out


def psub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = a + [0] * (n - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return out


def pmul(a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def ptrim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


@dataclass
class CountTable:
    """Sparse map ``state vector -> size polynomial`` for one node."""

    M: int
    bag: tuple[int, ...]
    entries: dict[tuple[int, ...], Poly] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return self.M + 1

    @classmethod
    def from_counts(cls, M: int, bag: Iterable[int], counts: Mapping[tuple[tuple[int, ...], int], int]):
        """Build from ``{(state, s): count}``."""
        t = cls(M, tuple(bag))
        for (f, s), c in counts.items():
            f = tuple(f)
            if len(f) != len(t.bag) or any(not 0 <= x <= M + 1 for x in f):
                raise ValueError(f"bad state {f} for bag {t.bag} and M={M}")
            poly = t.entries.setdefault(f, [])
            poly.extend([0] * (s + 1 - len(poly)))
            poly[s] += c
        t.normalize()
        return t

    def counts(self) -> dict[tuple[tuple[int, ...], int], int]:
        return {(f, s): c for f, p in self.entries.items() for s, c in enumerate(p) if c}

    def normalize(self) -> CountTable:
        for f in list(self.entries):
            if not ptrim(self.entries[f]):
                del self.entries[f]
        return self

    def __len__(self):
        return len(self.entries)

    def total(self) -> int:
        return sum(sum(p) for p in self.entries.values())


def oplus(u: int, v: int, M: int) -> int:
    top = M + 1
    if u == top or v == top or u + v > M:
        return top
    return u + v


def saturating_increment(d: int, M: int) -> int:
    return d + 1 if d + 1 <= M else M + 1


def leaf_table(M: int = 0) -> CountTable:
    return CountTable(M, (), {(): [1]})


def introduce_vertex(child: CountTable, v: int) -> CountTable:
    if v in child.bag:
        raise InputError(f"vertex {v} already in bag {child.bag}")
    bag = tuple(sorted(child.bag + (v,)))
    i = bag.index(v)
    entries = {f[:i] + (0,) + f[i:]: p[:] for f, p in child.entries.items()}
    return CountTable(child.M, bag, entries)


def introduce_edge(child: CountTable, u: int, v: int) -> CountTable:
    """Each partial solution either skips the edge or takes it (``s + 1``)."""
    try:
        i, j = child.bag.index(u), child.bag.index(v)
    except ValueError:
        raise InputError(f"edge ({u}, {v}) endpoint not in bag {child.bag}") from None
    M = child.M
    out = {f: p[:] for f, p in child.entries.items()}
    for f, p in child.entries.items():
        g = list(f)
        g[i] = saturating_increment(g[i], M) if g[i] <= M else g[i]
        g[j] = saturating_increment(g[j], M) if g[j] <= M else g[j]
        g = tuple(g)
        shifted = [0] + p
        out[g] = padd(out[g], shifted) if g in out else shifted
    return CountTable(M, child.bag, out)


def forget(child: CountTable, v: int, excluded: Iterable[int]) -> CountTable:
    """Keep branches whose degree at ``v`` is allowed; TOP is never excluded."""
    if v not in child.bag:
        raise InputError(f"vertex {v} not in bag {child.bag}")
    i = child.bag.index(v)
    excluded = set(excluded)
    out: dict[tuple[int, ...], Poly] = {}
    for f, p in child.entries.items():
        d = f[i]
        if d <= child.M and d in excluded:
            continue
        g = f[:i] + f[i + 1:]
        out[g] = padd(out[g], p) if g in out else p[:]
    return CountTable(child.M, child.bag[:i] + child.bag[i + 1:], out).normalize()


def _check_join(c1: CountTable, c2: CountTable):
    if c1.bag != c2.bag or c1.M != c2.M:
        raise InputError(f"join of mismatched tables: bags {c1.bag} / {c2.bag}")


def join_naive(c1: CountTable, c2: CountTable) -> CountTable:
    _check_join(c1, c2)
    M = c1.M
    out: dict[tuple[int, ...], Poly] = {}
    for f1, p1 in c1.entries.items():
        for f2, p2 in c2.entries.items():
            f = tuple(oplus(a, b, M) for a, b in zip(f1, f2))
            prod = pmul(p1, p2)
            out[f] = padd(out[f], prod) if f in out else prod
    return CountTable(M, c1.bag, out).normalize()


# ---------------------------------------------------------------------------
# zeta / Moebius transforms over the order "d <= TOP, d <= d"
# ---------------------------------------------------------------------------


def zeta(table: CountTable) -> CountTable:
    """``zeta(c)(f) = sum of c[g]`` over ``g`` agreeing with ``f`` off the TOP coordinates of ``f``."""
    top = table.top
    cur = {f: p[:] for f, p in table.entries.items()}
    for i in range(len(table.bag)):
        nxt = {f: p[:] for f, p in cur.items()}
        for f, p in cur.items():
            if f[i] != top:
                g = f[:i] + (top,) + f[i + 1:]
                nxt[g] = padd(nxt[g], p) if g in nxt else p[:]
        cur = nxt
    return CountTable(table.M, table.bag, cur).normalize()


def mobius(table: CountTable) -> CountTable:
    top = table.top
    cur = {f: p[:] for f, p in table.entries.items()}
    for i in range(len(table.bag)):
        nxt = {f: p[:] for f, p in cur.items()}
        for f, p in cur.items():
            if f[i] != top:
                g = f[:i] + (top,) + f[i + 1:]
                nxt[g] = psub(nxt[g], p) if g in nxt else psub([], p)
        cur = nxt
    return CountTable(table.M, table.bag, cur).normalize()


def _norm_tracked_convolution(a1, a2, k: int, M: int):
    """Cyclic convolution mod ``M + 1`` per coordinate, ordinary in norm and size.

    ``a1``/``a2`` map a TOP-free state ``f`` to its size polynomial; the norm
    index is ``sum(f)``. Returns ``{(f, F): poly}``.
    """
    q = M + 1
    out: dict[tuple[tuple[int, ...], int], Poly] = {}
    for f1, p1 in a1.items():
        F1 = sum(f1)
        for f2, p2 in a2.items():
            key = (tuple((x + y) % q for x, y in zip(f1, f2)), F1 + sum(f2))
            prod = pmul(p1, p2)
            out[key] = padd(out[key], prod) if key in out else prod
    return out


def join_zeta(c1: CountTable, c2: CountTable, transform: bool = False) -> CountTable:
    """Join via zeta transform, per-TOP-set norm-tracked convolution, Moebius inversion.

    With ``transform=True`` the inner convolution runs through exact
    number-theoretic transforms (see :mod:`antifactor.ntt`); the result is
    identical.
    """
    _check_join(c1, c2)
    M, k, top = c1.M, len(c1.bag), c1.top
    z1, z2 = zeta(c1), zeta(c2)

    def split(z):
        by_top: dict[tuple[int, ...], dict[tuple[int, ...], Poly]] = {}
        for f, p in z.entries.items():
            S = tuple(i for i, x in enumerate(f) if x == top)
            rest = tuple(x for x in f if x != top)
            by_top.setdefault(S, {})[rest] = p
        return by_top

    s1, s2 = split(z1), split(z2)
    out: dict[tuple[int, ...], Poly] = {}
    for S in s1.keys() & s2.keys():
        a1, a2 = s1[S], s2[S]
        kk = k - len(S)
        if transform:
            from .ntt import norm_tracked_convolution_ntt

            conv = norm_tracked_convolution_ntt(a1, a2, kk, M)
        else:
            conv = _norm_tracked_convolution(a1, a2, kk, M)
        for (f0, F), p in conv.items():
            if sum(f0) != F:
                continue
            it = iter(f0)
            f = tuple(top if i in S else next(it) for i in range(k))
            out[f] = p
    zc = CountTable(M, c1.bag, out).normalize()
    return mobius(zc)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def _check_instance(inst: Instance, ntd: NiceTreeDecomposition):
    bad = check_nice(ntd, inst.graph)
    if bad is not None:
        raise InputError(f"decomposition does not fit instance: {bad}")


def run(
    inst: Instance,
    ntd: NiceTreeDecomposition,
    join_mode: str = "zeta",
    *,
    transform: bool = False,
    on_table: Optional[Callable[[int, CountTable], None]] = None,
) -> list[int]:
    """Return ``counts[s]`` = number of solutions with exactly ``s`` edges, ``s = 0..m``."""
    if join_mode not in ("naive", "zeta"):
        raise ValueError(f"unknown join mode {join_mode!r}")
    _check_instance(inst, ntd)
    g, cons = inst.graph, inst.constraints
    M = cons.max_ex
    tables: dict[int, CountTable] = {}
    for idx, nd in enumerate(ntd.nodes):
        kids = [tables.pop(c) for c in nd.children]
        if nd.kind == LEAF:
            t = leaf_table(M)
        elif nd.kind == INTRODUCE_VERTEX:
            t = introduce_vertex(kids[0], nd.vertex)
        elif nd.kind == INTRODUCE_EDGE:
            t = introduce_edge(kids[0], *g.edges[nd.edge])
        elif nd.kind == FORGET:
            t = forget(kids[0], nd.vertex, cons[nd.vertex])
        elif nd.kind == JOIN:
            if join_mode == "naive":
                t = join_naive(*kids)
            else:
                t = join_zeta(*kids, transform=transform)
        else:
            raise InputError(f"unknown node kind {nd.kind!r}")
        if on_table is not None:
            on_table(idx, t)
        tables[idx] = t
    root = tables[ntd.root]
    poly = root.entries.get((), [])
    return poly + [0] * (inst.m + 1 - len(poly))


def state_space_bound(M: int, bag_size: int) -> int:
    return (M + 2) ** bag_size


def all_states(M: int, k: int):
    return itertools.product(range(M + 2), repeat=k)
