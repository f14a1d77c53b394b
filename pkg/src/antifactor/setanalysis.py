"""Combinatorics of excluded-degree sets.

Gaps, arithmetic progressions, half-induced matchings in the compatibility
graph (``a ~ b`` iff ``a + b`` is not excluded), witness sets that no
representative set can shrink, a descriptive complexity classification,
and the peeling algorithm for ``Ex = [1, k]``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .graph import InputError, Instance, MultiGraph

MAX_HIM_BOUND = 16


def maxgap(values: Iterable[int], *, cofinite: bool = False, horizon: Optional[int] = None) -> int:
    """Longest run of missing integers whose two boundaries are both members.

    With ``cofinite=True`` the set is the complement of ``values`` in the
    naturals, examined on ``[0, horizon]`` (default ``max(values) + 2``).
    """
    values = sorted(set(values))
    if cofinite:
        need = (values[-1] + 2) if values else 1
        if horizon is None:
            horizon = need
        elif horizon < need:
            raise ValueError(f"horizon {horizon} too small; need at least {need}")
        excluded = set(values)
        members = [x for x in range(horizon + 1) if x not in excluded]
    else:
        members = values
    return max((b - a - 1 for a, b in zip(members, members[1:])), default=0)


def longest_ap(ex: Iterable[int]) -> tuple[int, Optional[int], Optional[int]]:
    """``(length, start, difference)`` of a longest progression inside ``ex``.

    Ties prefer the smallest difference, then the smallest start. Length-1
    progressions carry no difference (``None``); the empty set gives
    ``(0, None, None)``.
    """
    ex = sorted(set(ex))
    if not ex:
        return 0, None, None
    members = set(ex)
    best = (1, ex[0], None)
    for d in range(1, ex[-1] - ex[0] + 1):
        for a in ex:
            length = 1
            while a + length * d in members:
                length += 1
            if length > best[0]:
                best = (length, a, d)
    return best


@dataclass(frozen=True)
class HalfInducedMatching:
    pairs: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.pairs)

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.pairs)

    @property
    def b(self) -> tuple[int, ...]:
        return tuple(y for _, y in self.pairs)


def verify_him(w: HalfInducedMatching, ex: Iterable[int]) -> bool:
    ex = set(ex)
    a, b = w.a, w.b
    if len(set(a)) != len(a) or len(set(b)) != len(b):
        return False
    if any(x < 0 for x in a + b):
        return False
    for i in range(len(a)):
        if a[i] + b[i] in ex:
            return False
        if any(a[i] + b[j] not in ex for j in range(i + 1, len(b))):
            return False
    return True


def him_from_ap(ex: Iterable[int]) -> HalfInducedMatching:
    """Half-induced matching of size ``l + 1`` from a non-extendable progression of length ``l``."""
    ex = sorted(set(ex))
    members = set(ex)
    length, _, _ = longest_ap(ex)
    if length == 0:
        return HalfInducedMatching(((0, 0),))
    choice = None
    for d in range(1, max(1, ex[-1] - ex[0]) + 1):
        for a in ex:
            if all(a + i * d in members for i in range(length)) and a + length * d not in members:
                choice = (a, d)
                break
        if choice:
            break
    if choice is None:
        raise ValueError(f"no upward non-extendable progression of length {length} in {ex}")
    a, d = choice
    pairs = tuple((d * (i - 1), a + (length + 1 - i) * d) for i in range(1, length + 2))
    w = HalfInducedMatching(pairs)
    if not verify_him(w, ex):
        raise ValueError(f"constructed matching {pairs} fails verification for {ex}")
    return w


def him_exhaustive(ex: Iterable[int], value_bound: int, size_target: int) -> Optional[HalfInducedMatching]:
    """Backtracking search for a half-induced matching with labels in ``[0, value_bound]``."""
    if value_bound > MAX_HIM_BOUND:
        raise ValueError(f"value bound {value_bound} exceeds {MAX_HIM_BOUND}; search is exponential")
    exs = set(ex)
    labels = range(value_bound + 1)
    if size_target <= 0:
        return HalfInducedMatching(())

    def partners(a_seq):
        # b values completing an excluded sum with every earlier a
        cand = set(labels)
        for x in a_seq:
            cand &= {z - x for z in exs}
        return cand

    def extend(a_seq, b_seq):
        if len(a_seq) == size_target:
            return HalfInducedMatching(tuple(zip(a_seq, b_seq)))
        for b in sorted(partners(a_seq) - set(b_seq)):
            for a in labels:
                if a in a_seq or a + b in exs:
                    continue
                nxt = a_seq + (a,)
                if len(nxt) < size_target and not (partners(nxt) - set(b_seq) - {b}):
                    continue
                found = extend(nxt, b_seq + (b,))
                if found is not None:
                    return found
        return None

    return extend((), ())


def max_him_exhaustive(ex: Iterable[int], value_bound: int, limit: int) -> HalfInducedMatching:
    """Largest matching (up to ``limit`` pairs) found by :func:`him_exhaustive`."""
    ex = tuple(ex)
    best = HalfInducedMatching(())
    for target in range(1, limit + 1):
        w = him_exhaustive(ex, value_bound, target)
        if w is None:
            break
        best = w
    return best


@dataclass(frozen=True)
class HardRepset:
    index_sum: int
    vectors: tuple[tuple[int, ...], ...]
    partners: dict


def build_hard_repset(ex: Iterable[int], him: HalfInducedMatching, k: int) -> HardRepset:
    """Vectors over the matching's ``a``-labels with the most common index sum.

    Each vector's partner (``b`` at the same indices) is compatible with it
    and with no other vector in the set.
    """
    ex = tuple(ex)
    if len(him) < 2 or not verify_him(him, ex):
        raise ValueError("need a verified half-induced matching with at least two pairs")
    a, b = him.a, him.b
    buckets: dict[int, list[tuple[int, ...]]] = {}
    for idx in product(range(len(a)), repeat=k):
        buckets.setdefault(sum(idx) + k, []).append(idx)  # 1-based index sum
    q = max(buckets, key=lambda s: (len(buckets[s]), -s))
    vectors = tuple(tuple(a[i] for i in idx) for idx in buckets[q])
    partners = {tuple(a[i] for i in idx): tuple(b[i] for i in idx) for idx in buckets[q]}
    return HardRepset(q, vectors, partners)


def _is_interval_from_one(ex: list[int]) -> bool:
    return bool(ex) and ex == list(range(1, len(ex) + 1))


def is_ap(ex: Iterable[int]) -> bool:
    ex = sorted(set(ex))
    return len(ex) <= 2 or len({y - x for x, y in zip(ex, ex[1:])}) == 1


@dataclass(frozen=True)
class SetProfile:
    excluded: tuple[int, ...]
    maxgap_complement: int
    ap_length: int
    ap_start: Optional[int]
    ap_difference: Optional[int]
    him_lower_bound: int
    tags: tuple[str, ...]
    him: HalfInducedMatching


def classify(ex: Iterable[int]) -> tuple[str, ...]:
    """Descriptive tags; several may apply to one set."""
    return profile(ex).tags


def profile(ex: Iterable[int]) -> SetProfile:
    ex = sorted(set(ex))
    gap = maxgap(ex, cofinite=True)
    length, start, diff = longest_ap(ex)
    him = him_from_ap(ex)
    tags = []
    if 0 not in ex:
        tags.append("trivial-decision")
    if gap <= 1:
        tags.append("poly-cornuejols")
    if _is_interval_from_one(ex):
        tags.append("poly-max-interval")
    if gap > 1 and not _is_interval_from_one(ex):
        tags.append(f"hard-candidate(h={len(him)})")
    return SetProfile(tuple(ex), gap, length, start, diff, len(him), tuple(tags), him)


# ---------------------------------------------------------------------------
# Ex = [1, k]: peeling
# ---------------------------------------------------------------------------


def peel_max_interval(g: MultiGraph, k: int, rng: Optional[random.Random] = None) -> frozenset[int]:
    """Edges of the subgraph left after repeatedly deleting vertices of degree ``<= k``.

    ``rng`` randomises the deletion order; the result does not depend on it.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    alive = set(range(g.n))
    deg = Counter()
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    queue = [v for v in range(g.n) if deg[v] <= k]
    while queue:
        if rng is not None:
            i = rng.randrange(len(queue))
            queue[i], queue[-1] = queue[-1], queue[i]
        v = queue.pop()
        if v not in alive:
            continue
        alive.remove(v)
        for e in g.incident(v):
            x, y = g.edges[e]
            w = y if x == v else x
            if w in alive:
                deg[w] -= 1
                if deg[w] == k:
                    queue.append(w)
    return frozenset(e for e, (u, v) in enumerate(g.edges) if u in alive and v in alive)


def interval_k(inst: Instance) -> int:
    """The ``k`` with every ``Ex_v = [1, k]``; raises otherwise."""
    lists = set(inst.constraints.excluded)
    if len(lists) != 1:
        raise InputError("constraints are not uniform across vertices")
    ex = list(next(iter(lists)))
    if not _is_interval_from_one(ex):
        raise InputError(f"excluded set {ex} is not of the form [1, k]")
    return len(ex)
