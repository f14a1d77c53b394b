"""Brute-force ground truth over all ``2^m`` edge subsets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Instance

DEFAULT_BUDGET = 25


class BudgetExceeded(RuntimeError):
    """Refusal to enumerate an instance with too many edges."""


@dataclass(frozen=True)
class OracleReport:
    counts_by_size: tuple[int, ...]
    witness: Optional[frozenset[int]] = None

    @property
    def total(self) -> int:
        return sum(self.counts_by_size)

    @property
    def min_size(self) -> Optional[int]:
        return next((s for s, c in enumerate(self.counts_by_size) if c), None)

    @property
    def max_size(self) -> Optional[int]:
        return next(
            (s for s in reversed(range(len(self.counts_by_size))) if self.counts_by_size[s]),
            None,
        )


def enumerate_solutions(inst: Instance, edge_budget_limit: int = DEFAULT_BUDGET) -> OracleReport:
    """Count solutions by size with a Gray-code walk over edge subsets.

    The witness is the lexicographically least (as a sorted id tuple)
    solution of maximum size.
    """
    g = inst.graph
    m = g.m
    if m > edge_budget_limit:
        raise BudgetExceeded(f"{m} edges exceeds oracle budget {edge_budget_limit}")
    excluded = [frozenset(ex) for ex in inst.constraints.excluded]
    deg = [0] * g.n
    bad = sum(1 for v in range(g.n) if 0 in excluded[v])
    counts = [0] * (m + 1)
    mask = 0
    size = 0
    best = None
    best_size = -1

    def record():
        nonlocal best, best_size
        counts[size] += 1
        if size > best_size:
            best, best_size = mask, size
        elif size == best_size:
            low = (mask ^ best) & -(mask ^ best)
            if mask & low:
                best = mask

    if not bad:
        record()
    for i in range(1, 1 << m):
        e = (i & -i).bit_length() - 1
        step = -1 if mask >> e & 1 else 1
        mask ^= 1 << e
        size += step
        for v in g.edges[e]:
            ex = excluded[v]
            bad -= deg[v] in ex
            deg[v] += step
            bad += deg[v] in ex
        if not bad:
            record()

    witness = None
    if best is not None:
        witness = frozenset(e for e in range(m) if best >> e & 1)
    return OracleReport(tuple(counts), witness)
