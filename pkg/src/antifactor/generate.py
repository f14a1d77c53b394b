"""Seeded random instance families."""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .graph import DegreeConstraints, Instance, MultiGraph
from .treedec import TreeDecomposition, path_decomposition


def erdos_renyi(n: int, p: float, rng: random.Random) -> MultiGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return MultiGraph(n, tuple(edges))


def random_multigraph(n: int, m: int, rng: random.Random) -> MultiGraph:
    """``m`` uniformly random non-loop edges; parallel edges occur naturally."""
    if n < 2:
        m = 0
    edges = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        edges.append((min(u, v), max(u, v)))
    return MultiGraph(n, tuple(edges))


def grid(rows: int, cols: int) -> MultiGraph:
    """Column-major vertex ids: ``(r, c) -> c * rows + r``."""
    edges = []
    for c in range(cols):
        for r in range(rows):
            v = c * rows + r
            if r + 1 < rows:
                edges.append((v, v + 1))
            if c + 1 < cols:
                edges.append((v, v + rows))
    return MultiGraph(rows * cols, tuple(edges))


def grid_path_decomposition(rows: int, cols: int) -> TreeDecomposition:
    """Sliding window of ``rows + 1`` consecutive ids; width ``rows``."""
    n = rows * cols
    if n <= rows + 1:
        return path_decomposition([range(n)])
    return path_decomposition([range(i, i + rows + 1) for i in range(n - rows)])


def random_constraints(
    n: int,
    rng: random.Random,
    max_ex: int = 3,
    ex_size: int = 3,
    uniform: Optional[Sequence[int]] = None,
) -> DegreeConstraints:
    if uniform is not None:
        return DegreeConstraints.uniform(n, uniform)
    lists = []
    for _ in range(n):
        size = rng.randint(0, min(ex_size, max_ex + 1))
        lists.append(tuple(sorted(rng.sample(range(max_ex + 1), size))))
    return DegreeConstraints(tuple(lists))


def random_instance(
    rng: random.Random,
    max_n: int = 7,
    max_m: int = 12,
    max_ex: int = 3,
    ex_size: int = 3,
) -> Instance:
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m) if n >= 2 else 0
    g = random_multigraph(n, m, rng)
    return Instance(g, random_constraints(n, rng, max_ex, ex_size))
