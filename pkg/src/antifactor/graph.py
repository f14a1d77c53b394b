"""Instance model: multigraphs with per-vertex excluded-degree lists."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class InputError(ValueError):
    """Malformed instance, file, or argument."""


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph on vertices ``0..n-1``.

    Edge ids are positions in ``edges``; parallel edges are allowed,
    self-loops are not.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    _incident: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"negative vertex count {self.n}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        incident: list[list[int]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge {eid} ({u}, {v}) has an endpoint out of range")
            if u == v:
                raise InputError(f"edge {eid} is a self-loop at vertex {u}")
            incident[u].append(eid)
            incident[v].append(eid)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_incident", tuple(tuple(x) for x in incident))

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for e in self._incident[v]:
            a, b = self.edges[e]
            out.add(b if a == v else a)
        return out

    def check_edge_ids(self, S: Iterable[int]) -> frozenset[int]:
        S = frozenset(S)
        for e in S:
            if not (isinstance(e, int) and 0 <= e < self.m):
                raise InputError(f"invalid edge id {e!r}")
        return S


@dataclass(frozen=True)
class DegreeConstraints:
    """Finite excluded-degree list ``Ex_v`` for every vertex."""

    excluded: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        lists = []
        for v, ex in enumerate(self.excluded):
            vals = sorted(set(int(d) for d in ex))
            if vals and vals[0] < 0:
                raise InputError(f"vertex {v}: negative excluded degree {vals[0]}")
            lists.append(tuple(vals))
        object.__setattr__(self, "excluded", tuple(lists))

    @classmethod
    def uniform(cls, n: int, ex: Iterable[int]) -> DegreeConstraints:
        ex = tuple(ex)
        return cls(tuple(ex for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.excluded)

    @property
    def max_ex(self) -> int:
        return max((ex[-1] for ex in self.excluded if ex), default=0)

    @property
    def ex(self) -> int:
        return max((len(ex) for ex in self.excluded), default=0)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.excluded[v]

    def normalized(self, graph: MultiGraph) -> DegreeConstraints:
        """Drop excluded values above each vertex's degree (they can never bind)."""
        return DegreeConstraints(
            tuple(
                tuple(d for d in ex if d <= graph.degree(v))
                for v, ex in enumerate(self.excluded)
            )
        )


@dataclass(frozen=True)
class Instance:
    graph: MultiGraph
    constraints: DegreeConstraints

    def __post_init__(self):
        if self.constraints.n != self.graph.n:
            raise InputError(
                f"constraints cover {self.constraints.n} vertices, graph has {self.graph.n}"
            )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m


def degree_vector(graph: MultiGraph, S: Iterable[int], vertices: Sequence[int]) -> list[int]:
    S = graph.check_edge_ids(S)
    for v in vertices:
        if not (isinstance(v, int) and 0 <= v < graph.n):
            raise InputError(f"invalid vertex id {v!r}")
    return [sum(1 for e in graph.incident(v) if e in S) for v in vertices]


def is_solution(inst: Instance, S: Iterable[int]) -> bool:
    """True iff no vertex has its ``S``-degree in its excluded list."""
    graph = inst.graph
    degs = degree_vector(graph, S, range(graph.n))
    return all(d not in ex for d, ex in zip(degs, inst.constraints.excluded))


def factor_to_antifactor(graph: MultiGraph, allowed: Iterable[int]) -> DegreeConstraints:
    """Complement an allowed-degree set within ``[0, deg(v)]`` at every vertex."""
    allowed = set(allowed)
    if not allowed:
        raise InputError("allowed-degree set must be nonempty")
    return DegreeConstraints(
        tuple(
            tuple(d for d in range(graph.degree(v) + 1) if d not in allowed)
            for v in range(graph.n)
        )
    )


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        yield lineno, parts


def _ints(parts, lineno):
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {' '.join(parts)!r}") from None


def parse_graph(text: str) -> MultiGraph:
    """Parse ``p af <n> <m>`` followed by ``e <u> <v>`` lines (1-indexed)."""
    n = m = None
    edges = []
    for lineno, parts in _tokens(text):
        if parts[0] == "p":
            if n is not None:
                raise InputError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "af":
                raise InputError(f"line {lineno}: expected 'p af <n> <m>'")
            n, m = _ints(parts[2:], lineno)
        elif parts[0] == "e":
            if n is None:
                raise InputError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = _ints(parts[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"line {lineno}: vertex out of range 1..{n}")
            if u == v:
                raise InputError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise InputError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise InputError("missing 'p af' line")
    if len(edges) != m:
        raise InputError(f"header declares {m} edges, found {len(edges)}")
    return MultiGraph(n, tuple(edges))


def format_graph(graph: MultiGraph) -> str:
    lines = [f"p af {graph.n} {graph.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def parse_constraints(text: str, n: int) -> DegreeConstraints:
    """Parse ``x <v> <k> <d1> ... <dk>`` lines; omitted vertices are unconstrained."""
    lists: list[tuple[int, ...] | None] = [None] * n
    for lineno, parts in _tokens(text):
        if parts[0] != "x":
            raise InputError(f"line {lineno}: unknown line type {parts[0]!r}")
        nums = _ints(parts[1:], lineno)
        if len(nums) < 2:
            raise InputError(f"line {lineno}: expected 'x <v> <k> <d1> ... <dk>'")
        v, k, ds = nums[0], nums[1], nums[2:]
        if not 1 <= v <= n:
            raise InputError(f"line {lineno}: vertex {v} out of range 1..{n}")
        if k != len(ds):
            raise InputError(f"line {lineno}: declared {k} values, found {len(ds)}")
        if any(d < 0 for d in ds):
            raise InputError(f"line {lineno}: negative excluded degree")
        if lists[v - 1] is not None:
            raise InputError(f"line {lineno}: vertex {v} listed twice")
        lists[v - 1] = tuple(ds)
    return DegreeConstraints(tuple(ex or () for ex in lists))


def format_constraints(constraints: DegreeConstraints) -> str:
    lines = []
    for v, ex in enumerate(constraints.excluded):
        if ex:
            lines.append(" ".join(["x", str(v + 1), str(len(ex))] + [str(d) for d in ex]))
    return "\n".join(lines) + ("\n" if lines else "")
