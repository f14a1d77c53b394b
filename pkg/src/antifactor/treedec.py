"""Tree decompositions: validation, PACE ``.td`` I/O, nice form, min-fill heuristic."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import InputError, MultiGraph

LEAF = "leaf"
INTRODUCE_VERTEX = "introduce_vertex"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...] = ()

    def __init__(self, bags: Iterable[Iterable[int]], tree_edges: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))
        object.__setattr__(self, "tree_edges", tuple((int(a), int(b)) for a, b in tree_edges))

    @property
    def width(self) -> int:
        # empty graph / all-empty bags report 0, never -1
        return max(0, max((len(b) for b in self.bags), default=0) - 1)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        for lst in adj:
            lst.sort()
        return adj

    def is_path_decomposition(self) -> bool:
        if not self.bags:
            return True
        if len(self.tree_edges) != len(self.bags) - 1:
            return False
        return all(len(nb) <= 2 for nb in self.adjacency()) and _is_tree(self)


def _is_tree(td: TreeDecomposition) -> bool:
    k = len(td.bags)
    if k == 0:
        return not td.tree_edges
    if len(td.tree_edges) != k - 1:
        return False
    adj = td.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == k


@dataclass(frozen=True)
class Violation:
    axiom: str  # "tree", "vertex", "edge" or "connectivity"
    witness: object
    message: str

    def __str__(self):
        return self.message


def validate(td: TreeDecomposition, g: MultiGraph) -> Optional[Violation]:
    """Return ``None`` if ``td`` is a tree decomposition of ``g``, else the first violation."""
    k = len(td.bags)
    for a, b in td.tree_edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return Violation("tree", (a, b), f"tree edge ({a}, {b}) is not between two distinct bags")
    if k == 0:
        if g.n:
            return Violation("vertex", 0, "no bags but graph has vertices")
        return None
    if not _is_tree(td):
        return Violation("tree", None, "bag graph is not a tree")
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return Violation("vertex", v, f"bag {i} contains unknown vertex {v}")
    where: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            where[v].append(i)
    for v in range(g.n):
        if not where[v]:
            return Violation("vertex", v, f"vertex {v} is in no bag")
    for eid, (u, v) in enumerate(g.edges):
        if not any(v in td.bags[i] for i in where[u]):
            return Violation("edge", eid, f"edge ({u}, {v}) uncovered")
    adj = td.adjacency()
    for v in range(g.n):
        holders = set(where[v])
        start = where[v][0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in holders and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(holders):
            return Violation("connectivity", v, f"bags containing vertex {v} are disconnected")
    return None


# ---------------------------------------------------------------------------
# nice decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple[int, ...]  # sorted; DP state vectors follow this order
    children: tuple[int, ...] = ()
    vertex: Optional[int] = None
    edge: Optional[int] = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes in post-order: every child index is smaller than its parent's."""

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(0, max(len(nd.bag) for nd in self.nodes) - 1)

    def __len__(self):
        return len(self.nodes)


class _Builder:
    def __init__(self, g: MultiGraph):
        self.g = g
        self.nodes: list[NiceNode] = []
        self.edge_done = [False] * g.m

    def add(self, kind, bag, children=(), vertex=None, edge=None) -> int:
        self.nodes.append(NiceNode(kind, tuple(sorted(bag)), tuple(children), vertex, edge))
        return len(self.nodes) - 1

    def forget(self, top: int, v: int) -> int:
        bag = set(self.nodes[top].bag)
        for e in self.g.incident(v):
            if self.edge_done[e]:
                continue
            a, b = self.g.edges[e]
            if (b if a == v else a) in bag:
                top = self.add(INTRODUCE_EDGE, bag, (top,), edge=e)
                self.edge_done[e] = True
        bag.discard(v)
        return self.add(FORGET, bag, (top,), vertex=v)

    def move(self, top: int, target: frozenset[int]) -> int:
        bag = set(self.nodes[top].bag)
        for v in sorted(bag - target, reverse=True):
            top = self.forget(top, v)
            bag.discard(v)
        for v in sorted(target - bag):
            bag.add(v)
            top = self.add(INTRODUCE_VERTEX, bag, (top,), vertex=v)
        return top


def make_nice(td: TreeDecomposition, g: MultiGraph, root: int = 0) -> NiceTreeDecomposition:
    """Refine a valid decomposition into nice form rooted at an empty bag.

    Each edge is introduced directly below the forget of whichever endpoint
    leaves first, i.e. at the highest node still holding both endpoints.
    """
    bad = validate(td, g)
    if bad is not None:
        raise InputError(f"invalid tree decomposition: {bad}")
    b = _Builder(g)
    if not td.bags:
        b.add(LEAF, ())
        return NiceTreeDecomposition(tuple(b.nodes))

    adj = td.adjacency()
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    children: dict[int, list[int]] = {i: [] for i in order}
    for x in order[1:]:
        children[parent[x]].append(x)

    top_of: dict[int, int] = {}
    for x in reversed(order):
        target = td.bags[x]
        tops = [b.move(top_of.pop(c), target) for c in children[x]]
        if not tops:
            tops = [b.move(b.add(LEAF, ()), target)]
        cur = tops[0]
        for other in tops[1:]:
            cur = b.add(JOIN, target, (cur, other))
        top_of[x] = cur
    b.move(top_of[root], frozenset())
    assert all(b.edge_done)
    return NiceTreeDecomposition(tuple(b.nodes))


def check_nice(ntd: NiceTreeDecomposition, g: MultiGraph) -> Optional[str]:
    """Structural audit of a nice decomposition; ``None`` when all invariants hold."""
    nodes = ntd.nodes
    if not nodes:
        return "no nodes"
    if nodes[-1].bag:
        return "root bag is not empty"
    introduced = [0] * g.m
    has_parent = [False] * len(nodes)
    forgotten_below: list[set[int]] = []
    edges_below: list[set[int]] = []
    for i, nd in enumerate(nodes):
        for c in nd.children:
            if not 0 <= c < i:
                return f"node {i}: child {c} not in post-order"
            if has_parent[c]:
                return f"node {c} has two parents"
            has_parent[c] = True
        bag = set(nd.bag)
        if len(bag) != len(nd.bag) or list(nd.bag) != sorted(nd.bag):
            return f"node {i}: bag not sorted/distinct"
        kids = [nodes[c] for c in nd.children]
        if nd.kind == LEAF:
            if kids or bag:
                return f"node {i}: leaf must have no children and empty bag"
            fb, eb = set(), set()
        elif nd.kind == JOIN:
            if len(kids) != 2 or any(set(k.bag) != bag for k in kids):
                return f"node {i}: join needs two children with identical bags"
            l, r = nd.children
            if forgotten_below[l] & forgotten_below[r]:
                return f"node {i}: a vertex is forgotten in both join branches"
            fb = forgotten_below[l] | forgotten_below[r]
            eb = edges_below[l] | edges_below[r]
        else:
            if len(kids) != 1:
                return f"node {i}: {nd.kind} needs exactly one child"
            c = nd.children[0]
            cbag = set(kids[0].bag)
            fb, eb = set(forgotten_below[c]), set(edges_below[c])
            if nd.kind == INTRODUCE_VERTEX:
                v = nd.vertex
                if v in cbag or bag != cbag | {v}:
                    return f"node {i}: bad introduce of vertex {v}"
                if v in fb:
                    return f"node {i}: vertex {v} reintroduced after being forgotten"
            elif nd.kind == FORGET:
                v = nd.vertex
                if v not in cbag or bag != cbag - {v}:
                    return f"node {i}: bad forget of vertex {v}"
                fb.add(v)
            elif nd.kind == INTRODUCE_EDGE:
                e = nd.edge
                if e is None or not 0 <= e < g.m:
                    return f"node {i}: bad edge id {e}"
                u, v = g.edges[e]
                if bag != cbag or u not in bag or v not in bag:
                    return f"node {i}: edge {e} endpoints not in bag"
                introduced[e] += 1
                eb.add(e)
            else:
                return f"node {i}: unknown kind {nd.kind!r}"
        forgotten_below.append(fb)
        edges_below.append(eb)
    if not all(has_parent[:-1]):
        return "some non-root node has no parent"
    for e, cnt in enumerate(introduced):
        if cnt != 1:
            return f"edge {e} introduced {cnt} times"
    if forgotten_below[-1] != set(range(g.n)):
        return "not every vertex is forgotten below the root"
    return None


# ---------------------------------------------------------------------------
# heuristic construction
# ---------------------------------------------------------------------------


def heuristic_decomposition(g: MultiGraph) -> TreeDecomposition:
    """Min-fill elimination ordering; ties go to the smallest vertex id."""
    if g.n == 0:
        return TreeDecomposition([()], [])
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    order: list[int] = []
    bags: list[frozenset[int]] = []
    while adj:
        best, best_fill = None, None
        for v in sorted(adj):
            nb = sorted(adj[v])
            fill = sum(1 for i, x in enumerate(nb) for y in nb[i + 1:] if y not in adj[x])
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
                if fill == 0:
                    break
        nb = adj.pop(best)
        for x in nb:
            adj[x].discard(best)
            adj[x] |= nb - {x}
        order.append(best)
        bags.append(frozenset(nb | {best}))
    pos = {v: i for i, v in enumerate(order)}
    tree_edges = []
    for i, v in enumerate(order[:-1]):
        rest = bags[i] - {v}
        j = min(pos[x] for x in rest) if rest else i + 1
        tree_edges.append((i, j))
    return TreeDecomposition(bags, tree_edges)


def path_decomposition(bags: Iterable[Iterable[int]]) -> TreeDecomposition:
    bags = [frozenset(b) for b in bags]
    return TreeDecomposition(bags, [(i, i + 1) for i in range(len(bags) - 1)])


# ---------------------------------------------------------------------------
# PACE .td format
# ---------------------------------------------------------------------------


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse a PACE ``.td`` file; returns the decomposition and the declared vertex count."""
    header = None
    bags: dict[int, list[int]] = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if header is not None or len(parts) != 5 or parts[1] != "td":
                    raise InputError(f"line {lineno}: expected 's td <bags> <width+1> <n>'")
                header = tuple(int(x) for x in parts[2:])
            elif parts[0] == "b":
                if header is None:
                    raise InputError(f"line {lineno}: bag before header")
                bid = int(parts[1])
                if not 1 <= bid <= header[0] or bid in bags:
                    raise InputError(f"line {lineno}: bad or duplicate bag id {bid}")
                vs = [int(x) - 1 for x in parts[2:]]
                if any(not 0 <= v < header[2] for v in vs):
                    raise InputError(f"line {lineno}: vertex out of range")
                bags[bid] = vs
            else:
                if header is None:
                    raise InputError(f"line {lineno}: tree edge before header")
                if len(parts) != 2:
                    raise InputError(f"line {lineno}: expected '<id1> <id2>'")
                a, b = int(parts[0]), int(parts[1])
                if not (1 <= a <= header[0] and 1 <= b <= header[0]):
                    raise InputError(f"line {lineno}: tree edge references unknown bag")
                edges.append((a - 1, b - 1))
        except ValueError:
            raise InputError(f"line {lineno}: expected integers") from None
    if header is None:
        raise InputError("missing 's td' header")
    nbags, wp1, n = header
    if len(bags) != nbags:
        raise InputError(f"header declares {nbags} bags, found {len(bags)}")
    td = TreeDecomposition([bags[i] for i in range(1, nbags + 1)], edges)
    if max((len(b) for b in td.bags), default=0) != wp1:
        raise InputError(f"header declares largest bag {wp1}, found {max(len(b) for b in td.bags)}")
    return td, n


def format_td(td: TreeDecomposition, n: int) -> str:
    wp1 = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {wp1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(lines) + "\n"
