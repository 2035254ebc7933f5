"""Simple undirected graphs on vertices 0..n-1 and the invariants used downstream.

Adjacency is kept as integer bitmasks, which makes the clique, independence
and coloring searches cheap for the small graphs (<= ~30 vertices) we need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .errors import ResourceLimitError

MAX_EXACT_VERTICES = 30


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        normed = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {(u, v)} out of range for {self.vertex_count} vertices")
            normed.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex."""
        adj = [0] * self.vertex_count
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adjacency[v])

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, edges={self.sorted_edges()})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------- constructors

def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle(m: int) -> Graph:
    if m < 3:
        raise ValueError("cycle needs m >= 3")
    return Graph(m, frozenset(_norm(i, (i + 1) % m) for i in range(m)))


def edgeless(n: int) -> Graph:
    return Graph(n)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.vertex_count
    edges = set(g1.edges) | {(u + off, v + off) for u, v in g2.edges}
    return Graph(g1.vertex_count + g2.vertex_count, frozenset(edges))


def complement(g: Graph) -> Graph:
    n = g.vertex_count
    return Graph(n, frozenset(e for e in combinations(range(n), 2) if e not in g.edges))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on `vertices`, relabelled 0..k-1 in increasing order."""
    vs = sorted(set(vertices))
    index = {v: i for i, v in enumerate(vs)}
    edges = {(index[u], index[v]) for u, v in g.edges if u in index and v in index}
    return Graph(len(vs), frozenset(edges))


def standard_graph(kind: str, *args) -> Graph:
    """Dispatch helper: ``standard_graph("cycle", 5)``, ``("complete", 4)``, ``("disjoint_union", g1, g2)``."""
    builders = {"complete": complete, "cycle": cycle, "disjoint_union": disjoint_union,
                "edgeless": edgeless}
    try:
        return builders[kind](*args)
    except KeyError:
        raise ValueError(f"unknown graph kind {kind!r}") from None


# ---------------------------------------------------------------- invariants

def connected_components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    adj = g.adjacency
    for s in range(g.vertex_count):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(_bits(comp))
    return comps


def is_connected(g: Graph) -> bool:
    # the empty graph counts as connected
    return len(connected_components(g)) <= 1


def two_coloring(g: Graph) -> list[int] | None:
    color = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def _max_clique_mask(adj: tuple[int, ...], candidates: int) -> int:
    """Largest clique inside `candidates` (bitmask), by branch and bound with greedy-coloring bounds."""
    best = 0
    best_size = 0

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # greedy sequential coloring gives an order and per-vertex upper bounds
        order = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v)
                avail &= ~adj[v]
                rest &= ~(1 << v)
                order.append((v, color))
        return order

    def expand(clique: int, size: int, cand: int):
        nonlocal best, best_size
        order = color_bound(cand)
        for v, bound in reversed(order):
            if size + bound <= best_size:
                return
            new = clique | (1 << v)
            sub = cand & adj[v]
            if sub:
                expand(new, size + 1, sub)
            elif size + 1 > best_size:
                best, best_size = new, size + 1
            cand &= ~(1 << v)

    if candidates:
        expand(0, 0, candidates)
    return best


def max_clique(g: Graph) -> list[int]:
    _check_size(g)
    return _bits(_max_clique_mask(g.adjacency, (1 << g.vertex_count) - 1))


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def _check_size(g: Graph):
    if g.vertex_count > MAX_EXACT_VERTICES:
        raise ResourceLimitError(
            f"exact search limited to {MAX_EXACT_VERTICES} vertices, got {g.vertex_count}")


def _dsatur_greedy(g: Graph) -> list[int]:
    n = g.vertex_count
    adj = g.adjacency
    color = [-1] * n
    sat = [0] * n  # bitmask of neighbour colours
    for _ in range(n):
        v = max((u for u in range(n) if color[u] < 0),
                key=lambda u: (sat[u].bit_count(), (adj[u]).bit_count(), -u))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        color[v] = c
        for w in _bits(adj[v]):
            sat[w] |= 1 << c
    return color


def optimal_coloring(g: Graph) -> list[int]:
    """An exact minimum proper colouring (colours 0..chi-1).

    DSATUR branch and bound: the greedy DSATUR colouring is the initial upper
    bound and a maximum clique (pre-coloured) the lower bound.
    """
    _check_size(g)
    n = g.vertex_count
    if n == 0:
        return []
    adj = g.adjacency
    best = _dsatur_greedy(g)
    best_k = max(best) + 1
    clique = _bits(_max_clique_mask(adj, (1 << n) - 1))
    lower = len(clique)
    if best_k == lower:
        return best

    color = [-1] * n
    sat = [0] * n
    for c, v in enumerate(clique):
        color[v] = c
        for w in _bits(adj[v]):
            sat[w] |= 1 << c

    def search(colored: int, used: int):
        nonlocal best, best_k
        if colored == n:
            best, best_k = color[:], used
            return best_k == lower
        v = -1
        key = None
        for u in range(n):
            if color[u] < 0:
                k = (sat[u].bit_count(), adj[u].bit_count())
                if key is None or k > key:
                    v, key = u, k
        # colours already in use, then at most one fresh colour
        limit = min(used + 1, best_k - 1)
        for c in range(limit):
            if sat[v] >> c & 1:
                continue
            color[v] = c
            changed = [w for w in _bits(adj[v]) if not sat[w] >> c & 1]
            for w in changed:
                sat[w] |= 1 << c
            if search(colored + 1, max(used, c + 1)):
                return True
            for w in changed:
                sat[w] &= ~(1 << c)
            color[v] = -1
        return False

    search(len(clique), lower)
    return best


def chromatic_number(g: Graph) -> int:
    coloring = optimal_coloring(g)
    return max(coloring) + 1 if coloring else 0


def is_proper_coloring(g: Graph, coloring) -> bool:
    return len(coloring) == g.vertex_count and all(coloring[u] != coloring[v] for u, v in g.edges)


@dataclass(frozen=True)
class GraphInvariants:
    chromatic: int
    independence: int
    clique: int
    max_degree: int
    connected: bool
    bipartite: bool


def invariants(g: Graph) -> GraphInvariants:
    return GraphInvariants(
        chromatic=chromatic_number(g),
        independence=independence_number(g),
        clique=clique_number(g),
        max_degree=max((g.degree(v) for v in range(g.vertex_count)), default=0),
        connected=is_connected(g),
        bipartite=is_bipartite(g),
    )


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Brute-force-with-pruning graph isomorphism (tiny graphs only)."""
    if g.vertex_count != h.vertex_count or len(g.edges) != len(h.edges):
        return False
    if sorted(map(g.degree, range(g.vertex_count))) != sorted(map(h.degree, range(h.vertex_count))):
        return False
    n = g.vertex_count
    order = sorted(range(n), key=lambda v: -g.degree(v))
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or g.degree(v) != h.degree(w):
                continue
            if all(g.has_edge(v, order[j]) == h.has_edge(w, image[order[j]]) for j in range(i)):
                image[v], used[w] = w, True
                if extend(i + 1):
                    return True
                image[v], used[w] = -1, False
        return False

    return extend(0)


# ---------------------------------------------------------------- text format

def format_graph(g: Graph) -> str:
    lines = [f"{g.vertex_count} {len(g.edges)}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValueError("empty graph file")
    n, m = map(int, rows[0])
    edges = [tuple(map(int, r)) for r in rows[1:]]
    if len(edges) != m:
        raise ValueError(f"header promises {m} edges, found {len(edges)}")
    for u, v in edges:
        if not 0 <= u < v < n:
            raise ValueError(f"bad edge line {u} {v}")
    return Graph.from_edges(n, edges)


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(format_graph(g))
