"""Abstract simplicial complexes stored by their facets.

Faces are sorted vertex tuples.  The empty simplex ``()`` is a face of every
non-void complex; the complex whose only facet is ``()`` is the (-1)-sphere,
which is the unit for :func:`join`.  The void complex has no facets at all.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Iterable

from . import graphs
from .errors import ResourceLimitError
from .graphs import Graph

MAX_FACETS = 5_000_000


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def _maximal(simplices: Iterable[tuple[int, ...]]) -> frozenset[tuple[int, ...]]:
    by_size = defaultdict(set)
    for s in simplices:
        by_size[len(s)].add(s)
    if len(by_size) <= 1:
        return frozenset(next(iter(by_size.values()), ()))
    sizes = sorted(by_size, reverse=True)
    kept: list[tuple[int, ...]] = []
    containing = defaultdict(list)  # vertex -> indices of kept facets
    for size in sizes:
        for s in sorted(by_size[size]):
            if s:
                cands = min((containing[v] for v in s), key=len)
                sset = set(s)
                if any(sset.issubset(kept[i]) for i in cands):
                    continue
            elif kept:
                continue
            idx = len(kept)
            kept.append(s)
            for v in s:
                containing[v].append(idx)
    return frozenset(kept)


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    vertex_count: int
    facets: frozenset[tuple[int, ...]]

    def __init__(self, vertex_count: int, simplices: Iterable[Iterable[int]] = (),
                 *, allow_ghosts: bool = False, trusted: bool = False):
        simps = [tuple(sorted(s)) for s in simplices]
        for s in simps:
            if len(set(s)) != len(s):
                raise ValueError(f"repeated vertex in simplex {s}")
            if s and not (0 <= s[0] and s[-1] < vertex_count):
                raise ValueError(f"simplex {s} out of range for {vertex_count} vertices")
        facets = frozenset(simps) if trusted else _maximal(simps)
        if len(facets) > MAX_FACETS:
            raise ResourceLimitError(f"{len(facets)} facets exceeds bound {MAX_FACETS}")
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "facets", facets)
        if not allow_ghosts:
            used = {v for f in facets for v in f}
            if len(used) != vertex_count:
                raise ValueError("complex has unused vertex labels; pass allow_ghosts=True")

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], **kw) -> "SimplicialComplex":
        """Build with vertex_count = 1 + largest label."""
        fs = [tuple(sorted(f)) for f in facets]
        n = max((f[-1] + 1 for f in fs if f), default=0)
        return cls(n, fs, **kw)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.vertex_count}, facets={len(self.facets)}, dim={self.dimension})"

    # ---------------------------------------------------------- basic data

    @cached_property
    def vertices(self) -> list[int]:
        return sorted({v for f in self.facets for v in f})

    @property
    def is_void(self) -> bool:
        return not self.facets

    @cached_property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self, k: int) -> list[tuple[int, ...]]:
        """Sorted list of the k-dimensional faces."""
        return self.face_lists[k + 1] if 0 <= k + 1 < len(self.face_lists) else []

    @cached_property
    def face_lists(self) -> list[list[tuple[int, ...]]]:
        """face_lists[j] = sorted faces with j vertices (j = 0 holds the empty face)."""
        if not self.facets:
            return []
        top = self.dimension + 1
        levels: list[set] = [set() for _ in range(top + 1)]
        for f in self.facets:
            levels[len(f)].add(f)
        for size in range(top, 0, -1):
            below = levels[size - 1]
            for f in levels[size]:
                for i in range(size):
                    below.add(f[:i] + f[i + 1:])
        return [sorted(s) for s in levels]

    def all_faces(self) -> set[tuple[int, ...]]:
        return {f for level in self.face_lists for f in level}

    def contains(self, face: Iterable[int]) -> bool:
        s = set(face)
        if not s:
            return bool(self.facets)
        cands = min((self.vertex_star[v] for v in s), key=len, default=())
        return any(s.issubset(f) for f in cands)

    @cached_property
    def vertex_star(self) -> dict[int, list[tuple[int, ...]]]:
        star = defaultdict(list)
        for f in self.facets:
            for v in f:
                star[v].append(f)
        return dict(star)

    def f_vector(self) -> list[int]:
        return [len(level) for level in self.face_lists[1:]]

    def euler(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.f_vector()))

    def skeleton_graph(self) -> Graph:
        """The 1-skeleton as a Graph on vertex_count vertices."""
        edges = set()
        for f in self.facets:
            edges.update(combinations(f, 2))
        return Graph(self.vertex_count, frozenset(edges))

    def compact(self) -> "SimplicialComplex":
        """Relabel the used vertices to 0..k-1 (order preserving)."""
        index = {v: i for i, v in enumerate(self.vertices)}
        return SimplicialComplex(len(index), [tuple(index[v] for v in f) for f in self.facets],
                                 trusted=True)

    def relabel(self, perm) -> "SimplicialComplex":
        return SimplicialComplex(self.vertex_count, [tuple(perm[v] for v in f) for f in self.facets],
                                 trusted=True, allow_ghosts=True)


@dataclass(frozen=True)
class Combinatorics:
    f_vector: list[int]
    euler: int
    dimension: int


def combinatorics(k: SimplicialComplex) -> Combinatorics:
    return Combinatorics(k.f_vector(), k.euler(), k.dimension)


# ------------------------------------------------------------- constructors

def simplex(n_vertices: int) -> SimplicialComplex:
    return SimplicialComplex(n_vertices, [tuple(range(n_vertices))], trusted=True)


def boundary_of_simplex(n_vertices: int) -> SimplicialComplex:
    """The boundary of the simplex on n_vertices vertices, a sphere of dimension n_vertices - 2."""
    full = tuple(range(n_vertices))
    return SimplicialComplex(n_vertices, list(combinations(full, n_vertices - 1)), trusted=True)


def sphere0() -> SimplicialComplex:
    return boundary_of_simplex(2)


def cycle_complex(m: int) -> SimplicialComplex:
    return SimplicialComplex(m, [(i, (i + 1) % m) for i in range(m)])


def octahedron() -> SimplicialComplex:
    return join(join(sphere0(), sphere0()), sphere0())


def _maximal_cliques(adj: tuple[int, ...], n: int) -> list[tuple[int, ...]]:
    out = []

    def bk(r: int, p: int, x: int):
        if not p and not x:
            out.append(tuple(graphs._bits(r)))
            return
        pu = p | x
        pivot = max(graphs._bits(pu), key=lambda u: (adj[u] & p).bit_count())
        for v in graphs._bits(p & ~adj[pivot]):
            bk(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v
            if len(out) > MAX_FACETS:
                raise ResourceLimitError("too many maximal cliques")

    if n:
        bk(0, (1 << n) - 1, 0)
    return out


def clique_complex(g: Graph) -> SimplicialComplex:
    if g.vertex_count == 0:
        return SimplicialComplex(0, [()], trusted=True)
    return SimplicialComplex(g.vertex_count, _maximal_cliques(g.adjacency, g.vertex_count),
                             trusted=True)


def independence_complex(g: Graph) -> SimplicialComplex:
    return clique_complex(graphs.complement(g))


def is_flag(k: SimplicialComplex) -> bool:
    c = k.compact() if not k.is_void else k
    if c.vertex_count == 0:
        return True
    return clique_complex(c.skeleton_graph()).facets == c.facets


def link(k: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """link(face) = {s : s disjoint from face, s u face in k}; keeps the original labels."""
    fset = set(face)
    if not k.contains(fset):
        raise ValueError(f"{tuple(sorted(fset))} is not a face")
    if not fset:
        return k
    star = min((k.vertex_star[v] for v in fset), key=len)
    simps = [tuple(v for v in f if v not in fset) for f in star if fset.issubset(f)]
    return SimplicialComplex(k.vertex_count, simps, allow_ghosts=True)


def star(k: SimplicialComplex, face: Iterable[int]) -> list[tuple[int, ...]]:
    fset = set(face)
    star_ = min((k.vertex_star[v] for v in fset), key=len)
    return [f for f in star_ if fset.issubset(f)]


def join(k: SimplicialComplex, l: SimplicialComplex) -> SimplicialComplex:
    """Join with l's vertices shifted by k.vertex_count."""
    off = k.vertex_count
    simps = [a + tuple(v + off for v in b) for a, b in product(k.facets, l.facets)]
    return SimplicialComplex(k.vertex_count + l.vertex_count, simps, trusted=True, allow_ghosts=True)


def cone(k: SimplicialComplex) -> SimplicialComplex:
    return join(simplex(1), k)


# ------------------------------------------------------------- recognition

def ridge_counts(k: SimplicialComplex) -> Counter:
    """Number of facets containing each codimension-one face."""
    counts = Counter()
    for f in k.facets:
        for i in range(len(f)):
            counts[f[:i] + f[i + 1:]] += 1
    return counts


def is_closed_pseudomanifold(k: SimplicialComplex) -> bool:
    """Pure, and every ridge lies in exactly two facets."""
    if k.is_void or not k.is_pure() or k.dimension < 0:
        return False
    return all(c == 2 for c in ridge_counts(k).values())


def is_connected(k: SimplicialComplex) -> bool:
    g = k.skeleton_graph()
    return len([c for c in graphs.connected_components(g) if any(v in k.vertex_star for v in c)]) <= 1


def _is_single_cycle(k: SimplicialComplex) -> bool:
    if k.dimension != 1 or not k.is_pure():
        return False
    if any(len(fs) != 2 for fs in k.vertex_star.values()):
        return False
    return is_connected(k)


def _is_2sphere(k: SimplicialComplex) -> bool:
    if k.dimension != 2 or not is_closed_pseudomanifold(k):
        return False
    if not is_connected(k):
        return False
    for v in k.vertex_star:
        if not _is_single_cycle(link(k, (v,))):
            return False
    return k.euler() == 2


def is_pl_sphere(k: SimplicialComplex, *, seed: int = 0, budget: int | None = None) -> Answer:
    """Three-valued sphere test: exact in dimension <= 2, bistellar heuristic above."""
    d = k.dimension
    if k.is_void:
        return Answer.NO
    if d == -1:
        return Answer.YES
    if d == 0:
        return Answer.YES if len(k.facets) == 2 else Answer.NO
    if d == 1:
        return Answer.YES if _is_single_cycle(k) else Answer.NO
    if d == 2:
        return Answer.YES if _is_2sphere(k) else Answer.NO
    if not is_closed_pseudomanifold(k) or not is_connected(k):
        return Answer.NO
    if k.euler() != 1 + (-1) ** d:
        return Answer.NO
    from .bistellar import reduce, DEFAULT_BUDGET
    reduced = reduce(k, seed=seed, budget=DEFAULT_BUDGET if budget is None else budget,
                     stop_at_simplex_boundary=True)
    if len(reduced.vertices) == d + 2 and len(reduced.facets) == d + 2:
        return Answer.YES
    return Answer.UNKNOWN


def is_flag_pl_sphere(k: SimplicialComplex, **kw) -> Answer:
    if not k.is_void and not is_flag(k):
        return Answer.NO
    return is_pl_sphere(k, **kw)


# ------------------------------------------------------------- isomorphism

def _refined_colors(k: SimplicialComplex) -> dict[int, int]:
    """Colour refinement on vertices seeded by (star size, degree, facet-size profile)."""
    g = k.skeleton_graph()
    verts = k.vertices
    color = {v: hash((len(k.vertex_star[v]), g.degree(v),
                      tuple(sorted(Counter(len(f) for f in k.vertex_star[v]).items()))))
             for v in verts}
    for _ in range(len(verts)):
        new = {v: hash((color[v], tuple(sorted(color[w] for w in g.neighbors(v)))))
               for v in verts}
        if len(set(new.values())) == len(set(color.values())):
            return new
        color = new
    return color


def isomorphism(k: SimplicialComplex, l: SimplicialComplex, max_vertices: int = 400):
    """A vertex map k -> l carrying facets onto facets, or None."""
    vk, vl = k.vertices, l.vertices
    if len(vk) != len(vl) or len(k.facets) != len(l.facets):
        return None
    if sorted(map(len, k.facets)) != sorted(map(len, l.facets)):
        return None
    if len(vk) > max_vertices:
        raise ResourceLimitError(f"isomorphism test limited to {max_vertices} vertices")
    if not vk:
        return {}
    ck, cl = _refined_colors(k), _refined_colors(l)
    if Counter(ck.values()) != Counter(cl.values()):
        return None
    gk, gl = k.skeleton_graph(), l.skeleton_graph()
    by_color = defaultdict(list)
    for w in vl:
        by_color[cl[w]].append(w)
    class_size = Counter(ck.values())
    # most constrained vertices first, then grow along the skeleton
    order = []
    placed = set()
    remaining = sorted(vk, key=lambda v: (class_size[ck[v]], v))
    while remaining:
        start = remaining[0]
        queue = [start]
        placed.add(start)
        while queue:
            v = min(queue, key=lambda u: (class_size[ck[u]], u))
            queue.remove(v)
            order.append(v)
            for w in gk.neighbors(v):
                if w not in placed and w in ck:
                    placed.add(w)
                    queue.append(w)
        remaining = [v for v in remaining if v not in placed]
    lfacets = l.facets
    image: dict[int, int] = {}
    used: set[int] = set()
    pos = {v: i for i, v in enumerate(order)}

    def consistent(v: int, w: int) -> bool:
        for u, x in image.items():
            if gk.has_edge(u, v) != gl.has_edge(x, w):
                return False
        for f in k.vertex_star[v]:
            if all(pos[u] <= pos[v] for u in f):
                img = tuple(sorted(image[u] if u != v else w for u in f))
                if img not in lfacets:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in by_color[ck[v]]:
            if w in used or not consistent(v, w):
                continue
            image[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del image[v]
            used.discard(w)
        return False

    return dict(image) if extend(0) else None


def isomorphic(k: SimplicialComplex, l: SimplicialComplex, max_vertices: int = 400) -> bool:
    return isomorphism(k, l, max_vertices) is not None


# ------------------------------------------------------------- text format

def format_complex(k: SimplicialComplex) -> str:
    lines = [str(k.vertex_count)]
    lines += [" ".join(map(str, f)) for f in sorted(k.facets)]
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> SimplicialComplex:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValueError("empty complex file")
    n = int(rows[0][0])
    facets = [tuple(map(int, r)) for r in rows[1:]]
    for f in facets:
        if list(f) != sorted(set(f)):
            raise ValueError(f"facet line {f} is not strictly increasing")
    return SimplicialComplex(n, facets, allow_ghosts=True)


def read_complex(path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def write_complex(k: SimplicialComplex, path) -> None:
    Path(path).write_text(format_complex(k))


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the nonempty faces of k (in face_lists order); facets are maximal flags."""
    faces = [f for level in k.face_lists[1:] for f in level]
    index = {f: i for i, f in enumerate(faces)}
    out = []
    for facet in k.facets:
        for perm in permutations(facet):
            out.append(tuple(index[tuple(sorted(perm[:j]))] for j in range(1, len(perm) + 1)))
    return SimplicialComplex(len(faces), out, trusted=True)
