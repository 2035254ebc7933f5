"""Hom complexes Hom(G, H) as prodsimplicial complexes.

A cell is a tuple of colour-set bitmasks, one per vertex of G; bit c of
``cell[i]`` set means colour c (0-based) is in the set at position i.  A tuple
is a cell iff every set is non-empty and, for each edge uv of G, every colour
at u is adjacent in H to every colour at v.
"""

from __future__ import annotations

import math
from itertools import product
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from . import graphs
from .errors import InvariantViolation, ResourceLimitError
from .graphs import Graph, _bits
from .simplicial import SimplicialComplex, clique_complex, independence_complex, join, link

MAX_CELLS = 10_000_000

Cell = tuple[int, ...]


def color_class(cell: Cell, color: int) -> list[int]:
    """Positions whose colour set contains `color` (the colour class of a multi-colouring)."""
    return [i for i, mask in enumerate(cell) if mask >> color & 1]


def cell_dimension(cell: Cell) -> int:
    return sum(m.bit_count() - 1 for m in cell)


def is_vertex(cell: Cell) -> bool:
    return all(m.bit_count() == 1 for m in cell)


def cell_from_coloring(coloring: Sequence[int]) -> Cell:
    return tuple(1 << c for c in coloring)


def coloring_of(cell: Cell) -> tuple[int, ...]:
    if not is_vertex(cell):
        raise ValueError("cell is not a vertex")
    return tuple(m.bit_length() - 1 for m in cell)


class _Compat:
    """Common-neighbourhood masks of colour sets in H, memoised."""

    def __init__(self, h: Graph):
        if h.vertex_count > 64:
            raise ValueError("target graph limited to 64 vertices")
        self.adj = h.adjacency
        self.full = (1 << h.vertex_count) - 1
        self._cache: dict[int, int] = {}

    def common(self, mask: int) -> int:
        out = self._cache.get(mask)
        if out is None:
            out = self.full
            for c in _bits(mask):
                out &= self.adj[c]
            self._cache[mask] = out
        return out


def is_valid_cell(g: Graph, h: Graph, cell: Cell) -> bool:
    if len(cell) != g.vertex_count or any(m == 0 for m in cell):
        return False
    comp = _Compat(h)
    return all(cell[v] & ~comp.common(cell[u]) == 0 for u, v in g.edges)


def _subsets_ascending(mask: int):
    sub = (0 - mask) & mask
    while sub:
        yield sub
        sub = (sub - mask) & mask


def _enumerate_cells(g: Graph, h: Graph, *, singletons: bool = False, maximal: bool = False,
                     limit: int = MAX_CELLS) -> list[Cell]:
    m = g.vertex_count
    comp = _Compat(h)
    earlier = [[j for j in g.neighbors(i) if j < i] for i in range(m)]
    # positions whose closed neighbourhood is fully assigned once position i is
    closes_at: list[list[int]] = [[] for _ in range(m)]
    for j in range(m):
        closes_at[max([j] + g.neighbors(j))].append(j)
    nbrs = [g.neighbors(i) for i in range(m)]
    cell = [0] * m
    out: list[Cell] = []

    def rec(i: int):
        if i == m:
            out.append(tuple(cell))
            if len(out) > limit:
                raise ResourceLimitError(f"more than {limit} cells")
            return
        allowed = comp.full
        for j in earlier[i]:
            allowed &= comp.common(cell[j])
        if singletons:
            choices = (1 << c for c in _bits(allowed))
        else:
            choices = _subsets_ascending(allowed)
        for a in choices:
            cell[i] = a
            if maximal:
                ok = True
                for j in closes_at[i]:
                    room = comp.full
                    for k in nbrs[j]:
                        room &= comp.common(cell[k])
                    if room & ~cell[j]:
                        ok = False
                        break
                if not ok:
                    continue
            rec(i + 1)
        cell[i] = 0

    if m == 0:
        return [()]
    rec(0)
    return out


def homomorphisms(g: Graph, h: Graph) -> list[tuple[int, ...]]:
    """All graph homomorphisms g -> h as colour tuples, in lexicographic order."""
    return [coloring_of(c) for c in _enumerate_cells(g, h, singletons=True)]


@dataclass(frozen=True, eq=False)
class HomComplex:
    g: Graph
    h: Graph
    cells: tuple[Cell, ...]
    mode: str  # "all_cells" or "facets_only"

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        """The homomorphisms lying in some cell, in lexicographic order."""
        out = set()
        for c in self.facets:
            out.update(product(*(_bits(m) for m in c)))
        return sorted(out)

    @cached_property
    def vertex_index(self) -> dict[tuple[int, ...], int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def dimension(self) -> int:
        return max((cell_dimension(c) for c in self.cells), default=-1)

    @cached_property
    def facets(self) -> list[Cell]:
        if self.mode == "facets_only":
            return list(self.cells)
        return _maximal_cells(self.cells)

    @cached_property
    def all_cells(self) -> list[Cell]:
        if self.mode == "all_cells":
            return list(self.cells)
        return sorted(_faces_of_cells(self.cells))

    def cell_counts(self) -> list[int]:
        """Number of cells in each dimension."""
        counts = [0] * (self.dimension + 1)
        for c in self.all_cells:
            counts[cell_dimension(c)] += 1
        return counts

    def euler(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.cell_counts()))

    @property
    def is_empty(self) -> bool:
        return not self.cells

    @property
    def n_colors(self) -> int:
        return self.h.vertex_count

    def __repr__(self) -> str:
        return (f"HomComplex(|V(G)|={self.g.vertex_count}, |V(H)|={self.h.vertex_count}, "
                f"mode={self.mode}, cells={len(self.cells)}, dim={self.dimension})")


def _maximal_cells(cells: Iterable[Cell]) -> list[Cell]:
    cells = sorted(cells, key=lambda c: -cell_dimension(c))
    kept: list[Cell] = []
    for c in cells:
        if not any(all(a & ~b == 0 for a, b in zip(c, f)) for f in kept
                   if cell_dimension(f) > cell_dimension(c)):
            kept.append(c)
    return sorted(kept)


def _faces_of_cells(cells: Iterable[Cell]) -> set[Cell]:
    out: set[Cell] = set()
    stack = list(cells)
    while stack:
        c = stack.pop()
        if c in out:
            continue
        out.add(c)
        for i, mask in enumerate(c):
            if mask.bit_count() > 1:
                for b in _bits(mask):
                    face = c[:i] + (mask & ~(1 << b),) + c[i + 1:]
                    if face not in out:
                        stack.append(face)
    return out


def build_hom(g: Graph, h: Graph, mode: str = "facets_only", limit: int = MAX_CELLS) -> HomComplex:
    if mode not in ("all_cells", "facets_only"):
        raise ValueError(f"unknown mode {mode!r}")
    cells = _enumerate_cells(g, h, maximal=(mode == "facets_only"), limit=limit)
    if g.vertex_count == 0:
        cells = [()]
    return HomComplex(g, h, tuple(cells), mode)


def hom_to_complete(g: Graph, n: int, mode: str = "facets_only") -> HomComplex:
    return build_hom(g, graphs.complete(n), mode)


def hom_dimension(hc: HomComplex) -> int:
    return hc.dimension


# ----------------------------------------------------------------- components

class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def hom_edges(hc: HomComplex) -> list[tuple[int, int]]:
    """1-cells as pairs of vertex indices (i < j)."""
    g, comp = hc.g, _Compat(hc.h)
    index = hc.vertex_index
    edges = set()
    for a, phi in enumerate(hc.vertices):
        for i in range(g.vertex_count):
            room = comp.full
            for j in g.neighbors(i):
                room &= comp.adj[phi[j]]
            for c in _bits(room & ~(1 << phi[i])):
                b = index[phi[:i] + (c,) + phi[i + 1:]]
                edges.add((min(a, b), max(a, b)))
    return sorted(edges)


def component_labels(hc: HomComplex) -> list[int]:
    """Component id (smallest vertex index in the component) per vertex."""
    dsu = _DSU(len(hc.vertices))
    for a, b in hom_edges(hc):
        dsu.union(a, b)
    return [dsu.find(i) for i in range(len(hc.vertices))]


def components(hc: HomComplex) -> list[HomComplex]:
    labels = component_labels(hc)
    index = hc.vertex_index
    groups: dict[int, list[Cell]] = {}
    for c in hc.cells:
        base = tuple((m & -m).bit_length() - 1 for m in c)
        groups.setdefault(labels[index[base]], []).append(c)
    return [HomComplex(hc.g, hc.h, tuple(groups[k]), hc.mode) for k in sorted(groups)]


def component_sizes(hc: HomComplex) -> list[int]:
    labels = component_labels(hc)
    counts: dict[int, int] = {}
    for lab in labels:
        counts[lab] = counts.get(lab, 0) + 1
    return [counts[k] for k in sorted(counts)]


# ----------------------------------------------------------------- vertex links

@dataclass(frozen=True)
class VertexLink:
    complex: SimplicialComplex
    labels: list[tuple[int, int]]  # link vertex -> (position, added colour)


def vertex_link(hc: HomComplex, phi: Sequence[int]) -> VertexLink:
    """Link of the vertex `phi` (a colour tuple) read off the face poset above it.

    Link vertices are the pairs (position i, colour c) with c != phi[i] whose
    one-step augmentation is a cell; a set of pairs is a face iff augmenting
    phi by all of them at once is a cell.
    """
    g, h = hc.g, hc.h
    phi = tuple(phi)
    base = cell_from_coloring(phi)
    if len(phi) != g.vertex_count or not is_valid_cell(g, h, base):
        raise ValueError(f"{phi} is not a vertex of the Hom complex")
    comp = _Compat(h)
    labels = []
    for i in range(g.vertex_count):
        room = comp.full
        for j in g.neighbors(i):
            room &= comp.adj[phi[j]]
        labels += [(i, c) for c in _bits(room & ~(1 << phi[i]))]
    # pairwise compatibility graph; faces of the link are its cliques
    n = len(labels)
    edges = []
    for a in range(n):
        i, c = labels[a]
        for b in range(a + 1, n):
            j, e = labels[b]
            if i == j or not g.has_edge(i, j) or h.has_edge(c, e):
                edges.append((a, b))
    lk = clique_complex(Graph(n, frozenset(edges)))
    for facet in lk.facets:
        cell = list(base)
        for a in facet:
            i, c = labels[a]
            cell[i] |= 1 << c
        if not is_valid_cell(g, h, tuple(cell)):
            raise InvariantViolation(f"link facet {facet} does not augment to a cell")
    return VertexLink(lk, labels)


def vertex_link_via_join(g: Graph, n: int, phi: Sequence[int]) -> SimplicialComplex:
    """Join over colours i of link_{Ind(g)}(colour class i of phi)."""
    if not graphs.is_proper_coloring(g, phi) or any(not 0 <= c < n for c in phi):
        raise ValueError(f"{tuple(phi)} is not a proper {n}-colouring")
    ind = independence_complex(g)
    out = SimplicialComplex(0, [()], trusted=True)
    for color in range(n):
        klass = [v for v in range(g.vertex_count) if phi[v] == color]
        out = join(out, link(ind, klass))
    return out


# ----------------------------------------------------------------- count checks

def odd_complement_prediction(r: int) -> dict:
    length = 2 * r * r + 3 * r + 1
    return {"vertices": length * math.factorial(r), "components": math.factorial(r),
            "cycle_length": length}


@dataclass
class CountCheck:
    r: int
    family: str
    predicted: dict
    enumerated: dict | None

    @property
    def ok(self) -> bool:
        return self.enumerated is not None and all(
            self.enumerated[k] == v for k, v in self.predicted.items() if k in self.enumerated)


def count_checks(r: int, family: str, enumerate_up_to: int = 4) -> CountCheck:
    """Compare closed-form counts with enumeration for Hom(complement(C_m), K_{r+1})."""
    from . import formulas
    if r < 2:
        raise ValueError("r >= 2 required")
    if family == "odd_complement":
        predicted = odd_complement_prediction(r)
        m = 2 * r + 1
    elif family == "even_complement":
        s = formulas.cubical_surface_counts(r)
        predicted = {"vertices": s.vertices, "edges": s.edges, "squares": s.squares,
                     "genus": s.genus}
        m = 2 * r
    else:
        raise ValueError(f"unknown family {family!r}")
    if r > enumerate_up_to:
        return CountCheck(r, family, predicted, None)
    g = graphs.complement(graphs.cycle(m))
    h = graphs.complete(r + 1)
    if family == "odd_complement":
        hc = build_hom(g, h, "facets_only")
        sizes = component_sizes(hc)
        edges = hom_edges(hc)
        enumerated = {"vertices": len(hc.vertices), "components": len(sizes),
                      "cycle_length": sizes[0] if len(set(sizes)) == 1 else -1,
                      "edges": len(edges), "dimension": hc.dimension}
    else:
        hc = build_hom(g, h, "all_cells")
        counts = hc.cell_counts()
        enumerated = {"vertices": counts[0], "edges": counts[1],
                      "squares": counts[2] if len(counts) > 2 else 0,
                      "genus": (2 - hc.euler()) // 2}
    return CountCheck(r, family, predicted, enumerated)


# ----------------------------------------------------------------- cell file format

def format_cell(cell: Cell) -> str:
    return ";".join(",".join(str(c + 1) for c in _bits(m)) for m in cell)


def parse_cell(text: str) -> Cell:
    return tuple(sum(1 << (int(c) - 1) for c in part.split(",")) for part in text.strip().split(";"))


def format_cells(hc: HomComplex, graph_name: str = "-") -> str:
    lines = [f"# hom g={graph_name} h=K{hc.h.vertex_count}",
             f"# mode={hc.mode} positions={hc.g.vertex_count}",
             f"# graph {' '.join(f'{u}-{v}' for u, v in hc.g.sorted_edges())}"]
    lines += [format_cell(c) for c in sorted(hc.cells)]
    return "\n".join(lines) + "\n"


def parse_cells(text: str) -> HomComplex:
    """Inverse of :func:`format_cells`; the target must be a complete graph K<n>."""
    n = None
    mode = "facets_only"
    m = None
    edges = []
    cells = []
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            for tok in s[1:].split():
                if tok.startswith("h=K"):
                    n = int(tok[3:])
                elif tok.startswith("mode="):
                    mode = tok[5:]
                elif tok.startswith("positions="):
                    m = int(tok[10:])
                elif "-" in tok and tok.replace("-", "").isdigit():
                    u, v = tok.split("-")
                    edges.append((int(u), int(v)))
            continue
        cells.append(parse_cell(s))
    if n is None or m is None:
        raise ValueError("cell file header missing h=K<n> or positions=")
    g = Graph.from_edges(m, edges)
    h = graphs.complete(n)
    for c in cells:
        if not is_valid_cell(g, h, c):
            raise ValueError(f"invalid cell {format_cell(c)}")
    return HomComplex(g, h, tuple(cells), mode)


def read_cells(path) -> HomComplex:
    return parse_cells(Path(path).read_text())


def write_cells(hc: HomComplex, path, graph_name: str = "-") -> None:
    Path(path).write_text(format_cells(hc, graph_name))
