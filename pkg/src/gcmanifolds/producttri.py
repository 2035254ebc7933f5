"""Staircase triangulation of Hom complexes, without new vertices.

Every cell (A_1, ..., A_m) is a product of simplices whose vertices form the
grid A_1 x ... x A_m.  Ordering each A_i by colour and the grid
componentwise, the top simplices of the cell are the maximal chains of the
grid.  A single global colour order makes the triangulations of two cells
agree on their common faces.
"""

from __future__ import annotations

import math
from pathlib import Path

from .errors import ResourceLimitError
from .graphs import _bits
from .homcomplex import HomComplex, format_cell, cell_from_coloring
from .simplicial import SimplicialComplex

MAX_SIMPLICES = 5_000_000


def multinomial(parts) -> int:
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out


def staircase_chains(sizes: list[int]) -> list[list[tuple[int, ...]]]:
    """All maximal chains in the grid prod range(size_i), as lists of grid points."""
    total = sum(s - 1 for s in sizes)
    chains = []
    point = [0] * len(sizes)
    path = [tuple(point)]

    def rec(step: int):
        if step == total:
            chains.append(list(path))
            return
        for i, s in enumerate(sizes):
            if point[i] + 1 < s:
                point[i] += 1
                path.append(tuple(point))
                rec(step + 1)
                path.pop()
                point[i] -= 1

    rec(0)
    return chains


def triangulate_cell(cell, vertex_index: dict) -> list[tuple[int, ...]]:
    colors = [_bits(m) for m in cell]
    active = [i for i, cs in enumerate(colors) if len(cs) > 1]
    base = [cs[0] for cs in colors]
    out = []
    for chain in staircase_chains([len(colors[i]) for i in active]):
        simplex = []
        for point in chain:
            phi = list(base)
            for i, k in zip(active, point):
                phi[i] = colors[i][k]
            simplex.append(vertex_index[tuple(phi)])
        out.append(tuple(sorted(simplex)))
    return out


def product_triangulation(hc: HomComplex, limit: int = MAX_SIMPLICES) -> SimplicialComplex:
    index = hc.vertex_index
    simplices: set[tuple[int, ...]] = set()
    for cell in hc.facets:
        simplices.update(triangulate_cell(cell, index))
        if len(simplices) > limit:
            raise ResourceLimitError(f"more than {limit} top simplices")
    # chains through a whole maximal cell are never faces of another cell's chains
    return SimplicialComplex(len(hc.vertices), simplices, trusted=True)


def expected_top_simplices(hc: HomComplex) -> int:
    return sum(multinomial([m.bit_count() - 1 for m in c]) for c in hc.facets)


def format_vertex_table(hc: HomComplex) -> str:
    return "".join(f"{i}\t{format_cell(cell_from_coloring(phi))}\n"
                   for i, phi in enumerate(hc.vertices))


def write_vertex_table(hc: HomComplex, path) -> None:
    Path(path).write_text(format_vertex_table(hc))
