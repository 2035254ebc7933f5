"""Closed forms for the Hom complexes of cycle complements, plus dimension and connectivity bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


@lru_cache(maxsize=None)
def f_rs(r: int, s: int) -> int:
    """Number of spheres in the wedge Hom(K_r, K_s) is homotopy equivalent to."""
    if r < 1 or s < 1:
        raise ValueError("r, s >= 1 required")
    if r == 1:
        return 0
    if r > s:
        return 0
    if r == s:
        return math.factorial(r) - 1
    return r * f_rs(r - 1, s - 1) + (r - 1) * f_rs(r, s - 1)


def f_r_rplus1_closed(r: int) -> int:
    return math.factorial(r) * (r * r - r - 2) // 2 + 1


@dataclass(frozen=True)
class SurfaceCounts:
    genus: int
    vertices: int
    edges: int
    squares: int


def cubical_surface_counts(r: int) -> SurfaceCounts:
    """Genus and cell counts of the cubical surface Hom(complement(C_2r), K_{r+1})."""
    if r < 2:
        raise ValueError("r >= 2 required")
    g = f_r_rplus1_closed(r)
    n = (2 + r * r) * math.factorial(r + 1)
    squares = n + 2 * g - 2
    return SurfaceCounts(genus=g, vertices=n, edges=2 * squares, squares=squares)


@dataclass(frozen=True)
class Bounds:
    dim_hom: int
    chi_lower: int
    connectivity_lower: int


def bounds(d: int, m: int, n: int, chi: int = 0, s: int = 0) -> Bounds:
    """Bounds for G = complement of the 1-skeleton of a flag d-sphere on m vertices.

    dim_hom is the dimension of Hom(G, K_n); chi_lower = ceil(m/(d+1));
    connectivity_lower = n - s - 2 for G of maximal degree s.
    """
    if d < 0:
        raise ValueError("d >= 0 required")
    return Bounds(dim_hom=n * (d + 1) - m, chi_lower=-(-m // (d + 1)),
                  connectivity_lower=n - s - 2)


def odd_complement_vertices(r: int) -> int:
    return (2 * r * r + 3 * r + 1) * math.factorial(r)


def formula_table(r_values, s_values=None) -> str:
    """Plain-text table of f(r,s) (if s_values given) or of the cubical surface counts."""
    lines = []
    if s_values is not None:
        lines.append("r\ts\tf(r,s)")
        for r in r_values:
            for s in s_values:
                lines.append(f"{r}\t{s}\t{f_rs(r, s)}")
    else:
        lines.append("r\tgenus\tvertices\tedges\tsquares\todd_vertices")
        for r in r_values:
            c = cubical_surface_counts(r)
            lines.append(f"{r}\t{c.genus}\t{c.vertices}\t{c.edges}\t{c.squares}\t"
                         f"{odd_complement_vertices(r)}")
    return "\n".join(lines) + "\n"
