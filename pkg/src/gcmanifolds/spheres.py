"""Isomorph-free enumeration of triangulated 2-spheres with few vertices.

Every triangulated 2-sphere on n+1 >= 5 vertices has an edge whose
contraction gives a triangulated sphere on n vertices, so all of them arise
from the n-vertex ones by vertex splits.  Duplicates are removed with a
canonical code computed from the (oriented) rotation system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import graphs
from .errors import ResourceLimitError
from .simplicial import SimplicialComplex, boundary_of_simplex, format_complex, is_flag

MAX_VERTICES = 10


def oriented_triangles(k: SimplicialComplex) -> list[tuple[int, int, int]]:
    """The facets of an orientable closed surface, cyclically oriented consistently."""
    by_edge: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for f in k.facets:
        for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
            by_edge.setdefault(e, []).append(f)
    out: dict[tuple[int, ...], tuple[int, int, int]] = {}
    for start in sorted(k.facets):
        if start in out:
            continue
        out[start] = start
        stack = [start]
        while stack:
            f = stack.pop()
            a, b, c = out[f]
            for x, y in ((a, b), (b, c), (c, a)):
                for g in by_edge[(min(x, y), max(x, y))]:
                    if g == f:
                        continue
                    z = next(v for v in g if v != x and v != y)
                    want = (y, x, z)  # neighbour must traverse the shared edge backwards
                    if g in out:
                        if set(zip(out[g], out[g][1:] + out[g][:1])) != set(zip(want, want[1:] + want[:1])):
                            raise ValueError("surface is not orientable")
                    else:
                        out[g] = want
                        stack.append(g)
    return [out[f] for f in sorted(k.facets)]


def rotation_system(k: SimplicialComplex) -> dict[int, list[int]]:
    """Cyclic neighbour order around each vertex, consistent with one orientation."""
    succ: dict[int, dict[int, int]] = {}
    for a, b, c in oriented_triangles(k):
        succ.setdefault(a, {})[b] = c
        succ.setdefault(b, {})[c] = a
        succ.setdefault(c, {})[a] = b
    rot = {}
    for v, nxt in succ.items():
        start = min(nxt)
        order = [start]
        w = nxt[start]
        while w != start:
            order.append(w)
            w = nxt[w]
        rot[v] = order
    return rot


def canonical_code(k: SimplicialComplex) -> tuple[int, ...]:
    """Isomorphism-invariant code of a triangulated 2-sphere (reflections included)."""
    rot = rotation_system(k)
    pos = {v: {w: i for i, w in enumerate(nb)} for v, nb in rot.items()}
    best = None
    for mirror in (False, True):
        r = {v: (nb[::-1] if mirror else nb) for v, nb in rot.items()}
        p = {v: {w: i for i, w in enumerate(nb)} for v, nb in r.items()} if mirror else pos
        for u in r:
            for v0 in r[u]:
                label = {u: 0}
                first = {u: v0}
                queue = [u]
                code = []
                qi = 0
                while qi < len(queue):
                    x = queue[qi]
                    qi += 1
                    nb = r[x]
                    s = p[x][first[x]]
                    for i in range(len(nb)):
                        w = nb[(s + i) % len(nb)]
                        if w not in label:
                            label[w] = len(label)
                            first[w] = x
                            queue.append(w)
                        code.append(label[w])
                    code.append(-1)
                    if best is not None and code > list(best[:len(code)]):
                        break
                else:
                    t = tuple(code)
                    if best is None or t < best:
                        best = t
    return best


def vertex_splits(k: SimplicialComplex) -> list[SimplicialComplex]:
    rot = rotation_system(k)
    new = k.vertex_count
    out = []
    for v, nb in rot.items():
        deg = len(nb)
        kept = [f for f in k.facets if v not in f]
        for a in range(deg):
            for b in range(a + 1, deg):
                tris = list(kept)
                for i in range(a, b):
                    tris.append((new, nb[i], nb[i + 1]))
                i = b
                while i % deg != a:
                    tris.append((v, nb[i % deg], nb[(i + 1) % deg]))
                    i += 1
                tris.append((v, new, nb[a]))
                tris.append((v, new, nb[b]))
                out.append(SimplicialComplex(new + 1, tris, trusted=True))
    return out


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[tuple[tuple[int, ...], SimplicialComplex], ...]:
    if n == 4:
        k = boundary_of_simplex(4)
        return ((canonical_code(k), k),)
    seen: dict[tuple[int, ...], SimplicialComplex] = {}
    for _, k in _level(n - 1):
        for child in vertex_splits(k):
            code = canonical_code(child)
            if code not in seen:
                seen[code] = child
    return tuple(sorted(seen.items()))


def canonical_relabel(k: SimplicialComplex) -> SimplicialComplex:
    """Relabel a 2-sphere by the BFS labelling that realises its canonical code."""
    code = canonical_code(k)
    # rebuild the labelled neighbour lists from the code itself
    nbrs: list[list[int]] = []
    cur: list[int] = []
    for x in code:
        if x == -1:
            nbrs.append(cur)
            cur = []
        else:
            cur.append(x)
    tris = set()
    for x, nb in enumerate(nbrs):
        for i in range(len(nb)):
            tris.add(tuple(sorted((x, nb[i], nb[(i + 1) % len(nb)]))))
    return SimplicialComplex(k.vertex_count, tris)


def enumerate_2spheres(n: int) -> list[SimplicialComplex]:
    """One representative per isomorphism class of n-vertex triangulated 2-spheres."""
    if n < 4:
        return []
    if n > MAX_VERTICES:
        raise ResourceLimitError(f"sphere enumeration limited to {MAX_VERTICES} vertices")
    return [canonical_relabel(k) for _, k in _level(n)]


def flag_filter(spheres) -> list[SimplicialComplex]:
    return [k for k in spheres if is_flag(k)]


def is_prime(k: SimplicialComplex) -> bool:
    return graphs.is_connected(graphs.complement(k.skeleton_graph()))


@dataclass
class PrimePartition:
    prime: list[SimplicialComplex]
    non_prime: list[SimplicialComplex]


def prime_filter(spheres) -> PrimePartition:
    part = PrimePartition([], [])
    for k in spheres:
        (part.prime if is_prime(k) else part.non_prime).append(k)
    return part


def prime_flag_spheres(n: int) -> list[SimplicialComplex]:
    return prime_filter(flag_filter(enumerate_2spheres(n))).prime


def format_index(n: int, spheres) -> str:
    return "".join(f"{n}\t{i}\t{int(is_flag(k))}\t{int(is_prime(k))}\t{len(k.facets)}\n"
                   for i, k in enumerate(spheres))


def write_catalog(n: int, spheres, directory) -> Path:
    """One complex file per sphere plus ``index.tsv``; returns the index path."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for i, k in enumerate(spheres):
        (d / f"sphere_{n}_{i}.complex").write_text(format_complex(k))
    index = d / "index.tsv"
    index.write_text(format_index(n, spheres))
    return index
