"""Bistellar flips on closed pseudomanifolds and a randomized reduction heuristic.

A move on a k-face F of a d-complex is possible when the star of F is
F * boundary(L) for a (d-k)-simplex L that is not already a face (L is a new
vertex when F is a facet).  The move swaps the star for boundary(F) * L.
Moves with k < d/2 lower the f-vector lexicographically; the heuristic
applies those greedily and makes random non-decreasing moves to escape
local minima.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .simplicial import Answer, SimplicialComplex, is_closed_pseudomanifold, is_pl_sphere, link

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class FlipMove:
    face: tuple[int, ...]
    cofactor: tuple[int, ...]

    def tag(self) -> str:
        """'a-b': a facets replaced by b facets."""
        return f"{len(self.cofactor)}-{len(self.face)}"

    def inverse(self) -> "FlipMove":
        return FlipMove(self.cofactor, self.face)


class _RSet:
    """A set with O(1) uniform random choice."""

    def __init__(self):
        self.items: list = []
        self.pos: dict = {}

    def add(self, x):
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def discard(self, x):
        i = self.pos.pop(x, None)
        if i is None:
            return
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def choice(self, rng: random.Random):
        return self.items[rng.randrange(len(self.items))]

    def __len__(self):
        return len(self.items)

    def __contains__(self, x):
        return x in self.pos


def _proper_faces(f: tuple[int, ...]):
    for size in range(1, len(f)):
        yield from combinations(f, size)


class FlipComplex:
    """Mutable pure complex supporting legal bistellar moves with incremental bookkeeping.

    Legality is tracked incrementally only for the moves that lower the
    f-vector (face dimension k < d/2); the others are tested on demand.
    """

    def __init__(self, k: SimplicialComplex):
        if not k.is_pure() or k.is_void:
            raise ValueError("bistellar moves need a pure non-void complex")
        self.d = k.dimension
        self.tracked = (self.d + 1) // 2
        self.facets: set[tuple[int, ...]] = set()
        self.count: dict[tuple[int, ...], int] = {}
        self.star: dict[int, set[tuple[int, ...]]] = {}
        self.f = [0] * (self.d + 1)
        self.legal = [_RSet() for _ in range(self.tracked)]
        self.next_label = max(k.vertices) + 1 if k.vertices else 0
        for f in k.facets:
            self._add_facet(f, [])
        for face in list(self.count):
            if len(face) <= self.tracked:
                self._refresh(face)

    # ---------------------------------------------------------- bookkeeping
    def _add_facet(self, f, toggled):
        self.facets.add(f)
        self.f[self.d] += 1
        for v in f:
            self.star.setdefault(v, set()).add(f)
        for face in _proper_faces(f):
            c = self.count.get(face, 0)
            if c == 0:
                self.f[len(face) - 1] += 1
                toggled.append(face)
            self.count[face] = c + 1
        toggled.append(f)

    def _remove_facet(self, f, toggled):
        self.facets.remove(f)
        self.f[self.d] -= 1
        for v in f:
            s = self.star[v]
            s.discard(f)
            if not s:
                del self.star[v]
        for face in _proper_faces(f):
            c = self.count[face] - 1
            if c == 0:
                del self.count[face]
                self.f[len(face) - 1] -= 1
                toggled.append(face)
            else:
                self.count[face] = c
        toggled.append(f)

    def is_face(self, s: tuple[int, ...]) -> bool:
        if len(s) == self.d + 1:
            return s in self.facets
        return s in self.count

    def star_of(self, face: tuple[int, ...]) -> list[tuple[int, ...]]:
        if len(face) == 1:
            return list(self.star.get(face[0], ()))
        fs = set(face)
        base = min((self.star.get(v, ()) for v in face), key=len)
        return [f for f in base if fs.issubset(f)]

    def move_for(self, face: tuple[int, ...]) -> FlipMove | None:
        """The legal move on `face`, if there is one."""
        k = len(face) - 1
        if k == self.d:
            return FlipMove(face, (self.next_label,)) if face in self.facets else None
        if self.count.get(face) != self.d - k + 1:
            return None
        fs = set(face)
        cof = set()
        for f in self.star_of(face):
            cof.update(v for v in f if v not in fs)
        if len(cof) != self.d - k + 1:
            return None
        cof_t = tuple(sorted(cof))
        if self.is_face(cof_t):
            return None
        return FlipMove(face, cof_t)

    def _refresh(self, face):
        k = len(face) - 1
        if k >= self.tracked:
            return
        if self.move_for(face) is not None:
            self.legal[k].add(face)
        else:
            self.legal[k].discard(face)

    # ---------------------------------------------------------- moves
    def apply(self, move: FlipMove) -> None:
        face, cof = move.face, move.cofactor
        k = len(face) - 1
        if k == self.d:
            if face not in self.facets or len(cof) != 1 or cof[0] in self.star:
                raise ValueError(f"illegal move {move}")
        else:
            m = self.move_for(face)
            if m is None or m.cofactor != tuple(sorted(cof)):
                raise ValueError(f"illegal move {move}")
        toggled: list = []
        fset = set(face)
        if k == self.d:
            self._remove_facet(face, toggled)
        else:
            for x in cof:
                self._remove_facet(tuple(sorted(fset.union(c for c in cof if c != x))), toggled)
        cset = set(cof)
        for y in face:
            self._add_facet(tuple(sorted(cset.union(v for v in face if v != y))), toggled)
        if k == self.d:
            self.next_label = max(self.next_label, cof[0] + 1)
        self._update_legality(toggled)

    def _update_legality(self, toggled) -> None:
        t = self.tracked
        min_cof = self.d - t + 2       # cofactor size of the largest tracked face
        recheck = set()
        for s in toggled:
            n = len(s)
            if n <= t:
                recheck.add(s)
            for size in range(1, min(n, t + 1)):
                recheck.update(combinations(s, size))
            # faces whose cofactor is s (their star was or becomes blocked)
            if n >= min_cof and n >= 2:
                rest = s[1:]
                x0 = s[0]
                if self.is_face(rest):
                    for f in self.star_of(rest):
                        if x0 not in f:
                            face = tuple(v for v in f if v not in rest)
                            if len(face) <= t:
                                recheck.add(face)
        for face in recheck:
            self._refresh(face)

    # ---------------------------------------------------------- queries
    def faces_containing(self, v: int, size: int) -> set[tuple[int, ...]]:
        out = set()
        for f in self.star.get(v, ()):
            rest = [x for x in f if x != v]
            for c in combinations(rest, size - 1):
                out.add(tuple(sorted((v,) + c)))
        return out

    def legal_moves(self) -> dict[str, list[FlipMove]]:
        out: dict[str, list[FlipMove]] = {}
        for face in sorted(self.count, key=lambda x: (len(x), x)):
            m = self.move_for(face)
            if m is not None:
                out.setdefault(m.tag(), []).append(m)
        out[f"1-{self.d + 1}"] = [FlipMove(f, (self.next_label,)) for f in sorted(self.facets)]
        return out

    def f_key(self) -> tuple[int, ...]:
        return tuple(self.f)

    def is_simplex_boundary(self) -> bool:
        return len(self.star) == self.d + 2 and len(self.facets) == self.d + 2

    def to_complex(self, compact: bool = True) -> SimplicialComplex:
        if compact:
            labels = {v: i for i, v in enumerate(sorted(self.star))}
            return SimplicialComplex(len(labels), [tuple(labels[v] for v in f) for f in self.facets],
                                     trusted=True)
        return SimplicialComplex(self.next_label, self.facets, trusted=True, allow_ghosts=True)


# ---------------------------------------------------------------- functional API

def legal_moves(k: SimplicialComplex) -> dict[str, list[FlipMove]]:
    if not k.is_pure():
        raise ValueError("legal_moves needs a pure complex")
    return FlipComplex(k).legal_moves()


def apply(k: SimplicialComplex, move: FlipMove) -> SimplicialComplex:
    """Apply a legal move; vertex labels are kept (a new vertex gets the label in `move.cofactor`)."""
    fc = FlipComplex(k)
    fc.apply(move)
    n = max(k.vertex_count, fc.next_label)
    return SimplicialComplex(n, fc.facets, trusted=True, allow_ghosts=True)


@dataclass
class ReductionLog:
    moves: list[FlipMove] = field(default_factory=list)

    def format(self) -> str:
        return format_moves(self.moves)


class _Search:
    """State of one reduction run: the complex, an undo log back to the best state, and the target vertex."""

    def __init__(self, fc: FlipComplex, rng: random.Random, log: ReductionLog | None):
        self.fc = fc
        self.rng = rng
        self.log = log
        self.steps = 0
        self.best = fc.f_key()
        self.undo: list[FlipMove] = []
        self.since_best = 0

    def do(self, move: FlipMove, record: bool = True) -> None:
        self.fc.apply(move)
        self.steps += 1
        if self.log is not None:
            self.log.moves.append(move)
        if not record:
            return
        key = self.fc.f_key()
        if key < self.best:
            self.best = key
            self.undo.clear()
            self.since_best = 0
        else:
            self.undo.append(move.inverse())
            self.since_best += 1

    def back_to_best(self) -> None:
        while self.undo:
            self.do(self.undo.pop(), record=False)
        self.since_best = 0

    def heating_moves_at(self, v: int) -> list[tuple[int, FlipMove]]:
        """Legal non-lowering moves on faces through v, scored by the lowest edge degree they cut."""
        fc = self.fc
        out = []
        for size in range(fc.tracked + 1, fc.d + 1):
            for face in fc.faces_containing(v, size):
                m = fc.move_for(face)
                if m is None:
                    continue
                score = min((fc.count[(min(v, a), max(v, a))] for a in face if a != v), default=0)
                out.append((score, m))
        return out

    def random_heating_move(self) -> FlipMove:
        fc = self.fc
        facets = sorted(fc.facets)
        for _ in range(50 * len(facets)):
            f = facets[self.rng.randrange(len(facets))]
            size = self.rng.randrange(fc.tracked + 1, fc.d + 1) if fc.tracked < fc.d else fc.d + 1
            face = tuple(sorted(self.rng.sample(f, size)))
            m = fc.move_for(face)
            if m is not None:
                return m
        return FlipMove(facets[self.rng.randrange(len(facets))], (fc.next_label,))


def reduce(k: SimplicialComplex, seed: int = 0, budget: int = DEFAULT_BUDGET, *,
           stop_at_simplex_boundary: bool = True, patience: int = 2000,
           log: ReductionLog | None = None) -> SimplicialComplex:
    """Randomised greedy descent of the f-vector by bistellar moves.

    Vertex removals are taken whenever possible.  Otherwise the search works
    on one target vertex of small degree: it applies f-lowering moves through
    the target, and when there are none it makes a non-lowering move through
    the target that cuts a low-degree edge at it, which shrinks the target's
    link until the vertex can be removed.  Targets that resist are set aside
    and other f-lowering moves are drained between targets.  After `patience`
    moves without a new best f-vector the search backtracks to the best state.
    Deterministic for a given seed; returns the best complex found with
    compacted labels.
    """
    rng = random.Random(seed)
    fc = FlipComplex(k)
    d = fc.d
    s = _Search(fc, rng, log)
    target = None
    focus = 0
    tabu: set[int] = set()
    best_at_tabu = s.best

    while s.steps < budget:
        if stop_at_simplex_boundary and fc.is_simplex_boundary():
            break
        if s.since_best > patience:
            s.back_to_best()
            target, tabu = None, set()
            continue
        if len(fc.legal[0]):
            s.do(fc.move_for(fc.legal[0].choice(rng)))
            continue
        if target is None or target not in fc.star or focus <= 0:
            if target is not None:
                tabu.add(target)
            target = None
            drained = False
            for kk in range(1, fc.tracked):
                if len(fc.legal[kk]):
                    s.do(fc.move_for(fc.legal[kk].choice(rng)))
                    drained = True
                    break
            if drained:
                continue
            if s.best < best_at_tabu:
                tabu, best_at_tabu = set(), s.best
            free = [v for v in fc.star if v not in tabu]
            if not free:
                tabu = set()
                s.do(s.random_heating_move())
                continue
            target = min(free, key=lambda v: (len(fc.star[v]), rng.random()))
            focus = 4 * (d + 1) + len(fc.star[target])
        # f-lowering moves through the target
        cands = [face for kk in range(1, fc.tracked) for face in fc.faces_containing(target, kk + 1)
                 if face in fc.legal[kk]]
        if cands:
            s.do(fc.move_for(cands[rng.randrange(len(cands))]))
            continue
        heat = s.heating_moves_at(target)
        if not heat:
            focus = 0
            continue
        focus -= 1
        floor = d                        # edge degree at which an edge move becomes possible
        useful = [sc for sc, _ in heat if sc > floor]
        if useful and rng.random() < 0.85:
            lo = min(useful)
            pool = [m for sc, m in heat if sc == lo]
        else:
            pool = [m for _, m in heat]
        s.do(pool[rng.randrange(len(pool))])

    if fc.f_key() != s.best:
        s.back_to_best()
    return fc.to_complex()


# ---------------------------------------------------------------- manifold check

def is_manifold(k: SimplicialComplex, seed: int = 0, budget: int = DEFAULT_BUDGET) -> Answer:
    """Every vertex link a sphere: exact for links of dim <= 2, heuristic above."""
    if k.is_void or not k.is_pure():
        return Answer.NO
    if k.dimension >= 1 and not is_closed_pseudomanifold(k):
        return Answer.NO
    verdict = Answer.YES
    for v in k.vertices:
        a = is_pl_sphere(link(k, (v,)), seed=seed, budget=budget)
        if a is Answer.NO:
            return Answer.NO
        if a is Answer.UNKNOWN:
            verdict = Answer.UNKNOWN
    return verdict


def format_moves(moves: Iterable[FlipMove]) -> str:
    return "".join(f"{m.tag()}\t{' '.join(map(str, m.face))}\t{' '.join(map(str, m.cofactor))}\n"
                   for m in moves)


def parse_moves(text: str) -> list[FlipMove]:
    out = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        _, face, cof = line.split("\t")
        out.append(FlipMove(tuple(map(int, face.split())), tuple(map(int, cof.split()))))
    return out


def replay(k: SimplicialComplex, moves: Iterable[FlipMove]) -> SimplicialComplex:
    fc = FlipComplex(k)
    for m in moves:
        fc.apply(m)
    return fc.to_complex()


def write_log(log: ReductionLog, path) -> None:
    Path(path).write_text(log.format())
