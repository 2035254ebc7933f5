"""Simplicial homology over Z and over prime fields.

The chain complex is first shrunk by eliminating boundary-matrix entries that
are units (coreductions and collapses first, since those create no fill),
which leaves a small complex with the same homology.  Its boundary matrices
are then brought to Smith normal form densely.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from math import gcd

from .errors import InvariantViolation, ResourceLimitError
from .simplicial import SimplicialComplex, ridge_counts

MAX_FACES_INTEGER = 5_000_000
MAX_FACES_FIELD = 10_000_000


# ------------------------------------------------------------------ chain complex

@dataclass
class ChainComplex:
    """boundaries[k][j] = column of the k-th boundary map for the j-th k-face, as {row: coeff}."""
    face_counts: list[int]
    boundaries: list[list[dict[int, int]]]

    @property
    def top(self) -> int:
        return len(self.face_counts) - 1


def chain_complex(k: SimplicialComplex, limit: int = MAX_FACES_FIELD) -> ChainComplex:
    levels = k.face_lists[1:]  # drop the empty face
    total = sum(map(len, levels))
    if total > limit:
        raise ResourceLimitError(f"{total} faces exceeds bound {limit}")
    boundaries: list[list[dict[int, int]]] = [[{} for _ in levels[0]]] if levels else []
    for dim in range(1, len(levels)):
        index = {f: i for i, f in enumerate(levels[dim - 1])}
        cols = []
        for f in levels[dim]:
            col = {}
            sign = 1
            for i in range(dim + 1):
                col[index[f[:i] + f[i + 1:]]] = sign
                sign = -sign
            cols.append(col)
        boundaries.append(cols)
    return ChainComplex([len(l) for l in levels], boundaries)


def check_boundary_squared(cc: ChainComplex, sample: int | None = None, seed: int = 0) -> None:
    """Raise InvariantViolation unless d_{k} d_{k+1} = 0 (optionally on a random sample of columns)."""
    rng = random.Random(seed)
    for dim in range(2, len(cc.boundaries)):
        cols = cc.boundaries[dim]
        idx = range(len(cols))
        if sample is not None and len(cols) > sample:
            idx = rng.sample(range(len(cols)), sample)
        lower = cc.boundaries[dim - 1]
        for j in idx:
            acc: dict[int, int] = {}
            for r, a in cols[j].items():
                for s, b in lower[r].items():
                    acc[s] = acc.get(s, 0) + a * b
            if any(acc.values()):
                raise InvariantViolation(f"boundary of boundary nonzero at dim {dim}, column {j}")


# ------------------------------------------------------------------ reduction

class _Reducer:
    """Eliminates unit pivots from a chain complex, keeping its homology.

    modulus None means integer coefficients (only +-1 are pivots); a prime
    modulus means GF(p) coefficients (every nonzero entry is a pivot).
    """

    def __init__(self, cc: ChainComplex, modulus: int | None = None):
        self.p = modulus
        self.top = cc.top
        # cols[k][j]: boundary of k-cell j; rows[k][i]: k-cells whose boundary contains (k-1)-cell i
        self.cols: list[dict[int, dict[int, int]]] = []
        self.rows: list[dict[int, set[int]]] = []
        for dim in range(cc.top + 1):
            src = cc.boundaries[dim]
            if self.p is None:
                cols = {j: dict(c) for j, c in enumerate(src)}
            else:
                cols = {j: {r: a % self.p for r, a in c.items() if a % self.p} for j, c in enumerate(src)}
            rows: dict[int, set[int]] = {i: set() for i in range(cc.face_counts[dim - 1])} if dim else {}
            for j, c in cols.items():
                for r in c:
                    rows[r].add(j)
            self.cols.append(cols)
            self.rows.append(rows)
        self.rows.append({j: set() for j in range(cc.face_counts[-1])} if cc.face_counts else {})
        self.frozen: list[set[int]] = [set() for _ in range(cc.top + 1)]
        self.eliminated = 0

    # -- arithmetic
    def _is_unit(self, a: int) -> bool:
        return a in (1, -1) if self.p is None else a % self.p != 0

    def _factor(self, a: int, u: int) -> int:
        """The multiple f with a - f*u = 0."""
        if self.p is None:
            return a * u  # u = +-1
        return a * pow(u, -1, self.p) % self.p

    def alive(self, dim: int) -> list[int]:
        return sorted(self.cols[dim])

    # -- the elementary step
    def eliminate(self, dim: int, sigma: int, tau: int) -> None:
        """Remove the pair (k-cell sigma, (k-1)-cell tau) with unit coefficient <d sigma, tau>."""
        cols, rows = self.cols[dim], self.rows[dim]
        scol = cols[sigma]
        u = scol[tau]
        p = self.p
        for c in list(rows[tau]):
            if c == sigma:
                continue
            ccol = cols[c]
            f = self._factor(ccol[tau], u)
            for r, a in scol.items():
                v = ccol.get(r, 0) - f * a
                if p is not None:
                    v %= p
                if v:
                    if r not in ccol:
                        rows[r].add(c)
                    ccol[r] = v
                elif r in ccol:
                    del ccol[r]
                    rows[r].discard(c)
            self._touched(dim, c)
        # drop column sigma from d_k and row tau
        for r in scol:
            rows[r].discard(sigma)
            self._touched_row(dim, r)
        del cols[sigma]
        del rows[tau]
        # drop row sigma from d_{k+1}
        if dim + 1 <= self.top:
            up_cols = self.cols[dim + 1]
            for c in self.rows[dim + 1].pop(sigma):
                del up_cols[c][sigma]
                self._touched(dim + 1, c)
        else:
            self.rows[dim + 1].pop(sigma, None)
        # drop column tau from d_{k-1}
        down_cols = self.cols[dim - 1]
        down_rows = self.rows[dim - 1]
        for r in down_cols.pop(tau):
            down_rows[r].discard(tau)
            self._touched_row(dim - 1, r)
        self.eliminated += 1

    # hooks for the queue-driven driver
    def _touched(self, dim: int, col: int) -> None:
        pass

    def _touched_row(self, dim: int, row: int) -> None:
        pass


class _CoreductionReducer(_Reducer):
    """Fill-free elimination driven by coreduction/collapse queues, with frozen (critical) cells."""

    def __init__(self, cc, modulus=None):
        super().__init__(cc, modulus)
        self.queue: deque = deque()
        self.zero: list[set[int]] = [set() for _ in range(self.top + 1)]

    def _active_rows(self, dim: int, col: int) -> list[int]:
        fz = self.frozen[dim - 1] if dim else ()
        return [r for r in self.cols[dim][col] if r not in fz]

    def _active_cols(self, dim: int, row: int) -> list[int]:
        fz = self.frozen[dim]
        return [c for c in self.rows[dim][row] if c not in fz]

    def _touched(self, dim, col):
        if col in self.frozen[dim]:
            return
        n_active = len(self._active_rows(dim, col))
        if n_active == 1:
            self.queue.append(("col", dim, col))
        elif n_active == 0:
            self.zero[dim].add(col)

    def _touched_row(self, dim, row):
        if dim >= 1 and row in self.rows[dim] and row not in self.frozen[dim - 1] \
                and len(self._active_cols(dim, row)) == 1:
            self.queue.append(("row", dim, row))

    def _try(self, item) -> bool:
        kind, dim, x = item
        if kind == "col":
            if dim == 0 or x not in self.cols[dim] or x in self.frozen[dim]:
                return False
            act = self._active_rows(dim, x)
            if len(act) != 1:
                return False
            tau = act[0]
            if not self._is_unit(self.cols[dim][x][tau]):
                return False
            self.eliminate(dim, x, tau)
            return True
        if x not in self.rows[dim] or x in self.frozen[dim - 1]:
            return False
        act = self._active_cols(dim, x)
        if len(act) != 1:
            return False
        sigma = act[0]
        if not self._is_unit(self.cols[dim][sigma][x]):
            return False
        self.eliminate(dim, sigma, x)
        return True

    def _drain(self) -> None:
        q = self.queue
        while q:
            self._try(q.popleft())

    def _enqueue_all(self) -> None:
        for dim in range(self.top + 1):
            for c in self.cols[dim]:
                self._touched(dim, c)
            if dim:
                for r in self.rows[dim]:
                    self._touched_row(dim, r)

    def _seed_frozen(self, dim: int, cell: int) -> None:
        self.frozen[dim].add(cell)
        # cells whose active boundary just shrank
        if dim + 1 <= self.top:
            for c in self.rows[dim + 1].get(cell, ()):
                self._touched(dim + 1, c)
        if dim >= 1:
            for r in self.cols[dim][cell]:
                self.queue.append(("row", dim, r))

    def run(self) -> None:
        self._enqueue_all()
        self._drain()
        while True:
            pick = None
            # a cell with no active boundary left is critical: freeze it
            for dim in range(self.top + 1):
                zero = self.zero[dim]
                while zero:
                    c = zero.pop()
                    if c in self.cols[dim] and c not in self.frozen[dim] \
                            and not self._active_rows(dim, c):
                        pick = (dim, c)
                        break
                if pick:
                    break
            if pick is None:
                return
            self._seed_frozen(*pick)
            self._drain()


def _markowitz_reduce(red: _Reducer) -> None:
    """General unit pivots, cheapest estimated fill first, until no unit entry is left."""
    for dim in range(1, red.top + 1):
        while True:
            cols, rows = red.cols[dim], red.rows[dim]
            best = None
            for c, col in cols.items():
                lc = len(col)
                for r, a in col.items():
                    if red._is_unit(a):
                        cost = (lc - 1) * (len(rows[r]) - 1)
                        if best is None or cost < best[0]:
                            best = (cost, c, r)
                            if cost == 0:
                                break
                if best is not None and best[0] == 0:
                    break
            if best is None:
                break
            red.eliminate(dim, best[1], best[2])


def reduce_chain_complex(cc: ChainComplex, modulus: int | None = None) -> _Reducer:
    red = _CoreductionReducer(cc, modulus)
    red.run()
    red.frozen = [set() for _ in red.frozen]
    _markowitz_reduce(red)
    return red


# ------------------------------------------------------------------ Smith normal form

def smith_invariants(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors (each dividing the next) of an integer matrix."""
    a = [row[:] for row in matrix if any(row)]
    if not a:
        return []
    ncols = len(a[0])
    diag = []
    while a:
        # pivot: smallest nonzero absolute value
        best = None
        for i, row in enumerate(a):
            for j, x in enumerate(row):
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[0], a[pi] = a[pi], a[0]
        for row in a:
            row[0], row[pj] = row[pj], row[0]
        while True:
            piv = a[0][0]
            done = True
            # clear the first column
            for i in range(1, len(a)):
                x = a[i][0]
                if x:
                    q = x // piv
                    ri, r0 = a[i], a[0]
                    for j in range(ncols):
                        if r0[j]:
                            ri[j] -= q * r0[j]
                    if ri[0]:
                        done = False
            # clear the first row
            r0 = a[0]
            for j in range(1, ncols):
                x = r0[j]
                if x:
                    q = x // piv
                    for row in a:
                        if row[0]:
                            row[j] -= q * row[0]
                    if r0[j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/col 0 into the pivot
            cand = [(abs(a[i][0]), i, 0) for i in range(len(a)) if a[i][0]]
            cand += [(abs(a[0][j]), 0, j) for j in range(ncols) if a[0][j]]
            _, i, j = min(cand)
            if i:
                a[0], a[i] = a[i], a[0]
            if j:
                for row in a:
                    row[0], row[j] = row[j], row[0]
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:] if any(row[1:])]
        ncols -= 1
    return _divisibility_chain(diag)


def _divisibility_chain(diag: list[int]) -> list[int]:
    d = sorted(x for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def _rank_mod_p(matrix: list[list[int]], p: int) -> int:
    a = [[x % p for x in row] for row in matrix]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        prow = [x * inv % p for x in a[rank]]
        a[rank] = prow
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
        rank += 1
    return rank


# ------------------------------------------------------------------ results

@dataclass
class HomologyGroup:
    free_rank: int = 0
    torsion: list[int] = field(default_factory=list)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass
class HomologyResult:
    groups: list[HomologyGroup]

    def __getitem__(self, k: int) -> HomologyGroup:
        return self.groups[k]

    def __len__(self) -> int:
        return len(self.groups)

    def as_tuple(self) -> tuple:
        """((rank, (torsion...)), ...) for compact comparisons."""
        return tuple((g.free_rank, tuple(g.torsion)) for g in self.groups)

    def betti(self) -> list[int]:
        return [g.free_rank for g in self.groups]

    def report(self) -> str:
        return "".join(f"H_{k} = {g}\n" for k, g in enumerate(self.groups))

    def betti_mod(self, p: int) -> list[int]:
        """Betti numbers over GF(p) by universal coefficients."""
        out = []
        for k, g in enumerate(self.groups):
            t_here = sum(1 for t in g.torsion if t % p == 0)
            t_below = sum(1 for t in self.groups[k - 1].torsion if t % p == 0) if k else 0
            out.append(g.free_rank + t_here + t_below)
        return out


def parse_homology_report(text: str) -> HomologyResult:
    groups = {}
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("H_"):
            continue
        lhs, rhs = line.split("=", 1)
        k = int(lhs.strip()[2:])
        g = HomologyGroup()
        for term in rhs.split("+"):
            term = term.strip()
            if term == "0":
                continue
            if term.startswith("Z/"):
                g.torsion.append(int(term[2:]))
            elif term == "Z":
                g.free_rank = 1
            elif term.startswith("Z^"):
                g.free_rank = int(term[2:])
            else:
                raise ValueError(f"bad homology term {term!r}")
        groups[k] = g
    return HomologyResult([groups[k] for k in sorted(groups)])


def _residual_matrix(red: _Reducer, dim: int) -> tuple[list[list[int]], int, int]:
    """Dense d_dim restricted to surviving cells (rows = (dim-1)-cells)."""
    col_ids = sorted(red.cols[dim])
    row_ids = sorted(red.cols[dim - 1]) if dim else []
    rindex = {r: i for i, r in enumerate(row_ids)}
    mat = [[0] * len(col_ids) for _ in row_ids]
    for j, c in enumerate(col_ids):
        for r, a in red.cols[dim][c].items():
            mat[rindex[r]][j] = a
    return mat, len(row_ids), len(col_ids)


def homology_from_chain_complex(cc: ChainComplex) -> HomologyResult:
    red = reduce_chain_complex(cc, None)
    n = [len(red.cols[d]) for d in range(cc.top + 1)]
    invariants = [[] for _ in range(cc.top + 2)]
    for dim in range(1, cc.top + 1):
        mat, nr, nc = _residual_matrix(red, dim)
        invariants[dim] = smith_invariants(mat) if nr and nc else []
    groups = []
    for k in range(cc.top + 1):
        rank_out = len(invariants[k]) if k else 0
        rank_in = len(invariants[k + 1]) if k + 1 <= cc.top else 0
        tors = [t for t in invariants[k + 1] if t > 1] if k + 1 <= cc.top else []
        groups.append(HomologyGroup(n[k] - rank_out - rank_in, tors))
    return HomologyResult(groups)


def homology_integer(k: SimplicialComplex, limit: int = MAX_FACES_INTEGER) -> HomologyResult:
    """H_*(k; Z) via reduction plus Smith normal form."""
    if k.is_void or k.dimension < 0:
        return HomologyResult([])
    return homology_from_chain_complex(chain_complex(k, limit))


def _betti_field(cc: ChainComplex, p: int) -> list[int]:
    red = reduce_chain_complex(cc, p)
    n = [len(red.cols[d]) for d in range(cc.top + 1)]
    ranks = [0] * (cc.top + 2)
    for dim in range(1, cc.top + 1):
        mat, nr, nc = _residual_matrix(red, dim)
        ranks[dim] = _rank_mod_p(mat, p) if nr and nc else 0
    return [n[k] - ranks[k] - ranks[k + 1] for k in range(cc.top + 1)]


def _betti_rational(cc: ChainComplex) -> list[int]:
    red = reduce_chain_complex(cc, None)
    n = [len(red.cols[d]) for d in range(cc.top + 1)]
    ranks = [0] * (cc.top + 2)
    for dim in range(1, cc.top + 1):
        mat, nr, nc = _residual_matrix(red, dim)
        ranks[dim] = len(smith_invariants(mat)) if nr and nc else 0
    return [n[k] - ranks[k] - ranks[k + 1] for k in range(cc.top + 1)]


def betti(k: SimplicialComplex, coeff="rational", limit: int = MAX_FACES_FIELD,
          cc: ChainComplex | None = None) -> list[int]:
    """Betti numbers over Q (coeff="rational") or GF(p) (coeff=p, a prime)."""
    if cc is None:
        if k.is_void or k.dimension < 0:
            return []
        cc = chain_complex(k, limit)
    if coeff in ("rational", "q", "Q", 0, None):
        return _betti_rational(cc)
    p = int(coeff)
    if p < 2 or p >= 2 ** 31 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"coefficient field needs a prime below 2^31, got {coeff}")
    return _betti_field(cc, p)


@dataclass
class TorsionProbe:
    rational: list[int]
    modular: dict[int, list[int]]

    @property
    def discrepancies(self) -> dict[int, list[int]]:
        """prime -> dimensions where mod-p and rational Betti numbers differ."""
        out = {}
        for p, b in self.modular.items():
            dims = [i for i, (x, y) in enumerate(zip(b, self.rational)) if x != y]
            if dims:
                out[p] = dims
        return out

    @property
    def torsion_free_evidence(self) -> bool:
        return not self.discrepancies


def torsion_probe(k: SimplicialComplex, primes=(2, 3, 5), limit: int = MAX_FACES_FIELD) -> TorsionProbe:
    cc = chain_complex(k, limit)
    return TorsionProbe(betti(k, "rational", cc=cc), {p: betti(k, p, cc=cc) for p in primes})


# ------------------------------------------------------------------ orientability

class Orientability(str, Enum):
    TRUE = "true"
    FALSE = "false"
    NOT_PSEUDOMANIFOLD = "not_pseudomanifold"


def orientable(k: SimplicialComplex) -> Orientability:
    """Propagate facet orientations across ridges; each ridge must lie in exactly two facets."""
    if k.is_void or not k.is_pure() or k.dimension < 1:
        return Orientability.NOT_PSEUDOMANIFOLD
    counts = ridge_counts(k)
    if any(c != 2 for c in counts.values()):
        return Orientability.NOT_PSEUDOMANIFOLD
    by_ridge: dict[tuple, list[tuple[tuple, int]]] = {}
    for f in k.facets:
        for i in range(len(f)):
            by_ridge.setdefault(f[:i] + f[i + 1:], []).append((f, -1 if i % 2 else 1))
    orient: dict[tuple, int] = {}
    for start in sorted(k.facets):
        if start in orient:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            f = stack.pop()
            for i in range(len(f)):
                ridge = f[:i] + f[i + 1:]
                s_f = (-1 if i % 2 else 1) * orient[f]
                for g, s in by_ridge[ridge]:
                    if g == f:
                        continue
                    want = -s_f * s  # induced orientations must cancel
                    if g in orient:
                        if orient[g] != want:
                            return Orientability.FALSE
                    else:
                        orient[g] = want
                        stack.append(g)
    return Orientability.TRUE
