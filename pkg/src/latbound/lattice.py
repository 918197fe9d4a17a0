"""Lattices given by rational bases: exact point enumeration in polytopes,
successive minima with witnesses, and the sublattice of a subspace."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .arith import (RationalMatrix, ceil_q, dot, floor_q, lcm_of_denominators,
                    rank_of, vec)
from .errors import (ContractError, DegenerateBodyError, EmptyIntersectionError,
                     ResourceLimitError)
from .geometry import (Polytope, Subspace, contains, gauge_of_difference_in_subspace,
                       translate)

RADIUS_CAP = 2 ** 20
MAX_PREFIX_ROWS = 20_000_000


class LatticeBasis:
    """Lattice ``{B z : z integer}``; the columns of ``B`` are the generators."""

    def __init__(self, basis: RationalMatrix):
        if basis.rows != basis.cols:
            raise ContractError("lattice basis must be square")
        self.basis = basis
        self.dim = basis.rows
        if self.det_abs == 0:
            raise ContractError("lattice basis is singular")

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence]) -> "LatticeBasis":
        if not generators:
            return cls(RationalMatrix(0, 0, ()))
        return cls(RationalMatrix.from_columns([vec(g) for g in generators]))

    @classmethod
    def standard(cls, d: int) -> "LatticeBasis":
        return cls(RationalMatrix.identity(d))

    @property
    def generators(self) -> list:
        return [self.basis.column(j) for j in range(self.dim)]

    @cached_property
    def det_abs(self) -> Fraction:
        return abs(self.basis.det())

    @cached_property
    def inverse(self) -> RationalMatrix:
        return self.basis.inverse()

    def scaled(self, r) -> "LatticeBasis":
        return LatticeBasis(self.basis.scaled(r))

    def point(self, z) -> tuple:
        return self.basis @ z

    def coords(self, x) -> tuple:
        return self.inverse @ vec(x)

    def contains_vector(self, x) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def __eq__(self, other):
        return isinstance(other, LatticeBasis) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"LatticeBasis({self.basis!r})"


@dataclass(frozen=True)
class MinimaProfile:
    """Successive minima ``lambdas`` (nondecreasing) with achieving lattice vectors."""
    lambdas: tuple
    witnesses: tuple = field(default=())

    def __post_init__(self):
        lams = tuple(Fraction(x) for x in self.lambdas)
        if any(x <= 0 for x in lams):
            raise ContractError("successive minima must be positive")
        if any(a > b for a, b in zip(lams, lams[1:])):
            raise ContractError("successive minima must be nondecreasing")
        object.__setattr__(self, "lambdas", lams)
        object.__setattr__(self, "witnesses", tuple(vec(w) for w in self.witnesses))

    @property
    def dim(self) -> int:
        return len(self.lambdas)

    def _last_at_most(self, threshold) -> int | None:
        k = sum(1 for x in self.lambdas if x <= threshold)
        return k or None

    @property
    def k_sym(self) -> int | None:
        return self._last_at_most(1)

    @property
    def k_asym(self) -> int | None:
        return self._last_at_most(2)


def lattice_polytope(P: Polytope, L: LatticeBasis) -> Polytope:
    """P expressed in the lattice coordinates of L (so that L becomes Z^d)."""
    if P.dim != L.dim:
        raise ContractError(f"polytope dimension {P.dim} != lattice dimension {L.dim}")
    return Polytope(P.dim, tuple(L.coords(v) for v in P.vertices))


def _safe_dtype(ineqs, lows, highs):
    big = max([1] + [abs(a) for n, _ in ineqs for a in n])
    off = max([1] + [abs(b) for _, b in ineqs])
    span = max([1] + [abs(x) for x in list(lows) + list(highs)])
    return np.int64 if (big * span * len(lows) + off) * 4 < 2 ** 62 else object


def _integer_points(ineqs, lows, highs, count_only=False):
    """Integer z in the box with ``a . z <= b`` for each (a, b) in ``ineqs``.

    ``a`` is an integer vector, ``b`` an integer. The last coordinate is solved
    exactly per prefix, so the cost scales with the prefix box only.
    """
    d = len(lows)
    if any(lo > hi for lo, hi in zip(lows, highs)):
        return 0 if count_only else []
    nrows = math.prod(hi - lo + 1 for lo, hi in zip(lows[:-1], highs[:-1]))
    if nrows > MAX_PREFIX_ROWS:
        raise ResourceLimitError(f"enumeration box has {nrows} prefix rows", cap=MAX_PREFIX_ROWS)
    dtype = _safe_dtype(ineqs, lows, highs)
    if d > 1:
        axes = [np.arange(lo, hi + 1, dtype=np.int64).astype(dtype)
                for lo, hi in zip(lows[:-1], highs[:-1])]
        grid = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
    else:
        grid = np.zeros((1, 0), dtype=dtype)
    lo = np.full(len(grid), lows[-1], dtype=dtype)
    hi = np.full(len(grid), highs[-1], dtype=dtype)
    keep = np.ones(len(grid), dtype=bool)
    for a, b in ineqs:
        head = np.array(a[:-1], dtype=np.int64).astype(dtype)
        s = grid @ head if d > 1 else np.zeros(len(grid), dtype=dtype)
        rest = b - s
        al = a[-1]
        if al > 0:
            hi = np.minimum(hi, rest // al)
        elif al < 0:
            lo = np.maximum(lo, -(rest // (-al)))
        else:
            keep &= rest >= 0
    width = np.where(keep, hi - lo + 1, 0)
    width = np.where(width > 0, width, 0)
    if count_only:
        return int(width.sum())
    out = []
    for row, l, w in zip(grid[width > 0], lo[width > 0], width[width > 0]):
        prefix = tuple(int(x) for x in row)
        for t in range(int(w)):
            out.append(prefix + (int(l) + t,))
    return out


def _halfspace_rows(halfspaces, scale=1):
    return [(hs.normal, floor_q(hs.offset * scale)) for hs in halfspaces]


def _box(Q: Polytope, scale=1):
    lows = [ceil_q(min(v[i] for v in Q.vertices) * scale) for i in range(Q.dim)]
    highs = [floor_q(max(v[i] for v in Q.vertices) * scale) for i in range(Q.dim)]
    return lows, highs


def _lattice_coordinate_points(P: Polytope, L: LatticeBasis, count_only=False):
    Q = lattice_polytope(P, L)
    lows, highs = _box(Q)
    if Q.is_full_dimensional:
        return _integer_points(_halfspace_rows(Q.halfspaces), lows, highs, count_only)
    # degenerate bodies: test each candidate of the box by exact LP membership
    pts = [z for z in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs)))
           if contains(Q, z)]
    return len(pts) if count_only else pts


def enumerate_lattice_points(P: Polytope, L: LatticeBasis) -> list:
    """All points of L inside P, in ambient coordinates, sorted by lattice coordinates."""
    zs = sorted(_lattice_coordinate_points(P, L))
    return [L.point(z) for z in zs]


def count_lattice_points(P: Polytope, L: LatticeBasis) -> int:
    return _lattice_coordinate_points(P, L, count_only=True)


def _sign_normalized(z) -> tuple:
    first = next(x for x in z if x)
    return z if first > 0 else tuple(-x for x in z)


def successive_minima(K: Polytope, L: LatticeBasis) -> MinimaProfile:
    """Greedy successive minima: lattice vectors in increasing gauge of K - K,
    keeping each one independent of those already kept."""
    if K.dim != L.dim:
        raise ContractError("dimension mismatch between body and lattice")
    if not K.is_full_dimensional:
        raise DegenerateBodyError("successive minima need a full-dimensional body")
    d = K.dim
    Q = lattice_polytope(K, L)
    hs = Q.difference_halfspaces
    # the unit vectors are independent, so their largest gauge bounds the last minimum
    enough = max(max(Fraction(h.normal[i]) / h.offset for h in hs) for i in range(d))
    widths = [max(v[i] for v in Q.vertices) - min(v[i] for v in Q.vertices) for i in range(d)]
    radius = Fraction(1)
    while True:
        final = radius >= enough
        R = enough if final else radius
        rows = _halfspace_rows(hs, R)
        highs = [floor_q(w * R) for w in widths]
        lows = [-h for h in highs]
        points = sorted({_sign_normalized(z) for z in _integer_points(rows, lows, highs) if any(z)})
        cands = dict(zip(points, Q.difference_gauges(points)))
        chosen, gauges = [], []
        # ties: shortest (l1) integer vector first, then lexicographic
        for z in sorted(cands, key=lambda z: (cands[z], sum(map(abs, z)), z)):
            if rank_of(chosen + [z]) == len(chosen) + 1:
                chosen.append(z)
                gauges.append(cands[z])
                if len(chosen) == d:
                    break
        if len(chosen) == d:
            return MinimaProfile(tuple(2 * g for g in gauges),
                                 tuple(L.point(z) for z in chosen))
        if final:  # pragma: no cover - the unit vectors always qualify
            raise AssertionError("radius bound failed to capture a basis")
        radius *= 2
        if radius > RADIUS_CAP:
            raise ResourceLimitError(f"enumeration radius exceeded {RADIUS_CAP}", cap=RADIUS_CAP)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list:
    """Z-basis of ``{z in Z^n : M z = 0}`` by unimodular column reduction."""
    cols = [[r[j] for r in rows] + [int(i == j) for i in range(ncols)] for j in range(ncols)]
    active = list(range(ncols))
    for i in range(len(rows)):
        while True:
            nz = [j for j in active if cols[j][i] != 0]
            if len(nz) <= 1:
                if nz:
                    active.remove(nz[0])
                break
            p = min(nz, key=lambda j: (abs(cols[j][i]), j))
            for j in nz:
                if j != p:
                    q = cols[j][i] // cols[p][i]
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[p])]
    return [tuple(cols[j][len(rows):]) for j in active]


def sublattice_generators(L: LatticeBasis, V: Subspace) -> list:
    """Ambient-coordinate Z-basis of the full intersection of L with V."""
    if V.ambient_dim != L.dim:
        raise ContractError("dimension mismatch between lattice and subspace")
    eqs = []
    for row in V.complement_equations:
        r = [dot(row, L.basis.column(j)) for j in range(L.dim)]
        den = lcm_of_denominators(r)
        eqs.append([int(x * den) for x in r])
    return [L.point(k) for k in integer_kernel(eqs, L.dim)]


def sublattice_in_subspace(L: LatticeBasis, V: Subspace) -> LatticeBasis:
    """The lattice L cap V as a full-rank lattice in V-coordinates."""
    gens = sublattice_generators(L, V)
    if len(gens) != V.dim:
        raise ContractError("subspace is not spanned by lattice vectors")
    return LatticeBasis.from_generators([V.coordinates(g) for g in gens])


@dataclass(frozen=True)
class Reduction:
    """K translated by a lattice vector so that 0 is in K, restricted to V = span(K cap L).

    The restricted body ``K cap V`` is kept implicit: its difference-body gauge
    is served by :func:`gauge_of_difference_in_subspace`.
    """
    body: Polytope
    translation: tuple
    subspace: Subspace
    sublattice: LatticeBasis
    count: int

    @property
    def already_full(self) -> bool:
        return self.subspace.dim == self.body.dim

    def difference_gauge(self, x):
        return gauge_of_difference_in_subspace(self.body, self.subspace, x)

    def count_sublattice_points(self) -> int:
        """Points of the sublattice (in V) inside K, found by LP membership only."""
        V = self.subspace
        if V.dim == 0:
            return int(contains(self.body, (0,) * self.body.dim))
        gens = [V.embed(col) for col in self.sublattice.generators]
        # a left inverse of the generator matrix bounds sublattice coordinates on K
        G = RationalMatrix.from_columns(gens)
        left = (G.T @ G).inverse() @ G.T
        images = [left @ v for v in self.body.vertices]
        ranges = [range(ceil_q(min(u[i] for u in images)), floor_q(max(u[i] for u in images)) + 1)
                  for i in range(V.dim)]
        total = 0
        for u in itertools.product(*ranges):
            if contains(self.body, G @ u):
                total += 1
        return total


def reduce_to_span(K: Polytope, L: LatticeBasis) -> Reduction:
    pts = enumerate_lattice_points(K, L)
    if not pts:
        raise EmptyIntersectionError("the body contains no lattice points")
    zero = (Fraction(0),) * K.dim
    shift = zero if zero in pts else tuple(-x for x in pts[0])
    body = translate(K, shift)
    moved = [tuple(a + b for a, b in zip(p, shift)) for p in pts]
    V = Subspace.spanned_by(K.dim, moved)
    return Reduction(body, shift, V, sublattice_in_subspace(L, V), len(pts))
