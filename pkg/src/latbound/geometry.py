"""Rational polytopes in vertex representation.

Membership and gauges are decided by exact LP on the vertices. For
full-dimensional polytopes an exact facet description is also available
(``Polytope.halfspaces`` / ``Polytope.difference_halfspaces``); bulk lattice
enumeration uses it, and the tests cross-check it against the LP route.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .arith import (RationalMatrix, dot, lcm_of_denominators, primitive, rank_of,
                    sub, vec)
from .errors import (ContractError, DegenerateBodyError, EmptyIntersectionError,
                     UnsupportedDimensionError)
from .lp import lp_feasible, lp_maximize

INF = math.inf


@dataclass(frozen=True)
class Halfspace:
    """``normal . x <= offset`` with a primitive integer normal."""
    normal: tuple
    offset: Fraction

    def slack(self, x) -> Fraction:
        return self.offset - dot(self.normal, x)


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: tuple

    def __post_init__(self):
        vs = []
        seen = set()
        for v in self.vertices:
            v = vec(v)
            if len(v) != self.dim:
                raise ContractError(f"vertex {v} has length {len(v)}, expected {self.dim}")
            if v not in seen:
                seen.add(v)
                vs.append(v)
        if not vs:
            raise ContractError("a polytope needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(vs))

    @classmethod
    def box(cls, lows: Sequence, highs: Sequence) -> "Polytope":
        return cls(len(lows), tuple(itertools.product(*zip(lows, highs))))

    @cached_property
    def affine_dim(self) -> int:
        v0 = self.vertices[0]
        return rank_of([sub(v, v0) for v in self.vertices[1:]])

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @property
    def is_origin_symmetric(self) -> bool:
        vs = set(self.vertices)
        return all(tuple(-x for x in v) in vs for v in vs)

    @property
    def centroid(self) -> tuple:
        n = len(self.vertices)
        return tuple(sum(col, Fraction(0)) / n for col in zip(*self.vertices))

    def _require_full(self):
        if not self.is_full_dimensional:
            raise DegenerateBodyError(
                f"polytope has affine dimension {self.affine_dim} < {self.dim}")

    @cached_property
    def _scaled(self):
        """(D, integer vertex list) with ``D * vertices`` integral."""
        den = lcm_of_denominators(x for v in self.vertices for x in v)
        return den, [tuple(int(x * den) for x in v) for v in self.vertices]

    @cached_property
    def _candidate_normals(self) -> list:
        """Primitive integer directions containing every facet normal of P and P-P."""
        self._require_full()
        d = self.dim
        if d == 1:
            return [(-1,), (1,)]
        pts = self._scaled[1]
        dirs = set()
        for p, q in itertools.combinations(pts, 2):
            w = primitive(tuple(a - b for a, b in zip(p, q)))
            if next(x for x in w if x) < 0:
                w = tuple(-x for x in w)
            dirs.add(w)
        normals = set()
        for c in _cofactor_normals(sorted(dirs), d):
            c = primitive(c)
            normals.add(c)
            normals.add(tuple(-x for x in c))
        return sorted(normals)

    @cached_property
    def _support_table(self):
        """Integer matrix of (scaled) normal . vertex values and its row maxima."""
        normals = self._candidate_normals
        pts = self._scaled[1]
        table = [[sum(a * b for a, b in zip(c, v)) for v in pts] for c in normals]
        return table, [max(row) for row in table]

    def support(self, c) -> Fraction:
        return max(dot(c, v) for v in self.vertices)

    def _face(self, c) -> list:
        h = self.support(c)
        return [v for v in self.vertices if dot(c, v) == h]

    def _face_indices(self, i) -> list:
        table, maxima = self._support_table
        return [j for j, val in enumerate(table[i]) if val == maxima[i]]

    def _face_rank(self, groups) -> int:
        pts = self._scaled[1]
        spans = []
        for idx in groups:
            base = pts[idx[0]]
            spans += [tuple(a - b for a, b in zip(pts[j], base)) for j in idx[1:]]
        return rank_of(spans)

    @cached_property
    def halfspaces(self) -> tuple:
        """Irredundant facet inequalities of a full-dimensional polytope."""
        den = self._scaled[0]
        maxima = self._support_table[1]
        out = []
        for i, c in enumerate(self._candidate_normals):
            face = self._face_indices(i)
            if len(face) >= self.dim and self._face_rank([face]) == self.dim - 1:
                out.append(Halfspace(c, Fraction(maxima[i], den)))
        return tuple(out)

    @cached_property
    def difference_halfspaces(self) -> tuple:
        """Facet inequalities of the difference body P - P."""
        den = self._scaled[0]
        maxima = self._support_table[1]
        index = {c: i for i, c in enumerate(self._candidate_normals)}
        out = []
        for i, c in enumerate(self._candidate_normals):
            j = index[tuple(-x for x in c)]
            f1, f2 = self._face_indices(i), self._face_indices(j)
            if len(f1) + len(f2) >= self.dim + 1 and self._face_rank([f1, f2]) == self.dim - 1:
                out.append(Halfspace(c, Fraction(maxima[i] + maxima[j], den)))
        return tuple(out)

    def difference_gauge(self, x) -> Fraction:
        """Gauge of P - P at x from the facet description (P full-dimensional)."""
        best = Fraction(0)
        for hs in self.difference_halfspaces:
            val = dot(hs.normal, x) / hs.offset
            if val > best:
                best = val
        return best

    def difference_gauges(self, points) -> list:
        """Exact gauges of P - P at many integer points (vectorised)."""
        hs = self.difference_halfspaces
        if not points:
            return []
        den = self._scaled[0]
        normals = np.array([h.normal for h in hs], dtype=object)
        offsets = [int(h.offset * den) for h in hs]  # D * offset is an integer
        Z = np.array(points, dtype=object)
        nums = Z @ normals.T  # (N, F) exact Python ints
        approx = nums.astype(float) / np.array(offsets, dtype=float)
        guess = np.argmax(approx, axis=1)
        out = []
        for row, g in zip(nums, guess):
            g = int(g)
            top, bot = row[g], offsets[g]
            # confirm the float argmax exactly: top/bot >= row[k]/offsets[k] for all k
            if any(top * offsets[k] < row[k] * bot for k in range(len(offsets))):
                g = max(range(len(offsets)), key=lambda k: Fraction(row[k], offsets[k]))
                top, bot = row[g], offsets[g]
            out.append(max(Fraction(0), Fraction(top * den, bot)))
        return out


def _leibniz_minors(m: np.ndarray) -> np.ndarray:
    """Determinants of a stack of k x k integer matrices, shape (S, k, k)."""
    k = m.shape[1]
    total = np.zeros(m.shape[0], dtype=m.dtype)
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        term = np.ones(m.shape[0], dtype=m.dtype)
        for i, p in enumerate(perm):
            term = term * m[:, i, p]
        total = total - term if inv % 2 else total + term
    return total


def _cofactor_normals(dirs: list, d: int):
    """Normals orthogonal to each linearly independent (d-1)-subset of ``dirs``."""
    subsets = list(itertools.combinations(range(len(dirs)), d - 1))
    if not subsets:
        return []
    biggest = max(abs(x) for w in dirs for x in w)
    exact_int64 = d <= 5 and (biggest ** (d - 1)) * math.factorial(d - 1) * 4 < 2 ** 62
    if not exact_int64:
        return _cofactor_normals_python(dirs, d, subsets)
    arr = np.array(dirs, dtype=np.int64)[np.array(subsets)]  # (S, d-1, d)
    cols = []
    for j in range(d):
        minor = np.delete(arr, j, axis=2)
        cols.append(_leibniz_minors(minor) * (-1) ** j)
    normals = np.stack(cols, axis=1)
    normals = normals[np.any(normals != 0, axis=1)]
    return {tuple(int(x) for x in row) for row in np.unique(normals, axis=0)}


def _cofactor_normals_python(dirs, d, subsets):
    out = set()
    for s in subsets:
        rows = [dirs[i] for i in s]
        c = tuple((-1) ** j * int(RationalMatrix.from_rows(
            [r[:j] + r[j + 1:] for r in rows]).det()) for j in range(d))
        if any(c):
            out.add(c)
    return out


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple = field(default=())

    def __post_init__(self):
        b = tuple(vec(v) for v in self.basis)
        if any(len(v) != self.ambient_dim for v in b):
            raise ContractError("basis vector of the wrong length")
        if rank_of(b) != len(b):
            raise ContractError("subspace basis is linearly dependent")
        object.__setattr__(self, "basis", b)

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors) -> "Subspace":
        """Subspace spanned by arbitrary vectors (greedy independent subset)."""
        chosen = []
        for v in vectors:
            v = vec(v)
            if any(v) and rank_of(chosen + [v]) == len(chosen) + 1:
                chosen.append(v)
        return cls(ambient_dim, tuple(chosen))

    @classmethod
    def full(cls, d: int) -> "Subspace":
        return cls(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def complement_equations(self) -> list:
        """Rows N with ``V = {x : N x = 0}``."""
        if not self.basis:
            return [tuple(Fraction(int(i == j)) for j in range(self.ambient_dim))
                    for i in range(self.ambient_dim)]
        return RationalMatrix.from_rows(self.basis).nullspace()

    def __contains__(self, x) -> bool:
        return all(dot(row, x) == 0 for row in self.complement_equations)

    def coordinates(self, x) -> tuple:
        """Coordinates of x in V with respect to ``basis``."""
        if x not in self:
            raise ContractError(f"{x} does not lie in the subspace")
        if not self.basis:
            return ()
        return RationalMatrix.from_columns(self.basis).solve(vec(x))

    def embed(self, coords) -> tuple:
        out = [Fraction(0)] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            for i, bi in enumerate(b):
                out[i] += c * bi
        return tuple(out)


def _check_dim(P: Polytope, x):
    if len(x) != P.dim:
        raise ContractError(f"point of length {len(x)} for a polytope in dimension {P.dim}")


def contains(P: Polytope, x) -> bool:
    """Exact membership: is x a convex combination of the vertices?"""
    _check_dim(P, x)
    x = vec(x)
    n = len(P.vertices)
    rows = [[v[i] for v in P.vertices] for i in range(P.dim)] + [[1] * n]
    return lp_feasible(rows, list(x) + [1]) is not None


def difference_body(P: Polytope) -> Polytope:
    return Polytope(P.dim, tuple(sub(v, w) for v in P.vertices for w in P.vertices))


def translate(P: Polytope, t) -> Polytope:
    _check_dim(P, t)
    t = vec(t)
    return Polytope(P.dim, tuple(tuple(a + b for a, b in zip(v, t)) for v in P.vertices))


def gauge(D: Polytope, x):
    """min{s >= 0 : x in sD}, or ``INF`` when no positive multiple of x lies in D."""
    _check_dim(D, x)
    if not contains(D, (0,) * D.dim):
        raise ContractError("gauge needs a body containing the origin")
    x = vec(x)
    if not any(x):
        return Fraction(0)
    n = len(D.vertices)
    # variables: theta_1..theta_n, t ; sum theta v - t x = 0, sum theta = 1
    rows = [[v[i] for v in D.vertices] + [-x[i]] for i in range(D.dim)]
    rows.append([1] * n + [0])
    res = lp_maximize([0] * n + [1], rows, [0] * D.dim + [1])
    if res.value == 0:
        return INF
    return 1 / res.value


def gauge_of_difference_in_subspace(P: Polytope, V: Subspace, x):
    """Gauge of (P cap V) - (P cap V) at x in V, via one LP over pairs of points."""
    if P.dim != V.ambient_dim:
        raise ContractError("subspace and polytope live in different dimensions")
    _check_dim(P, x)
    x = vec(x)
    if x not in V:
        raise ContractError(f"{x} is not in the subspace")
    if not any(x):
        return Fraction(0)
    n, d = len(P.vertices), P.dim
    vs = P.vertices
    # variables: alpha (n), beta (n), t
    rows, rhs = [], []
    for row in V.complement_equations:
        rows.append([dot(row, v) for v in vs] + [0] * n + [0])
        rhs.append(0)
    for i in range(d):
        rows.append([v[i] for v in vs] + [-v[i] for v in vs] + [-x[i]])
        rhs.append(0)
    rows.append([1] * n + [0] * n + [0])
    rhs.append(1)
    rows.append([0] * n + [1] * n + [0])
    rhs.append(1)
    res = lp_maximize([0] * (2 * n) + [1], rows, rhs)
    if res.status == "infeasible":
        raise EmptyIntersectionError("polytope does not meet the subspace")
    if res.value == 0:
        return INF
    return 1 / res.value


def hull_2d(points) -> list:
    """Counterclockwise convex hull (monotone chain), collinear points dropped."""
    pts = sorted(set(vec(p) for p in points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def shoelace(cycle) -> Fraction:
    """Signed area of a polygon given as a vertex cycle."""
    s = Fraction(0)
    for (x0, y0), (x1, y1) in zip(cycle, cycle[1:] + cycle[:1]):
        s += x0 * y1 - x1 * y0
    return s / 2


def _det3(a, b, c) -> Fraction:
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def volume_exact(P: Polytope) -> Fraction:
    """Exact Lebesgue volume for full-dimensional polytopes in dimension <= 3."""
    if P.dim > 3:
        raise UnsupportedDimensionError(f"exact volume only for dim <= 3, got {P.dim}")
    P._require_full()
    if P.dim == 1:
        xs = [v[0] for v in P.vertices]
        return max(xs) - min(xs)
    if P.dim == 2:
        return abs(shoelace(hull_2d(P.vertices)))
    c = P.centroid
    vol = Fraction(0)
    for hs in P.halfspaces:
        face = P._face(hs.normal)
        drop = max(range(3), key=lambda i: abs(hs.normal[i]))
        keep = [i for i in range(3) if i != drop]
        lookup = {(v[keep[0]], v[keep[1]]): v for v in face}
        cycle = [lookup[p] for p in hull_2d(lookup)]
        a = sub(cycle[0], c)
        for p, q in zip(cycle[1:], cycle[2:]):
            vol += abs(_det3(a, sub(p, c), sub(q, c)))
    return vol / 6
