"""Fibre-wise contraction of a convex polygon along a line (two-dimensional
squeezing with a one-dimensional subspace).

Every fibre of A parallel to ``direction`` is shrunk by the factor ``mu``
about its midpoint. Areas and the longest fibre both scale by exactly ``mu``,
and the difference set of A' along the line is ``mu`` times that of A.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import dot, fmt, vec
from .errors import ContractError
from .geometry import Polytope, contains, hull_2d, shoelace


@dataclass(frozen=True)
class Polygon:
    """A simple polygon as a vertex cycle; need not be convex."""
    vertices: tuple

    @property
    def area(self) -> Fraction:
        return abs(shoelace(list(self.vertices)))


@dataclass(frozen=True)
class SqueezeResult:
    A_prime: Polygon
    mu: Fraction
    direction: tuple
    area_A: Fraction
    area_A_prime: Fraction
    max_fiber_A: Fraction
    max_fiber_A_prime: Fraction


def _frame(direction):
    u = vec(direction)
    n = (-u[1], u[0])
    uu = dot(u, u)

    def to_ws(x):
        return dot(x, n) / uu, dot(x, u) / uu

    def from_ws(w, s):
        return (s * u[0] + w * n[0], s * u[1] + w * n[1])

    return to_ws, from_ws


def _fibers(cycle_ws):
    """(w, bot, top) at every vertex abscissa of a fibre-convex polygon in (w, s) frame."""
    ws = sorted({p[0] for p in cycle_ws})
    edges = list(zip(cycle_ws, cycle_ws[1:] + cycle_ws[:1]))
    out = []
    for w in ws:
        hits = []
        for (w0, s0), (w1, s1) in edges:
            if w0 == w1:
                if w0 == w:
                    hits += [s0, s1]
            elif min(w0, w1) <= w <= max(w0, w1):
                hits.append(s0 + (s1 - s0) * (w - w0) / (w1 - w0))
        out.append((w, min(hits), max(hits)))
    return out


def max_fiber(vertices, direction) -> Fraction:
    """Longest chord parallel to ``direction``, in multiples of ``direction``."""
    to_ws, _ = _frame(direction)
    return max(top - bot for _, bot, top in _fibers([to_ws(v) for v in vertices]))


def squeeze_polygon(K: Polytope, A: Polytope, direction, mu) -> SqueezeResult:
    mu = Fraction(mu)
    direction = vec(direction)
    if not 0 < mu <= 1:
        raise ContractError(f"mu must lie in (0, 1], got {mu}")
    if K.dim != 2 or A.dim != 2 or len(direction) != 2:
        raise ContractError("squeezing is implemented for planar polygons only")
    if not any(direction):
        raise ContractError("direction must be nonzero")
    if not A.is_full_dimensional:
        raise ContractError("A must be a full-dimensional polygon")
    if not all(contains(K, v) for v in A.vertices):
        raise ContractError("A is not contained in K")

    to_ws, from_ws = _frame(direction)
    hull = hull_2d(A.vertices)
    fibers = _fibers([to_ws(v) for v in hull])
    hi_w, lo_w = (1 + mu) / 2, (1 - mu) / 2
    upper, lower = [], []
    for w, bot, top in fibers:
        lower.append((w, lo_w * top + hi_w * bot))
        upper.append((w, hi_w * top + lo_w * bot))
    squeezed_lengths = [t[1] - b[1] for t, b in zip(upper, lower)]
    cycle = []
    for p in lower + upper[::-1]:
        if not cycle or cycle[-1] != p:
            cycle.append(p)
    if len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle.pop()
    a_prime = Polygon(tuple(from_ws(w, s) for w, s in cycle))
    return SqueezeResult(
        A_prime=a_prime,
        mu=mu,
        direction=direction,
        area_A=abs(shoelace(hull)),
        area_A_prime=a_prime.area,
        max_fiber_A=max(t - b for _, b, t in fibers),
        max_fiber_A_prime=max(squeezed_lengths),
    )


def verify_difference_containment(result: SqueezeResult, A: Polytope) -> bool:
    """Along the line, (A'-A') is the segment of half-length max_fiber(A'); the
    containment in mu (A - A) is therefore max_fiber(A') <= mu * max_fiber(A).
    The recorded fibre lengths must also match the polygons themselves."""
    measured_prime = max_fiber(list(result.A_prime.vertices), result.direction)
    measured = max_fiber(hull_2d(A.vertices), result.direction)
    if (measured_prime, measured) != (result.max_fiber_A_prime, result.max_fiber_A):
        return False
    return result.max_fiber_A_prime <= result.mu * result.max_fiber_A


def verify_nesting(result: SqueezeResult, A: Polytope, K: Polytope) -> bool:
    """A' inside A inside K (A convex, so vertex membership suffices)."""
    return (all(contains(A, v) for v in result.A_prime.vertices)
            and all(contains(K, v) for v in A.vertices))


def polygon_text(vertices) -> str:
    """Plain-text vertex list, one ``x y`` pair per line, for external plotting."""
    return "\n".join(f"{fmt(x)} {fmt(y)}" for x, y in vertices)
