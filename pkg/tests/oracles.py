"""Independent brute-force references used by the tests."""
from fractions import Fraction
from itertools import combinations, product

from latbound.arith import rank_of


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def planar_edges(points):
    """Supporting lines (n, h) with n.x <= h of conv(points), by testing every pair."""
    pts = sorted(set(points))
    edges = set()
    for a, b in combinations(pts, 2):
        sides = [_cross(a, b, p) for p in pts]
        if all(s <= 0 for s in sides) or all(s >= 0 for s in sides):
            n = (b[1] - a[1], a[0] - b[0])
            h = n[0] * a[0] + n[1] * a[1]
            if any(n[0] * p[0] + n[1] * p[1] > h for p in pts):
                n, h = (-n[0], -n[1]), -h
            edges.add((n, h))
    return list(edges)


def difference_gauge_2d(vertices):
    """Gauge of K - K in the plane from brute-force supporting lines."""
    diffs = [(a[0] - b[0], a[1] - b[1]) for a in vertices for b in vertices]
    edges = [(n, h) for n, h in planar_edges(diffs) if h > 0]

    def g(x):
        return max([Fraction(0)] + [Fraction(n[0] * x[0] + n[1] * x[1]) / h for n, h in edges])
    return g


def minima_brute_force_2d(body, lattice):
    """Successive minima straight from the definition: the smallest radius
    whose gauge ball holds i independent lattice vectors, scanning the whole box."""
    g = difference_gauge_2d(body.vertices)
    gens = lattice.generators
    G = max(g(v) for v in gens)            # two independent vectors within G
    inv = lattice.inverse
    diffs = [tuple(G * (a - b) for a, b in zip(v, w)) for v in body.vertices for w in body.vertices]
    coords = [inv @ p for p in diffs]
    ranges = [range(int(min(c[i] for c in coords)) - 1, int(max(c[i] for c in coords)) + 2)
              for i in range(2)]
    found = []
    for z in product(*ranges):
        if z == (0, 0):
            continue
        x = lattice.point(z)
        val = g(x)
        if val <= G:
            found.append((val, x))
    lambdas = []
    for i in (1, 2):
        for val in sorted({v for v, _ in found}):
            if rank_of([x for v, x in found if v <= val]) >= i:
                lambdas.append(2 * val)
                break
    return tuple(lambdas)


def count_brute_force(body, lattice, contains):
    """Lattice points in the body by testing every point of the coordinate box."""
    inv = lattice.inverse
    coords = [inv @ v for v in body.vertices]
    d = body.dim
    ranges = [range(int(min(c[i] for c in coords)) - 1, int(max(c[i] for c in coords)) + 2)
              for i in range(d)]
    return sum(1 for z in product(*ranges) if contains(body, lattice.point(z)))
