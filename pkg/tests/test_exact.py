import itertools
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from latbound.arith import RationalMatrix, floor_q, ceil_q, fmt, parse_rational
from latbound.errors import ContractError
from latbound.interval import Interval, enclose_constant
from latbound.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, lp_feasible, lp_maximize

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)
nonzero = rationals.filter(lambda q: q != 0)


@given(rationals, rationals)
def test_additive_round_trip(a, b):
    assert (a + b) - b == a


@given(rationals, nonzero)
def test_multiplicative_round_trip(a, b):
    assert (a * b) / b == a


@given(rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(fmt(q)) == q


@pytest.mark.parametrize("text,value", [("3", 3), ("-7", -7), ("2/4", Fraction(1, 2)),
                                        ("-3/9", Fraction(-1, 3)), (" 5/1 ", 5)])
def test_parse_accepts(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "", "1.5", "a/b", "1//2", "3/-4", "--1"])
def test_parse_rejects(text):
    with pytest.raises(ContractError):
        parse_rational(text)


@given(rationals)
def test_floor_ceil(q):
    f, c = floor_q(q), ceil_q(q)
    assert f <= q < f + 1
    assert c - 1 < q <= c


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_is_exact(rows):
    m = RationalMatrix.from_rows(rows)
    if m.det() == 0:
        with pytest.raises(ContractError):
            m.inverse()
        return
    assert m @ m.inverse() == RationalMatrix.identity(3)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=2, max_size=3))
def test_nullspace(rows):
    m = RationalMatrix.from_rows(rows)
    ns = m.nullspace()
    assert len(ns) == 4 - m.rank
    for v in ns:
        assert all(x == 0 for x in m @ v)


def test_determinant_matches_leibniz():
    rows = [[2, -1, 3], [0, 4, 1], [5, 2, -2]]
    leibniz = 0
    for perm in itertools.permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        leibniz += sign * rows[0][perm[0]] * rows[1][perm[1]] * rows[2][perm[2]]
    assert RationalMatrix.from_rows(rows).det() == leibniz


# linear programming

def _cross_polytope_lp(x):
    # variables t, theta_1..4 >= 0 ; t*x = sum theta_i v_i ; sum theta = 1 ; t free
    verts = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    a = [[-x[0]] + [v[0] for v in verts],
         [-x[1]] + [v[1] for v in verts],
         [0, 1, 1, 1, 1]]
    return lp_maximize([1, 0, 0, 0, 0], a, [0, 0, 1], nonneg=[False, True, True, True, True])


def test_lp_cross_polytope_example():
    res = _cross_polytope_lp((1, 1))
    assert res.status == OPTIMAL and res.value == Fraction(1, 2)
    t, th = res.x[0], res.x[1:]
    assert (t, t) == (th[0] - th[2], th[1] - th[3])
    assert sum(th) == 1


def test_lp_unbounded_example():
    assert _cross_polytope_lp((0, 0)).status == UNBOUNDED


def test_lp_infeasible_example():
    res = lp_maximize([0, 0], [[1, 1], [1, 0]], [1, -1])
    assert res.status == INFEASIBLE
    assert lp_feasible([[1, 1], [1, 0]], [1, -1]) is None


def test_lp_dimension_mismatch():
    with pytest.raises(ContractError):
        lp_maximize([1, 2, 3], [[1, 1]], [1])


def _brute_force(c, a, b):
    """Best basic feasible solution of max c.x, Ax = b, x >= 0 (full-row-rank A)."""
    m, n = len(a), len(c)
    best = None
    for cols in itertools.combinations(range(n), m):
        sub = RationalMatrix.from_rows([[a[i][j] for j in cols] for i in range(m)])
        if sub.det() == 0:
            continue
        xb = sub.solve(b)
        if any(v < 0 for v in xb):
            continue
        val = sum(c[j] * v for j, v in zip(cols, xb))
        best = val if best is None else max(best, val)
    return best


@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5),
       st.lists(st.integers(-3, 3), min_size=5, max_size=5),
       st.integers(-3, 3), st.integers(1, 3))
def test_lp_matches_vertex_enumeration(c, row, rhs, total):
    # the sum constraint keeps the feasible set bounded
    a = [[1] * 5, row]
    b = [total, rhs]
    if RationalMatrix.from_rows(a).rank < 2:
        return
    res = lp_maximize(c, a, b)
    oracle = _brute_force(c, a, b)
    if oracle is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL and res.value == oracle
        assert all(v >= 0 for v in res.x)
        assert [sum(ai * xi for ai, xi in zip(r, res.x)) for r in a] == b
        assert sum(ci * xi for ci, xi in zip(c, res.x)) == res.value


# interval constants

getcontext().prec = 80
ORACLES = {
    "sqrt3": Decimal(3).sqrt(),
    "four-over-e": 4 / Decimal(1).exp(),
    # Newton iteration on x^3 = 40/9
    "cbrt-40-over-9": None,
}


def _cbrt(q: Decimal) -> Decimal:
    x = Decimal(2)
    for _ in range(200):
        x = x - (x ** 3 - q) / (3 * x * x)
    return x


ORACLES["cbrt-40-over-9"] = _cbrt(Decimal(40) / Decimal(9))


def _contains(iv: Interval, d: Decimal) -> bool:
    eps = Decimal(10) ** -70
    lo = Decimal(iv.lo.numerator) / Decimal(iv.lo.denominator)
    hi = Decimal(iv.hi.numerator) / Decimal(iv.hi.denominator)
    return lo - eps <= d <= hi + eps


@pytest.mark.parametrize("name", sorted(ORACLES))
@pytest.mark.parametrize("exp", [3, 6, 12, 25, 40])
def test_enclosure_contains_oracle(name, exp):
    p = Fraction(1, 10 ** exp)
    iv = enclose_constant(name, p)
    assert iv.width <= p
    assert _contains(iv, ORACLES[name])


def test_enclosure_spot_values():
    p = Fraction(1, 10**6)
    for name, approx in (("sqrt3", "1.7320508"), ("four-over-e", "1.4715177"),
                         ("cbrt-40-over-9", "1.6441")):
        iv = enclose_constant(name, p)
        assert abs(iv.lo - Fraction(approx)) < p + Fraction(1, 10**len(approx.split(".")[1]))


@pytest.mark.parametrize("name", sorted(ORACLES))
@given(st.integers(2, 10 ** 9))
def test_enclosures_nest(name, n):
    p = Fraction(1, n)
    wide, tight = enclose_constant(name, p), enclose_constant(name, p / 2)
    assert tight.lo <= wide.hi and wide.lo <= tight.hi
    assert wide.lo - p <= tight.lo and tight.hi <= wide.hi + p


def test_enclosure_errors():
    with pytest.raises(ContractError):
        enclose_constant("pi", Fraction(1, 10))
    with pytest.raises(ContractError):
        enclose_constant("sqrt3", 0)


def test_interval_compare():
    a = Interval(Fraction(1), Fraction(2))
    assert a.compare(3) == "<"
    assert a.compare(Fraction(1, 2)) == ">"
    assert a.compare(Fraction(3, 2)) is None
    assert Interval.point(5).compare(5) == "="
