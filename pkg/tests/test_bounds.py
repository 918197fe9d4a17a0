import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from latbound import bounds as B
from latbound.errors import ContractError, NotApplicable
from latbound.lattice import MinimaProfile

F = Fraction
getcontext().prec = 60
SQRT3 = Decimal(3).sqrt()
FOUR_OVER_E = 4 / Decimal(1).exp()


def P(*lams):
    return MinimaProfile(tuple(F(x) for x in lams))


def dec(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


def encloses(value: B.BoundValue, target: Decimal) -> bool:
    iv = value.enclosure(F(1, 10 ** 30))
    return dec(iv.lo) <= target <= dec(iv.hi)


lam = st.fractions(min_value=F(1, 8), max_value=3, max_denominator=12).filter(lambda x: x > 0)
profiles = st.lists(lam, min_size=1, max_size=5).map(lambda xs: MinimaProfile(tuple(sorted(xs))))


# conjecture, malikiosis_bound, freyer_lucas_bound

def test_conjecture_examples():
    assert B.conjecture_bound(P("2/3", 1)).value == 12
    assert B.conjecture_bound(P(1, 1)).value == 9
    assert B.conjecture_bound(P(3, 3)).value == 1


def test_malikiosis_examples():
    v = B.malikiosis_bound(P(1))
    assert v.kind == "interval"
    assert encloses(v, FOUR_OVER_E * 3)
    M, d = 5, 4
    v = B.malikiosis_bound(P(*([F(1, M)] * (d - 1) + [2])))
    # (4/e) sqrt3^(d-1) (2M+1)^(d-1) * 2, close to (8/e)(2 sqrt3 M)^(d-1)
    assert encloses(v, 2 * FOUR_OVER_E * (SQRT3 * (2 * M + 1)) ** (d - 1))
    rough = 2 * FOUR_OVER_E * (2 * SQRT3 * M) ** (d - 1)
    assert abs(dec(v.enclosure().lo) / rough - 1) < Decimal("0.35")


def test_symmetric_flag_changes_only_the_base():
    prof = P("1/2", 1, "3/2")
    a, b = B.malikiosis_bound(prof), B.malikiosis_bound(prof, symmetric=True)
    assert (a.coefficient, a.power) == (b.coefficient, b.power)
    assert (a.base, b.base) == ("sqrt3", "cbrt-40-over-9")


def test_k_reduction_shrinks_range():
    prof = P("1/2", 1, "3/2", 3)
    full, red = B.malikiosis_bound(prof), B.malikiosis_bound(prof, use_k_reduction=True)
    assert (full.power, red.power) == (3, 2)
    assert red.coefficient == 5 * 3 * 2
    assert B.malikiosis_bound(prof, True, True).power == 1
    assert B.freyer_lucas_bound(prof, use_k_reduction=True).value == (4 + 3) * (2 + 3) * (F(4, 3) + 3)
    with pytest.raises(NotApplicable) as info:
        B.malikiosis_bound(P(3), use_k_reduction=True)
    assert info.value.verdict == "count <= 1"


def test_freyer_lucas_examples():
    assert B.freyer_lucas_bound(P(1, 1)).value == 16
    assert B.freyer_lucas_bound(P("2/3", 1)).value == 20


@given(profiles)
def test_freyer_lucas_halving(prof):
    d = prof.dim
    half = MinimaProfile(tuple(x / 2 for x in prof.lambdas))
    expected = F(1)
    for x in prof.lambdas:
        expected *= 2 * (2 / x) + d
    assert B.freyer_lucas_bound(half).value == expected


# Tointon-style bounds

def test_tointon_examples():
    prof = P("1/2", "1/2", 1)
    assert B.tointon_bound(prof, prof.lambdas, True).value == 108
    assert B.tointon_bound(prof, (F(1, 2),) * 3, True).value == 125
    assert B.tointon_bound(P("1/2", "1/2", 2), (F(1, 2), F(1, 2), 2), False).value == 128


def test_tointon_errors():
    prof = P("1/2", 1)
    with pytest.raises(ContractError):
        B.tointon_bound(prof, (F(1, 2), F(3, 2)), True)   # mu_2 > lambda_2
    with pytest.raises(ContractError):
        B.tointon_bound(prof, (F(1, 2), F(1, 4)), True)   # decreasing
    with pytest.raises(ContractError):
        B.tointon_bound(prof, (F(1, 2),), True)           # wrong length
    with pytest.raises(NotApplicable) as info:
        B.tointon_bound(P("3/2", 2), (1,), True)
    assert info.value.verdict == "count == 1"
    with pytest.raises(NotApplicable) as info:
        B.tointon_bound(P(3), (1,), False)
    assert info.value.verdict == "count <= 1"


def test_corollary_examples():
    prof = P("1/2", "1/2", 2)
    assert B.corollary_bound(prof).value == 108
    assert B.tointon_bound(prof, (F(1, 2), F(1, 2), 1), False).value == 108
    assert B.corollary_bound(P(2)).value == 3
    for M in (2, 3, 7):
        for d in (2, 3, 4):
            prof = P(*([F(1, M)] * (d - 1) + [2]))
            assert B.corollary_bound(prof).value == 3 ** d * M ** (d - 1)
    with pytest.raises(NotApplicable):
        B.corollary_bound(P("1/2", 1))


def test_optimal_mu_examples():
    mu, val = B.optimal_mu(P("1/2", "1/2", 1), True)
    assert mu.mus == (F(1, 2), F(1, 2), 1) and val.value == 108
    mu, val = B.optimal_mu(P(1, 1), True)
    assert mu.mus == (1, 1) and val.value == 9
    _, val = B.optimal_mu(P("1/2", "1/2", "1/2", 1), True)
    assert val.value <= 625


def _random_feasible_mu(rng, lams):
    mus = []
    for x in lams:
        lo = mus[-1] if mus else F(0)
        # mu_i in (lo, lambda_i], kept nondecreasing
        mus.append(lo + (x - lo) * F(rng.randint(1, 1000), 1000))
    return tuple(mus)


@settings(max_examples=25)
@given(profiles, st.booleans(), st.integers(0, 2 ** 32))
def test_optimal_mu_beats_random_feasible_choices(prof, symmetric, seed):
    k = prof.k_sym if symmetric else prof.k_asym
    assume(k is not None)
    lams = prof.lambdas[:k]
    _, best = B.optimal_mu(prof, symmetric)
    rng = random.Random(seed)
    for _ in range(1000):
        mus = _random_feasible_mu(rng, lams)
        assert best.value <= B.tointon_bound(prof, mus, symmetric).value


def _grid_minimum(lams, n=1000):
    # mu_k = t on a uniform grid of (0, lambda_k]; other mu_i = min(lambda_i, t)
    k = len(lams)
    best = None
    for j in range(1, n + 1):
        t = lams[-1] * F(j, n)
        mus = [min(x, t) for x in lams]
        den = F(1)
        for m in mus:
            den *= m
        val = 2 ** k * (1 + t / 2) ** k / den
        best = val if best is None else min(best, val)
    return best


@settings(max_examples=30)
@given(profiles, st.booleans())
def test_optimal_mu_against_grid(prof, symmetric):
    k = prof.k_sym if symmetric else prof.k_asym
    assume(k is not None)
    mu, val = B.optimal_mu(prof, symmetric)
    grid = _grid_minimum(prof.lambdas[:k])
    assert val.value <= grid
    t = mu.mus[-1]
    if (t / prof.lambdas[k - 1] * 1000).denominator == 1:
        assert val.value == grid


# monotonicity: larger minima never give a larger bound

EXCLUDED = {"tointon-sym.mu=lambda", "tointon.mu=lambda"}


@given(profiles, st.data())
def test_bounds_are_monotone(prof, data):
    i = data.draw(st.integers(0, prof.dim - 1))
    step = data.draw(st.fractions(min_value=F(1, 100), max_value=1, max_denominator=100))
    lams = list(prof.lambdas)
    lams[i] += step
    bigger = MinimaProfile(tuple(sorted(lams)))
    for symmetric in (False, True):
        before = B.evaluate_bounds(prof, symmetric)
        after = B.evaluate_bounds(bigger, symmetric)
        for name, old in before.items():
            new = after[name]
            if name in EXCLUDED or isinstance(old, NotApplicable) or isinstance(new, NotApplicable):
                continue
            assert B.compare(new, old) != B.GREATER, name


def test_mu_lambda_variant_is_not_monotone():
    # (1 + x/2)^k / x grows once x > 2/(k-1); this is why it is excluded above
    a = B.tointon_bound(P(1, 1, 1), (1, 1, 1), False).value
    b = B.tointon_bound(P(1, 1, 2), (1, 1, 2), False).value
    assert (a, b) == (27, 32)


@given(profiles)
def test_corollary_is_tointon_with_substituted_mu(prof):
    assume(any(1 < x <= 2 for x in prof.lambdas))
    sub = B.tointon_bound(prof, B.corollary_mu(prof), False)
    assert B.corollary_bound(prof).value == sub.value


# comparisons

@settings(max_examples=40)
@given(profiles)
def test_corollary_beats_malikiosis_and_factorwise(prof):
    assume(prof.dim >= 2 and any(1 < x <= 2 for x in prof.lambdas))
    assert B.compare(B.corollary_bound(prof), B.malikiosis_bound(prof)) == B.LESS
    assert B.factorwise_claim(prof)


def test_compare_examples():
    prof = P("1/2", "3/2")
    v = B.malikiosis_bound(prof)
    assert B.compare(v, v) == B.EQUAL
    assert B.compare(B.conjecture_bound(prof), B.conjecture_bound(prof)) == B.EQUAL
    # in high dimension the general Malikiosis bound can beat the mu = lambda choice
    M, d = 10, 10
    prof = P(*([F(1, M)] * (d - 1) + [2]))
    mu_lambda = B.tointon_bound(prof, prof.lambdas, False)
    assert B.compare(B.malikiosis_bound(prof), mu_lambda) == B.LESS
    assert B.compare(B.corollary_bound(prof), B.malikiosis_bound(prof)) == B.LESS


def test_mixed_exact_interval_comparison():
    v = B.malikiosis_bound(P(1))             # 3 * 4/e ~ 4.41
    assert B.compare(B.BoundValue(value=F(4)), v) == B.LESS
    assert B.compare(B.BoundValue(value=F(5)), v) == B.GREATER
    assert B.satisfied_by(4, v) and not B.satisfied_by(5, v)


def test_compare_bounds_covers_every_pair():
    prof = P("1/2", "3/2")
    comps = B.compare_bounds(prof, symmetric=True)
    names = [n for n, v in B.evaluate_bounds(prof, True).items() if isinstance(v, B.BoundValue)]
    assert len(comps) == len(names) * (len(names) - 1) // 2
    assert all(c.verdict != B.INDETERMINATE for c in comps)


def test_evaluate_bounds_not_applicable_paths():
    out = B.evaluate_bounds(P(3, 4), symmetric=True)
    assert out["tointon.mu=auto"].verdict == "count <= 1"
    assert out["tointon-sym.mu=auto"].verdict == "count == 1"
    assert isinstance(out["conjecture"], B.BoundValue)
    assert isinstance(out["corollary"], NotApplicable)
