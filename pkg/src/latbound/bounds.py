"""Upper bounds on the number of lattice points of a convex body in terms of
its successive minima.

Bounds involving 4/e and an irrational base constant are carried in symbolic
form ``coefficient * (4/e) * base**power`` so they can be re-enclosed at any
precision; all others are exact rationals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import floor_q
from .errors import ContractError, IndeterminateComparison, NotApplicable
from .interval import DEFAULT_PRECISION, MIN_PRECISION, Interval, enclose_constant
from .lattice import MinimaProfile

LESS = "strictly-less"
EQUAL = "equal"
GREATER = "strictly-greater"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class BoundValue:
    """Either an exact rational (``value``) or ``coefficient * (4/e) * base**power``."""
    value: Fraction | None = None
    coefficient: Fraction | None = None
    base: str | None = None
    power: int = 0

    @property
    def kind(self) -> str:
        return "exact" if self.value is not None else "interval"

    @property
    def symbol(self):
        """The irrational factor; equal symbols mean the ratio is the coefficient ratio."""
        return (self.base if self.power else None, self.power)

    def enclosure(self, precision=DEFAULT_PRECISION) -> Interval:
        if self.value is not None:
            return Interval.point(self.value)
        enc = enclose_constant("four-over-e", precision) * enclose_constant(self.base, precision) ** self.power
        return enc * self.coefficient


@dataclass(frozen=True)
class MuChoice:
    mus: tuple

    def __post_init__(self):
        object.__setattr__(self, "mus", tuple(Fraction(m) for m in self.mus))

    def validate(self, lambdas: Sequence) -> None:
        mus = self.mus
        if len(mus) != len(lambdas):
            raise ContractError(f"need {len(lambdas)} mu values, got {len(mus)}")
        if any(m <= 0 for m in mus):
            raise ContractError("mu values must be positive")
        if any(a > b for a, b in zip(mus, mus[1:])):
            raise ContractError("mu values must be nondecreasing")
        if any(m > lam for m, lam in zip(mus, lambdas)):
            raise ContractError("each mu_i must be at most lambda_i")


def _k(profile: MinimaProfile, symmetric: bool) -> int:
    k = profile.k_sym if symmetric else profile.k_asym
    if k is None:
        if symmetric:
            raise NotApplicable("lambda_1 > 1", verdict="count == 1")
        raise NotApplicable("lambda_1 > 2", verdict="count <= 1")
    return k


def _floor_factors(lambdas) -> Fraction:
    out = Fraction(1)
    for lam in lambdas:
        out *= floor_q(2 / lam + 1)
    return out


def conjecture_bound(profile: MinimaProfile) -> BoundValue:
    return BoundValue(value=_floor_factors(profile.lambdas))


def malikiosis_bound(profile: MinimaProfile, symmetric: bool = False,
                     use_k_reduction: bool = False) -> BoundValue:
    """(4/e) c**(n-1) prod floor(2/lambda_i + 1), c = sqrt(3) or cbrt(40/9).

    With ``use_k_reduction`` the dimension n and the product range shrink to k.
    """
    lams = profile.lambdas
    if use_k_reduction:
        lams = lams[:_k(profile, symmetric)]
    return BoundValue(coefficient=_floor_factors(lams),
                      base="cbrt-40-over-9" if symmetric else "sqrt3",
                      power=len(lams) - 1)


def freyer_lucas_bound(profile: MinimaProfile, use_k_reduction: bool = False) -> BoundValue:
    lams = profile.lambdas
    if use_k_reduction:
        lams = lams[:_k(profile, False)]
    n = len(lams)
    out = Fraction(1)
    for lam in lams:
        out *= 2 / lam + n
    return BoundValue(value=out)


def _tointon_value(mus: Sequence[Fraction]) -> Fraction:
    k = len(mus)
    den = Fraction(1)
    for m in mus:
        den *= m
    return 2 ** k * (1 + mus[-1] / 2) ** k / den


def tointon_bound(profile: MinimaProfile, mu, symmetric: bool) -> BoundValue:
    """2^k (1 + mu_k/2)^k / (mu_1 ... mu_k), k from the threshold 1 (symmetric) or 2."""
    k = _k(profile, symmetric)
    mu = mu if isinstance(mu, MuChoice) else MuChoice(tuple(mu))
    mu.validate(profile.lambdas[:k])
    return BoundValue(value=_tointon_value(mu.mus))


def lambda_mu(profile: MinimaProfile, symmetric: bool) -> MuChoice:
    return MuChoice(profile.lambdas[:_k(profile, symmetric)])


def capped_mu(lambdas: Sequence[Fraction], t) -> MuChoice:
    """mu_i = min(lambda_i, t): the best choice once mu_k = t is fixed."""
    return MuChoice(tuple(min(lam, t) for lam in lambdas))


def mu_candidates(lambdas: Sequence[Fraction]) -> list:
    """Values of t = mu_k among which the optimum lies.

    On a stretch where j of the mu_i equal t, the bound is proportional to
    (1 + t/2)^k / t^j, which is minimized at t = 2j/(k-j).
    """
    k = len(lambdas)
    cands = set(lambdas)
    for j in range(1, k):
        t = Fraction(2 * j, k - j)
        if t <= lambdas[-1]:
            cands.add(t)
    return sorted(cands)


def optimal_mu(profile: MinimaProfile, symmetric: bool):
    k = _k(profile, symmetric)
    lams = profile.lambdas[:k]
    best = None
    for t in mu_candidates(lams):
        mu = capped_mu(lams, t)
        val = _tointon_value(mu.mus)
        if best is None or val < best[1]:
            best = (mu, val)
    return best[0], BoundValue(value=best[1])


def corollary_mu(profile: MinimaProfile) -> MuChoice:
    m = _k(profile, False)
    return MuChoice(tuple(lam if lam <= 1 else Fraction(1) for lam in profile.lambdas[:m]))


def corollary_bound(profile: MinimaProfile) -> BoundValue:
    """3^m / (lambda_1 ... lambda_k), k = #{lambda_i <= 1}, m = #{lambda_i <= 2}."""
    if not any(1 < lam <= 2 for lam in profile.lambdas):
        raise NotApplicable("no successive minimum in (1, 2]")
    m = profile.k_asym
    den = Fraction(1)
    for lam in profile.lambdas:
        if lam <= 1:
            den *= lam
    return BoundValue(value=Fraction(3 ** m) / den)


def compare(a: BoundValue, b: BoundValue) -> str:
    """Exact verdict where possible, otherwise interval comparison with escalating precision."""
    if a.kind == "exact" and b.kind == "exact":
        return _verdict(a.value, b.value)
    if a.kind == b.kind == "interval" and a.symbol == b.symbol:
        return _verdict(a.coefficient, b.coefficient)
    precision = DEFAULT_PRECISION
    while precision >= MIN_PRECISION:
        res = a.enclosure(precision).compare(b.enclosure(precision))
        if res == "<":
            return LESS
        if res == ">":
            return GREATER
        precision /= 2
    return INDETERMINATE


def _verdict(x, y) -> str:
    return LESS if x < y else GREATER if x > y else EQUAL


def satisfied_by(count: int, bound: BoundValue) -> bool | None:
    """Is ``count <= bound``? ``None`` only if precision runs out."""
    verdict = compare(BoundValue(value=Fraction(count)), bound)
    if verdict == INDETERMINATE:
        return None
    return verdict != GREATER


def evaluate_bounds(profile: MinimaProfile, symmetric: bool) -> dict:
    """Every bound that applies to a body with this profile.

    Returns ``{name: BoundValue | NotApplicable}``; ``symmetric`` says whether
    the body is origin symmetric (unlocking the symmetric-only bounds).
    """
    out = {}

    def put(name, fn):
        try:
            out[name] = fn()
        except NotApplicable as exc:
            out[name] = exc

    put("conjecture", lambda: conjecture_bound(profile))
    put("malikiosis", lambda: malikiosis_bound(profile, False))
    put("malikiosis.k", lambda: malikiosis_bound(profile, False, True))
    put("freyer-lucas", lambda: freyer_lucas_bound(profile))
    put("freyer-lucas.k", lambda: freyer_lucas_bound(profile, True))
    put("tointon.mu=lambda", lambda: tointon_bound(profile, lambda_mu(profile, False), False))
    put("tointon.mu=auto", lambda: optimal_mu(profile, False)[1])
    put("corollary", lambda: corollary_bound(profile))
    if symmetric:
        put("malikiosis-sym", lambda: malikiosis_bound(profile, True))
        put("malikiosis-sym.k", lambda: malikiosis_bound(profile, True, True))
        put("tointon-sym.mu=lambda", lambda: tointon_bound(profile, lambda_mu(profile, True), True))
        put("tointon-sym.mu=auto", lambda: optimal_mu(profile, True)[1])
    return out


@dataclass(frozen=True)
class Comparison:
    left: str
    right: str
    verdict: str


def compare_bounds(profile: MinimaProfile, symmetric: bool = False) -> list:
    """Pairwise verdicts between all applicable bounds, in a fixed name order."""
    values = {name: v for name, v in evaluate_bounds(profile, symmetric).items()
              if isinstance(v, BoundValue)}
    names = sorted(values)
    return [Comparison(a, b, compare(values[a], values[b]))
            for a, b in itertools.combinations(names, 2)]


def _certify_less(lhs, rhs) -> bool:
    """Decide lhs < rhs where each side maps a precision to an enclosing Interval."""
    precision = DEFAULT_PRECISION
    while precision >= MIN_PRECISION:
        res = lhs(precision).compare(rhs(precision))
        if res is not None:
            return res == "<"
        precision /= 2
    raise IndeterminateComparison("factor comparison undecided at minimum precision")


def factorwise_claim(profile: MinimaProfile) -> bool:
    """Index-by-index reason why the corollary beats malikiosis_bound.

    Writes malikiosis_bound as A_1...A_d with A_1 = (4/e) floor(2/l_1 + 1) and
    A_i = sqrt(3) floor(2/l_i + 1), and the corollary as B_1...B_m with
    B_i = 3/l_i (l_i <= 1) or 3 (1 < l_i <= 2). Checks A_i > 1 for i > m,
    B_1 B_m < A_1 A_m and B_i < A_i otherwise. When m = 1 the lone B_1 is
    paired with A_1 A_2 instead.
    """
    if not any(1 < lam <= 2 for lam in profile.lambdas) or profile.dim < 2:
        raise NotApplicable("needs dimension >= 2 and a minimum in (1, 2]")
    lams = profile.lambdas
    m = profile.k_asym
    floors = [Fraction(floor_q(2 / lam + 1)) for lam in lams]
    b = [3 / lam if lam <= 1 else Fraction(3) for lam in lams[:m]]

    def a(i):
        name = "four-over-e" if i == 0 else "sqrt3"
        return lambda p: enclose_constant(name, p) * floors[i]

    def const(q):
        return lambda p: Interval.point(q)

    def prod(*fs):
        def f(p):
            out = Interval.point(1)
            for g in fs:
                out = out * g(p)
            return out
        return f

    ok = True
    if m == 1:
        ok &= _certify_less(const(b[0]), prod(a(0), a(1)))
        tail = range(2, len(lams))
    else:
        ok &= _certify_less(const(b[0] * b[m - 1]), prod(a(0), a(m - 1)))
        for i in range(1, m - 1):
            ok &= _certify_less(const(b[i]), a(i))
        tail = range(m, len(lams))
    for i in tail:
        ok &= _certify_less(const(1), a(i))
    return bool(ok)
