"""Random instances and end-to-end certification of every lattice-point bound."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds as B
from .arith import RationalMatrix
from .errors import (BoundViolation, GenerationError, IndeterminateComparison,
                     NotApplicable, ResourceLimitError, UnsupportedDimensionError)
from .geometry import Polytope, volume_exact
from .lattice import (LatticeBasis, MinimaProfile, count_lattice_points,
                      successive_minima)

LATTICE_SCALES = tuple(Fraction(x) for x in ("1/4", "1/3", "1/2", "1", "2", "3"))
# coordinate magnitude used by campaigns, per dimension
DEFAULT_MAGNITUDE = {1: 5, 2: 4, 3: 3, 4: 2, 5: 1}
REJECTION_BUDGET = 200


@dataclass(frozen=True)
class Instance:
    body: Polytope
    lattice: LatticeBasis
    symmetric: bool = False
    seed: int | None = None
    magnitude: int | None = None
    vertex_count: int | None = None

    @property
    def dimension(self) -> int:
        return self.body.dim


def _random_unimodular(rng: random.Random, d: int) -> list:
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(rng.randint(d, 2 * d)):
        if d == 1:
            m[0][0] *= -1
            continue
        i, j = rng.sample(range(d), 2)
        c = rng.choice((-1, 1))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def generate_instance(dimension: int, symmetric: bool, magnitude: int, seed: int) -> Instance:
    """Deterministic random body and lattice.

    The lattice is a random unimodular integer matrix times a scale drawn from
    ``LATTICE_SCALES``; the body is the hull of random integer points in
    [-M, M]^d (together with their negatives when ``symmetric``).
    """
    if not 1 <= dimension <= 5:
        raise GenerationError(f"dimension must be in 1..5, got {dimension}")
    if magnitude < 1:
        raise GenerationError("magnitude must be at least 1")
    rng = random.Random(seed)
    scale = rng.choice(LATTICE_SCALES)
    lattice = LatticeBasis(RationalMatrix.from_rows(_random_unimodular(rng, dimension)).scaled(scale))
    for _ in range(REJECTION_BUDGET):
        if symmetric:
            n = rng.randint((dimension + 1) // 2 + 1, dimension + 1)
        else:
            n = rng.randint(dimension + 1, dimension + 3)
        pts = [tuple(rng.randint(-magnitude, magnitude) for _ in range(dimension)) for _ in range(n)]
        if symmetric:
            pts = pts + [tuple(-x for x in p) for p in pts]
        body = Polytope(dimension, pts)
        if body.is_full_dimensional:
            return Instance(body, lattice, symmetric, seed, magnitude, len(body.vertices))
    raise GenerationError(f"no full-dimensional body after {REJECTION_BUDGET} attempts (seed {seed})")


@dataclass
class BoundEntry:
    name: str
    value: B.BoundValue | None
    applicable: bool
    satisfied: bool
    verdict: str | None = None
    mu: tuple | None = None
    equality: bool = False


@dataclass
class BoundReport:
    instance: Instance
    count: int
    minima: MinimaProfile
    entries: list
    comparisons: list
    corollary_claim: bool | None = None
    factorwise_claim: bool | None = None
    minkowski: str | None = None
    seconds: float = 0.0

    @property
    def violations(self) -> list:
        return [e for e in self.entries if not e.satisfied]


def minkowski_volume_check(inst: Instance, profile: MinimaProfile | None = None) -> str:
    """'equality' or 'holds' for vol(K) * lambda_1...lambda_d <= 2^d det(L); raises if it fails."""
    if inst.dimension > 3:
        raise UnsupportedDimensionError("exact volume is only available for d <= 3")
    if profile is None:
        profile = successive_minima(inst.body, inst.lattice)
    lhs = volume_exact(inst.body)
    for lam in profile.lambdas:
        lhs *= lam
    rhs = 2 ** inst.dimension * inst.lattice.det_abs
    if lhs > rhs:
        raise BoundViolation(f"Minkowski's second theorem fails: {lhs} > {rhs}", dump=_dump(inst))
    return "equality" if lhs == rhs else "holds"


def _dump(inst: Instance) -> str:
    from .formats import emit_instance
    return emit_instance(inst)


def _not_applicable_holds(exc: NotApplicable, count: int) -> bool:
    if exc.verdict == "count == 1":
        return count == 1
    if exc.verdict == "count <= 1":
        return count <= 1
    return True


def certify_instance(inst: Instance) -> BoundReport:
    """Exact count, minima and every applicable bound; raises BoundViolation on failure."""
    start = time.perf_counter()
    count = count_lattice_points(inst.body, inst.lattice)
    profile = successive_minima(inst.body, inst.lattice)
    symmetric = inst.symmetric or inst.body.is_origin_symmetric
    entries = []
    for name, val in B.evaluate_bounds(profile, symmetric).items():
        if isinstance(val, NotApplicable):
            if name == "corollary":
                entries.append(BoundEntry(name, None, False, True, str(val)))
            else:
                entries.append(BoundEntry(name, None, False,
                                          _not_applicable_holds(val, count), val.verdict))
            continue
        ok = B.satisfied_by(count, val)
        if ok is None:
            raise IndeterminateComparison(f"{name} undecided against count {count}\n{_dump(inst)}")
        mu = None
        if name.endswith("mu=auto"):
            mu = B.optimal_mu(profile, name.startswith("tointon-sym"))[0].mus
        elif name.endswith("mu=lambda"):
            mu = B.lambda_mu(profile, name.startswith("tointon-sym")).mus
        equality = val.kind == "exact" and val.value == count
        entries.append(BoundEntry(name, val, True, ok, mu=mu, equality=equality))
    comparisons = B.compare_bounds(profile, symmetric)
    corollary_claim = factorwise = None
    if inst.dimension >= 2 and any(1 < lam <= 2 for lam in profile.lambdas):
        verdict = B.compare(B.corollary_bound(profile), B.malikiosis_bound(profile))
        corollary_claim = verdict == B.LESS
        factorwise = B.factorwise_claim(profile)
    minkowski = minkowski_volume_check(inst, profile) if inst.dimension <= 3 else None
    report = BoundReport(inst, count, profile, entries, comparisons,
                         corollary_claim, factorwise, minkowski,
                         time.perf_counter() - start)
    if report.violations:
        names = ", ".join(e.name for e in report.violations)
        from .formats import emit_report
        raise BoundViolation(f"count {count} violates: {names}", dump=emit_report(report))
    return report


@dataclass
class CampaignSummary:
    trials: int = 0
    seed: int = 0
    by_dimension: dict = field(default_factory=dict)
    symmetric_trials: int = 0
    applicable: dict = field(default_factory=dict)
    satisfied: dict = field(default_factory=dict)
    equalities: dict = field(default_factory=dict)
    corollary_applicable: int = 0
    corollary_beats_malikiosis: int = 0
    factorwise_holds: int = 0
    minkowski_checked: int = 0
    minkowski_equalities: int = 0
    indeterminate_comparisons: int = 0
    seconds: float = 0.0

    @property
    def claims_hold(self) -> bool:
        return (self.corollary_beats_malikiosis == self.corollary_applicable
                and self.factorwise_holds == self.corollary_applicable
                and self.indeterminate_comparisons == 0)

    def add(self, report: BoundReport) -> None:
        """Fold one report in; every update is commutative, so order is irrelevant."""
        self.trials += 1
        d = report.instance.dimension
        self.by_dimension[d] = self.by_dimension.get(d, 0) + 1
        self.symmetric_trials += int(report.instance.symmetric)
        for e in report.entries:
            if e.applicable:
                self.applicable[e.name] = self.applicable.get(e.name, 0) + 1
                self.satisfied[e.name] = self.satisfied.get(e.name, 0) + int(e.satisfied)
                if e.equality:
                    self.equalities[e.name] = self.equalities.get(e.name, 0) + 1
        if report.corollary_claim is not None:
            self.corollary_applicable += 1
            self.corollary_beats_malikiosis += int(report.corollary_claim)
            self.factorwise_holds += int(bool(report.factorwise_claim))
        if report.minkowski is not None:
            self.minkowski_checked += 1
            self.minkowski_equalities += int(report.minkowski == "equality")
        self.indeterminate_comparisons += sum(
            1 for c in report.comparisons if c.verdict == B.INDETERMINATE)
        self.seconds += report.seconds


def campaign_plan(trials: int, dimensions, seed: int, symmetric_ratio: float) -> list:
    """(dimension, symmetric, magnitude, trial seed) for each trial, fixed by ``seed``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    dims = sorted(set(dimensions))
    rng = random.Random(seed)
    plan = []
    for _ in range(trials):
        d = rng.choice(dims)
        sym = rng.random() < symmetric_ratio
        plan.append((d, sym, DEFAULT_MAGNITUDE[d], rng.getrandbits(64)))
    return plan


def _certify_planned(args) -> BoundReport:
    return certify_instance(generate_instance(*args))


def run_campaign(trials: int, dimensions=(1, 2, 3, 4), seed: int = 0,
                 symmetric_ratio: float = 0.5, workers: int = 1, on_report=None):
    """Certify a seeded stream of random instances.

    Returns ``(summary, reports)``; any violation propagates as BoundViolation.
    """
    plan = campaign_plan(trials, dimensions, seed, symmetric_ratio)
    summary = CampaignSummary(seed=seed)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_certify_planned, plan))
    else:
        reports = [_certify_planned(args) for args in plan]
    for r in reports:
        summary.add(r)
        if on_report is not None:
            on_report(r)
    return summary, reports


@dataclass
class LimitRow:
    r: Fraction
    count: int
    scaled_count: Fraction
    scaled_bound: Fraction


@dataclass
class LimitTable:
    rows: list
    volume_target: Fraction
    bound_target: Fraction
    tolerance: Fraction
    warning: str | None = None

    @property
    def count_deviation(self) -> Fraction:
        return abs(self.rows[-1].scaled_count - self.volume_target) / self.volume_target

    @property
    def bound_deviation(self) -> Fraction:
        return abs(self.rows[-1].scaled_bound - self.bound_target) / self.bound_target

    @property
    def converged(self) -> bool:
        return (self.warning is None and self.count_deviation <= self.tolerance
                and self.bound_deviation <= self.tolerance)


def mink2_limit_check(inst: Instance, halvings: int) -> LimitTable:
    """r^d #(K cap rL) -> vol(K)/det(L) and r^d prod floor(2/lambda_i(rL) + 1) -> 2^d/prod lambda_i."""
    d = inst.dimension
    if d > 3:
        raise UnsupportedDimensionError("limit check needs exact volume (d <= 3)")
    if not 0 <= halvings <= 12:
        raise ValueError("halvings must be in 0..12")
    base = successive_minima(inst.body, inst.lattice)
    prod = Fraction(1)
    for lam in base.lambdas:
        prod *= lam
    rows = []
    warning = None
    for j in range(halvings + 1):
        r = Fraction(1, 2 ** j)
        lat = inst.lattice.scaled(r)
        try:
            count = count_lattice_points(inst.body, lat)
        except ResourceLimitError as exc:
            warning = f"stopped before r = {r}: {exc}"
            break
        bound = B.conjecture_bound(successive_minima(inst.body, lat)).value
        rows.append(LimitRow(r, count, r ** d * count, r ** d * bound))
    return LimitTable(rows, volume_exact(inst.body) / inst.lattice.det_abs,
                      Fraction(2 ** d) / prod, Fraction(1, 2 ** max(halvings - 2, 0)), warning)
