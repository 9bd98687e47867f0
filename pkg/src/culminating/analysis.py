"""Growth constants, asymptotic trend checks, uniformity tests and cost
measurement for the samplers.

Tolerances below are empirical: the asymptotic statements only fix orders
of growth, so each constant records how far a desk-scale computation is
allowed to sit from the limit.
"""
from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from scipy import stats

from .core import StepSystem, WordLike
from .counting import culminating_counts, culminating_profile, positive_counts, positive_profile
from .rng import Rng
from .samplers import make_sampler

# |r_n - 1| bound at n = 2000 for a = b = 1, r_n = 4n c_n / 2^n
NULL_DRIFT_TOL = 0.10
# relative distance of c_{n+1}/c_n from alpha near n = 600 (a < b)
NEGATIVE_DRIFT_TOL = 0.03
# relative distance of anticipated-rejection mean steps from 2n at a = b
ANTICIPATED_STEPS_TOL = 0.20
# chi-square tests pass when p > this
CHI2_ALPHA = 1e-3
# hybrid rejection mean attempts must stay below this for a >= b
HYBRID_ATTEMPT_BOUND = 10.0
# allowed multiplicative gap between measured and (2/alpha)^dn attempt growth
ATTEMPT_GROWTH_FACTOR = 2.0


def alpha(sys: StepSystem) -> float:
    """Growth constant ``(a + b) / (a^a b^b)^(1/(a+b))``; equals 2 iff a = b."""
    a, b = sys.a, sys.b
    return (a + b) / (a**a * b**b) ** (1.0 / (a + b))


# ------------------------------------------------------------ growth


@dataclass
class GrowthReport:
    ns: list[int]
    values: list[float]
    ratios: list[float]  # values[i+1] / values[i]
    growth_rate: float  # last consecutive ratio
    nth_roots: list[float]
    monotone_ratios: bool


def growth_report(ns: Sequence[int], values: Sequence[float]) -> GrowthReport:
    """Consecutive-ratio growth estimate for a positive sequence on
    consecutive indices ``ns``."""
    if any(v <= 0 for v in values):
        raise ValueError("growth analysis needs a strictly positive sequence")
    if any(n2 != n1 + 1 for n1, n2 in zip(ns, ns[1:])):
        raise ValueError("indices must be consecutive")
    ratios = [values[i + 1] / values[i] for i in range(len(values) - 1)]
    roots = [math.exp(math.log(v) / n) if n > 0 else float("nan") for n, v in zip(ns, values)]
    mono = all(r2 >= r1 for r1, r2 in zip(ratios, ratios[1:]))
    return GrowthReport(list(ns), list(values), ratios, ratios[-1] if ratios else float("nan"), roots, mono)


# ------------------------------------------------------ asymptotic checks


@dataclass
class NullDriftReport:
    r: dict[int, float]  # n -> 4n c_n / 2^n
    decreasing: bool  # |r_n - 1| strictly decreasing over the checkpoints
    within_tol: bool  # |r_nmax - 1| <= NULL_DRIFT_TOL


def check_null_drift(nmax: int = 2000, checkpoints: Sequence[int] = (500, 1000)) -> NullDriftReport:
    """Trend of ``4n c_n / 2^n`` towards 1 for ``a = b = 1``."""
    pts = sorted({*(c for c in checkpoints if c < nmax), nmax})
    culm = culminating_profile(StepSystem(1, 1), nmax)
    r = {n: float(culm[n] * 4 * n) for n in pts}
    devs = [abs(r[n] - 1) for n in pts]
    dec = all(d2 < d1 for d1, d2 in zip(devs, devs[1:]))
    return NullDriftReport(r, dec, devs[-1] <= NULL_DRIFT_TOL)


@dataclass
class PositiveDriftReport:
    sys: StepSystem
    nmax: int
    inequality_holds: bool
    first_violation: Optional[int]
    ratios: dict[int, float]  # n -> c_n / (p_floor(n/2) p_ceil(n/2))
    nondecreasing: bool


def check_positive_drift(
    sys: StepSystem, nmax: int = 60, checkpoints: Sequence[int] = (20, 40, 60)
) -> PositiveDriftReport:
    """Exact check of ``c_n <= p_{n//2} p_{n - n//2}`` for ``n <= nmax`` and
    the trend of the ratio at ``checkpoints``.  The inequality holds for all
    ``(a, b)``; only the ratio trend is specific to ``a > b``."""
    c = culminating_counts(sys, nmax)
    p = positive_counts(sys, nmax)
    bad = next((n for n in range(nmax + 1) if c[n] > p[n // 2] * p[n - n // 2]), None)
    ratios = {n: c[n] / (p[n // 2] * p[n - n // 2]) for n in checkpoints if n <= nmax}
    vals = list(ratios.values())
    return PositiveDriftReport(sys, nmax, bad is None, bad, ratios, all(y >= x for x, y in zip(vals, vals[1:])))


@dataclass
class NegativeDriftReport:
    sys: StepSystem
    n: int
    alpha: float
    ratio: float  # c_{n+1} / c_n
    rel_error: float
    growth: GrowthReport
    roots_below_two: bool


def check_negative_drift(sys: StepSystem, nmax: int = 600, window: int = 10) -> NegativeDriftReport:
    """Compare ``c_{n+1}/c_n`` at ``n = nmax`` with ``alpha(sys)``."""
    if sys.a >= sys.b:
        raise ValueError("negative drift needs a < b")
    culm = culminating_profile(sys, nmax + 1)
    ns = list(range(nmax - window, nmax + 2))
    # undo the 2^-n scaling in ratio form, avoiding overflow
    vals = [float(culm[n]) for n in ns]
    g = growth_report(ns, vals)
    g.ratios = [2 * r for r in g.ratios]
    g.growth_rate = 2 * g.growth_rate
    g.nth_roots = [2 * x for x in g.nth_roots]
    ratio = g.growth_rate
    al = alpha(sys)
    roots = [2 * culm[n] ** (1.0 / n) for n in range(10, nmax + 2)]
    return NegativeDriftReport(sys, nmax, al, ratio, abs(ratio / al - 1), g, all(r < 2 for r in roots))


# ------------------------------------------------------------ chi-square


@dataclass
class Chi2Result:
    statistic: float
    dof: int
    pvalue: float
    passed: bool
    n_samples: int
    outside_support: int = 0


def uniformity_chi2(
    samples: Iterable[WordLike],
    exact: Mapping[str, int] | Iterable[WordLike],
    alpha_level: float = CHI2_ALPHA,
) -> Chi2Result:
    """Pearson chi-square of ``samples`` against the distribution
    proportional to ``exact`` (a word -> weight map, or the support words,
    each with weight 1)."""
    counts = Counter(str(w) for w in samples)
    total = sum(counts.values())
    if total == 0:
        raise ValueError("no samples")
    if isinstance(exact, Mapping):
        weights = {str(k): v for k, v in exact.items()}
    else:
        weights = {str(w): 1 for w in exact}
    wsum = sum(weights.values())
    outside = sum(c for w, c in counts.items() if w not in weights)
    if outside:
        return Chi2Result(math.inf, len(weights) - 1, 0.0, False, total, outside)
    dof = len(weights) - 1
    if dof == 0:
        return Chi2Result(0.0, 0, 1.0, True, total)
    stat = 0.0
    for w, wt in weights.items():
        e = total * wt / wsum
        stat += (counts.get(w, 0) - e) ** 2 / e
    p = float(stats.chi2.sf(stat, dof))
    return Chi2Result(stat, dof, p, p > alpha_level, total)


def two_sample_chi2(xs: Iterable[WordLike], ys: Iterable[WordLike], alpha_level: float = CHI2_ALPHA) -> Chi2Result:
    """Homogeneity test: do two sample sets come from one distribution?"""
    cx = Counter(str(w) for w in xs)
    cy = Counter(str(w) for w in ys)
    support = sorted(set(cx) | set(cy))
    if len(support) < 2:
        return Chi2Result(0.0, 0, 1.0, True, sum(cx.values()) + sum(cy.values()))
    table = [[cx.get(w, 0) for w in support], [cy.get(w, 0) for w in support]]
    res = stats.chi2_contingency(table, correction=False)
    p = float(res.pvalue)
    return Chi2Result(float(res.statistic), int(res.dof), p, p > alpha_level, sum(map(sum, table)))


# ---------------------------------------------------------------- costs


@dataclass
class CostStats:
    method: str
    sys: StepSystem
    n: int
    trials: int
    mean_attempts: float
    mean_steps: float
    std_attempts: float
    std_steps: float
    attempts: list[int] = field(repr=False, default_factory=list)
    steps: list[int] = field(repr=False, default_factory=list)

    def csv_row(self) -> dict:
        return {
            "method": self.method,
            "a": self.sys.a,
            "b": self.sys.b,
            "n": self.n,
            "trials": self.trials,
            "mean_attempts": f"{self.mean_attempts:.6g}",
            "mean_steps": f"{self.mean_steps:.6g}",
            "stddev": f"{self.std_steps:.6g}",
        }


def cost_stats(method, sys, n, records) -> CostStats:
    att = [r.attempts for r in records]
    st = [r.steps for r in records]
    sd = statistics.pstdev
    return CostStats(method, sys, n, len(records), statistics.fmean(att), statistics.fmean(st),
                     sd(att) if len(att) > 1 else 0.0, sd(st) if len(st) > 1 else 0.0, att, st)


def measure_cost(method: str, sys: StepSystem, n: int, trials: int, rng: Rng, **kw) -> CostStats:
    """Run ``trials`` independent samples; trial ``i`` uses ``rng.spawn(i)``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sampler = make_sampler(method, sys, n, **kw)
    records = [sampler(rng.spawn(i)) for i in range(trials)]
    return cost_stats(method, sys, n, records)


def expected_anticipated_cost(sys: StepSystem, n: int) -> tuple[float, float]:
    """Exact ``(mean attempts, mean steps)`` of anticipated rejection.

    With ``q_m = p_m / 2^m`` the chance that ``m`` fair letters stay
    positive, an attempt succeeds with probability ``q_n`` and draws letter
    ``m`` with probability ``q_{m-1}``.
    """
    q = positive_profile(sys, n)
    return 1.0 / q[n], float(q[:n].sum() / q[n])
