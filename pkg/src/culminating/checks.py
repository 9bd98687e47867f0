"""Acceptance checks, shared by ``culminating verify`` and the test suite.

Each check returns a :class:`CheckResult`; ``quick=True`` shrinks sizes so
the whole list runs in well under a minute.
"""
from __future__ import annotations

import subprocess
import sys as _sys
from dataclasses import dataclass
from typing import Callable

from .analysis import (
    ANTICIPATED_STEPS_TOL,
    ATTEMPT_GROWTH_FACTOR,
    CHI2_ALPHA,
    HYBRID_ATTEMPT_BOUND,
    NEGATIVE_DRIFT_TOL,
    NULL_DRIFT_TOL,
    alpha,
    check_negative_drift,
    check_null_drift,
    check_positive_drift,
    measure_cost,
    uniformity_chi2,
)
from .core import StepSystem, is_culminating, is_positive
from .counting import (
    brute_force_census,
    brute_force_words,
    culminating_counts,
    culminating_height_counts,
    excursion_counts,
    positive_counts,
    quasi_excursion_counts,
)
from .genfunc import (
    Poly,
    RationalSeries,
    RecurrenceMismatch,
    T,
    corollary_a1,
    dk_nk,
    fibonacci_polys,
    verify_recurrence,
)
from .grammar import grammar_counts
from .rng import Rng
from .samplers import BoltzmannSampler, make_sampler

TEST_SYSTEMS = [StepSystem(1, 1), StepSystem(2, 1), StepSystem(1, 2), StepSystem(3, 2), StepSystem(5, 3)]
UNIFORMITY_CASES = [(StepSystem(1, 1), 10), (StepSystem(2, 1), 10), (StepSystem(1, 2), 12)]
UNIFORMITY_METHODS = ("recursive", "reject-positive", "hybrid", "grammar")


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.name}: {self.detail}"


def oracle_equivalence(nmax: int = 18) -> CheckResult:
    bad = []
    for s in TEST_SYSTEMS:
        c = culminating_counts(s, nmax)
        p = positive_counts(s, nmax)
        e = excursion_counts(s, nmax)
        q = quasi_excursion_counts(s, nmax)
        by_k = {k: culminating_height_counts(s, nmax, k) for k in range(1, s.a * nmax + 1)}
        for n in range(nmax + 1):
            cen = brute_force_census(s, n)
            if (cen.positive, cen.culminating, cen.excursion, cen.quasi_excursion) != (p[n], c[n], e[n], q[n]):
                bad.append(f"{s} n={n}")
            for k in range(1, s.a * nmax + 1):
                if by_k[k][n] != cen.culminating_by_height.get(k, 0):
                    bad.append(f"{s} n={n} k={k}")
    return CheckResult(1, "oracle equivalence", not bad,
                       f"5 systems, n<={nmax}" + (f"; mismatches: {bad[:5]}" if bad else ", all exact"))


def prop_fibonacci(kmax: int = 12, nmax: int = 60) -> CheckResult:
    s = StepSystem(1, 1)
    fs = fibonacci_polys(kmax)
    bad = []
    for k in range(1, kmax + 1):
        d, _ = dk_nk(s, k)
        if d != fs[k - 1]:
            bad.append(f"D_{k}")
        series = RationalSeries(T**k, fs[k - 1]).coeffs(nmax)
        if series != culminating_height_counts(s, nmax, k):
            bad.append(f"C_{k}")
    return CheckResult(2, "Fibonacci form (1,1)", not bad,
                       f"k<={kmax}, n<={nmax}" + (f"; mismatches {bad}" if bad else ", exact"))


def example_recurrences(kmax: int = 15) -> CheckResult:
    bad = []
    t3 = T**3
    for s in (StepSystem(1, 2), StepSystem(2, 1)):
        # D_1 = D_2 = D_3 = 1 and D_k = D_{k-1} - t^3 D_{k-3}; D_1 is set to 1 when a = 2
        ds, ts = [None], [None]
        for k in range(1, kmax + 1):
            if k < s.a:
                ds.append(Poly.const(1))
                ts.append(Poly())
                continue
            d, num = dk_nk(s, k)
            ds.append(d)
            ts.append(num)
        if any(ds[k] != 1 for k in (1, 2, 3)):
            bad.append(f"{s} D initial values")
        if not verify_recurrence(ds, [Poly.const(1), -t3], [1, 3], start=4):
            bad.append(f"{s} D recurrence")
        if s == StepSystem(2, 1):
            # t^2 N_k with N_1 = 0, N_2 = 1/t, N_3 = t, N_k = t N_{k-2} + t^3 N_{k-3}
            if ts[1] != 0 or ts[2] != T or ts[3] != t3:
                bad.append("(2,1) N initial values")
            if not verify_recurrence(ts, [T, t3], [2, 3], start=4):
                bad.append("(2,1) N recurrence")
        elif any(ts[k] != T**k for k in range(1, kmax + 1)):
            bad.append(f"{s} t^2 N_k != t^k")
    return CheckResult(3, "explicit (1,2)/(2,1) recurrences", not bad,
                       f"k<={kmax}" + (f"; failures {bad}" if bad else ", exact"))


def corollary_check(kmax: int = 20) -> CheckResult:
    bad = []
    for b in (1, 2, 3):
        try:
            corollary_a1(StepSystem(1, b), kmax)
        except RecurrenceMismatch as e:
            bad.append(f"b={b}: {e}")
    return CheckResult(4, "a=1 recurrence family", not bad, f"b in 1..3, k<={kmax}" + (f"; {bad}" if bad else ", exact"))


def uniqueness_check(nmax: int = 60) -> CheckResult:
    s = StepSystem(5, 3)
    sums = {k: sum(culminating_height_counts(s, nmax, k)) for k in range(1, 9)}
    want = {k: (1 if k in (5, 7, 8) else 0) for k in range(1, 9)}
    return CheckResult(5, "at most one path of small height (5,3)", sums == want, f"sums over n<={nmax}: {sums}")


def grammar_lock(nmax: int = 40) -> CheckResult:
    bad = []
    for s in TEST_SYSTEMS:
        gc = grammar_counts(s, nmax)
        if gc["P"] != positive_counts(s, nmax):
            bad.append(f"{s} P")
        if gc["D"] != excursion_counts(s, nmax):
            bad.append(f"{s} D")
    return CheckResult(6, "grammar semantics lock", not bad, f"n<={nmax}" + (f"; {bad}" if bad else ", exact"))


def null_drift(nmax: int = 2000) -> CheckResult:
    rep = check_null_drift(nmax, checkpoints=(nmax // 4, nmax // 2))
    ok = rep.decreasing and rep.within_tol
    vals = ", ".join(f"r_{n}={v:.6f}" for n, v in rep.r.items())
    return CheckResult(7, "null drift 4n c_n/2^n -> 1", ok, f"{vals}; tol {NULL_DRIFT_TOL}")


def positive_drift(nmax: int = 60) -> CheckResult:
    ok = True
    parts = []
    for s in (StepSystem(2, 1), StepSystem(3, 2)):
        rep = check_positive_drift(s, nmax, checkpoints=(nmax // 3, 2 * nmax // 3, nmax))
        ok &= rep.inequality_holds and rep.nondecreasing
        parts.append(f"{s} ineq={rep.inequality_holds} ratios=" + ",".join(f"{v:.4f}" for v in rep.ratios.values()))
    return CheckResult(8, "c_n <= p_floor p_ceil and ratio trend", ok, "; ".join(parts))


def negative_drift(n: int = 600) -> CheckResult:
    rep = check_negative_drift(StepSystem(1, 2), n)
    ok = rep.rel_error <= NEGATIVE_DRIFT_TOL
    return CheckResult(9, "negative drift growth (1,2)", ok,
                       f"c_{n+1}/c_{n}={rep.ratio:.5f}, alpha={rep.alpha:.5f}, rel err {rep.rel_error:.4f} (tol {NEGATIVE_DRIFT_TOL})")


def _draw(method, s, n, draws, seed, **kw):
    f = make_sampler(method, s, n, **kw)
    rng = Rng(seed)
    return [f(rng).word for _ in range(draws)]


def sampler_uniformity(draws: int = 50_000, seed: int = 20240101) -> CheckResult:
    parts = []
    ok = True
    for s, n in UNIFORMITY_CASES:
        culm = brute_force_words(s, n, is_culminating)
        pos = brute_force_words(s, n, is_positive)
        for i, method in enumerate(UNIFORMITY_METHODS):
            support = pos if method == "grammar" else culm
            res = uniformity_chi2(_draw(method, s, n, draws, seed + i), support)
            ok &= res.passed
            parts.append(f"{method}{s}n={n} p={res.pvalue:.3g}")
    # Boltzmann, conditioned on size exactly 10
    s = StepSystem(1, 1)
    bs = BoltzmannSampler(s, 10, 0.0)
    rng = Rng(seed + 99)
    words = [bs.sample(rng).word for _ in range(draws)]
    res = uniformity_chi2(words, brute_force_words(s, 10, is_positive))
    ok &= res.passed and all(len(w) == 10 for w in words)
    parts.append(f"boltzmann(1,1) size 10 p={res.pvalue:.3g}")
    return CheckResult(10, f"sampler uniformity ({draws} draws, p>{CHI2_ALPHA})", ok, "; ".join(parts))


@dataclass
class TrendConfig:
    anticipated_n: int = 1000
    anticipated_trials: int = 2000
    hybrid_ns: tuple = (200, 500, 1000)
    hybrid_trials: int = 300
    growth_ns: tuple = (40, 60)
    growth_trials: int = 2000
    seed: int = 7


def complexity_trends(cfg: TrendConfig = TrendConfig()) -> CheckResult:
    parts = []
    ok = True
    rng = Rng(cfg.seed)
    n = cfg.anticipated_n
    st = measure_cost("anticipated", StepSystem(1, 1), n, cfg.anticipated_trials, rng.spawn(0))
    lo, hi = 2 * n * (1 - ANTICIPATED_STEPS_TOL), 2 * n * (1 + ANTICIPATED_STEPS_TOL)
    ok &= lo <= st.mean_steps <= hi
    parts.append(f"anticipated(1,1) n={n} mean steps {st.mean_steps:.0f} in [{lo:.0f},{hi:.0f}]")
    for idx, s in enumerate((StepSystem(1, 1), StepSystem(2, 1))):
        means = []
        for j, m in enumerate(cfg.hybrid_ns):
            st = measure_cost("hybrid", s, m, cfg.hybrid_trials, rng.spawn(10 + 10 * idx + j))
            means.append(st.mean_attempts)
        ok &= max(means) < HYBRID_ATTEMPT_BOUND
        parts.append(f"hybrid{s} attempts " + ",".join(f"{x:.2f}" for x in means))
    s = StepSystem(1, 2)
    n0, n1 = cfg.growth_ns
    m0 = measure_cost("anticipated", s, n0, cfg.growth_trials, rng.spawn(40)).mean_attempts
    m1 = measure_cost("anticipated", s, n1, cfg.growth_trials, rng.spawn(41)).mean_attempts
    predicted = (2 / alpha(s)) ** (n1 - n0)
    ratio = m1 / m0
    within = predicted / ATTEMPT_GROWTH_FACTOR <= ratio <= predicted * ATTEMPT_GROWTH_FACTOR
    ok &= within
    parts.append(f"anticipated(1,2) attempts {m0:.1f}->{m1:.1f}, ratio {ratio:.2f} vs {predicted:.2f}")
    return CheckResult(11, "complexity trends", ok, "; ".join(parts))


SAMPLE_ARGS = ["sample", "--a", "1", "--b", "1", "--n", "12", "--method", "recursive", "--seed", "7", "--samples", "5"]


def run_cli(args: list[str]) -> bytes:
    return subprocess.run(
        [_sys.executable, "-m", "culminating", *args], check=True, capture_output=True
    ).stdout


def reproducibility() -> CheckResult:
    first = run_cli(SAMPLE_ARGS)
    second = run_cli(SAMPLE_ARGS)
    ok = first == second and len(first.splitlines()) == 5
    return CheckResult(12, "reproducible sampling", ok, f"{len(first)} bytes, identical={first == second}")


def all_checks(quick: bool = False) -> list[Callable[[], CheckResult]]:
    if quick:
        return [
            lambda: oracle_equivalence(14),
            lambda: prop_fibonacci(8, 30),
            lambda: example_recurrences(10),
            lambda: corollary_check(12),
            lambda: uniqueness_check(30),
            lambda: grammar_lock(20),
            lambda: null_drift(400),
            positive_drift,
            lambda: negative_drift(200),
            lambda: sampler_uniformity(5_000),
            lambda: complexity_trends(TrendConfig(400, 300, (100, 200), 50, (30, 40), 300)),
            reproducibility,
        ]
    return [
        oracle_equivalence,
        prop_fibonacci,
        example_recurrences,
        corollary_check,
        uniqueness_check,
        grammar_lock,
        null_drift,
        positive_drift,
        negative_drift,
        sampler_uniformity,
        complexity_trends,
        reproducibility,
    ]


def run_all(quick: bool = False, out=print) -> bool:
    ok = True
    for check in all_checks(quick):
        res = check()
        out(res.line())
        ok &= res.passed
    return ok
