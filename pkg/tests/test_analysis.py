import math

import pytest
from hypothesis import given

from culminating.analysis import (
    ANTICIPATED_STEPS_TOL,
    CHI2_ALPHA,
    NEGATIVE_DRIFT_TOL,
    NULL_DRIFT_TOL,
    alpha,
    check_negative_drift,
    check_null_drift,
    check_positive_drift,
    expected_anticipated_cost,
    growth_report,
    measure_cost,
    two_sample_chi2,
    uniformity_chi2,
)
from culminating.core import StepSystem, is_culminating
from culminating.counting import brute_force_words, culminating_counts, positive_counts
from culminating.rng import Rng
from conftest import SYSTEMS, systems

S11, S21, S12, S32 = StepSystem(1, 1), StepSystem(2, 1), StepSystem(1, 2), StepSystem(3, 2)


def test_alpha_examples():
    assert alpha(S11) == 2.0
    assert alpha(S12) == pytest.approx(3 / 4 ** (1 / 3), rel=1e-14)
    assert alpha(S12) == pytest.approx(1.88988, abs=1e-5)
    assert alpha(StepSystem(2, 3)) == pytest.approx(5 / (4 * 27) ** (1 / 5), rel=1e-14)


@given(systems(max_step=9))
def test_alpha_symmetric_and_below_two(sys):
    assert alpha(sys) == pytest.approx(alpha(StepSystem(sys.b, sys.a)), rel=1e-14)
    if sys.a == sys.b:
        assert alpha(sys) == 2.0
    else:
        assert alpha(sys) < 2


def test_tolerances_are_documented_constants():
    assert (NULL_DRIFT_TOL, NEGATIVE_DRIFT_TOL, ANTICIPATED_STEPS_TOL, CHI2_ALPHA) == (0.10, 0.03, 0.20, 1e-3)


def test_null_drift_small():
    rep = check_null_drift(40, checkpoints=(5, 10, 20))
    assert rep.r[5] == pytest.approx(1.25, rel=1e-12)  # (2/32) * 20
    assert set(rep.r) == {5, 10, 20, 40}


def test_null_drift_trend():
    rep = check_null_drift(1000, checkpoints=(250, 500))
    assert rep.decreasing and rep.within_tol
    assert abs(rep.r[1000] - 1) < abs(rep.r[250] - 1)


@pytest.mark.parametrize("sys", SYSTEMS)
def test_inequality_holds_everywhere(sys):
    rep = check_positive_drift(sys, 60)
    assert rep.inequality_holds and rep.first_violation is None


def test_positive_drift_trend():
    for s in (S21, S32):
        rep = check_positive_drift(s, 60)
        assert rep.nondecreasing and all(r <= 1 for r in rep.ratios.values())
    rep = check_positive_drift(S21, 60)
    assert rep.ratios[60] > rep.ratios[20]


def test_negative_drift():
    rep = check_negative_drift(S12, 300)
    assert rep.alpha == pytest.approx(1.88988, abs=1e-5)
    assert rep.rel_error < NEGATIVE_DRIFT_TOL
    assert rep.roots_below_two
    assert all(c >= 1 for c in culminating_counts(S12, 100)[1:])
    with pytest.raises(ValueError):
        check_negative_drift(S21, 100)


def test_growth_report():
    g = growth_report([1, 2, 3, 4], [2, 4, 8, 16])
    assert g.ratios == [2, 2, 2] and g.growth_rate == 2 and g.monotone_ratios
    with pytest.raises(ValueError):
        growth_report([1, 2], [1, 0])
    with pytest.raises(ValueError):
        growth_report([1, 3], [1, 2])


def test_chi2_examples():
    support = brute_force_words(S11, 10, is_culminating)
    assert not uniformity_chi2(["u" * 10] * 1000, support).passed
    assert uniformity_chi2(["uuuu"] * 10, ["uuuu"]).passed
    with pytest.raises(ValueError):
        uniformity_chi2([], support)
    res = uniformity_chi2(["uudd"], support)
    assert res.outside_support == 1 and not res.passed


def test_chi2_weighted_map():
    words = ["u"] * 300 + ["d"] * 700
    assert uniformity_chi2(words, {"u": 3, "d": 7}).passed
    assert not uniformity_chi2(words, {"u": 1, "d": 1}).passed


def test_two_sample_single_support():
    assert two_sample_chi2(["u"] * 5, ["u"] * 7).passed


def test_expected_anticipated_cost_exact():
    attempts, steps = expected_anticipated_cost(S11, 1)
    assert (attempts, steps) == (2.0, 2.0)
    p = positive_counts(S11, 5)
    attempts, _ = expected_anticipated_cost(S11, 5)
    assert attempts == pytest.approx(2**5 / p[5])


def test_expected_cost_matches_measurement():
    exp_att, exp_steps = expected_anticipated_cost(S11, 60)
    st = measure_cost("anticipated", S11, 60, 3000, Rng(3))
    assert st.mean_attempts == pytest.approx(exp_att, rel=0.08)
    assert st.mean_steps == pytest.approx(exp_steps, rel=0.08)


def test_anticipated_steps_near_2n():
    st = measure_cost("anticipated", S11, 1000, 1000, Rng(4))
    assert abs(st.mean_steps / 2000 - 1) <= ANTICIPATED_STEPS_TOL


def test_attempt_growth_negative_drift_exact():
    a40, _ = expected_anticipated_cost(S12, 40)
    a60, _ = expected_anticipated_cost(S12, 60)
    predicted = (2 / alpha(S12)) ** 20
    assert predicted / 2 <= a60 / a40 <= predicted * 2


def test_hybrid_attempts_bounded():
    st = measure_cost("hybrid", S21, 1000, 100, Rng(5))
    assert st.mean_attempts < 10


def test_measure_cost_is_deterministic_and_csv():
    a = measure_cost("recursive", S11, 20, 10, Rng(6))
    b = measure_cost("recursive", S11, 20, 10, Rng(6))
    assert a.csv_row() == b.csv_row()
    assert list(a.csv_row()) == ["method", "a", "b", "n", "trials", "mean_attempts", "mean_steps", "stddev"]
    assert a.mean_attempts == 1 and a.mean_steps == 20 and a.std_steps == 0
    with pytest.raises(ValueError):
        measure_cost("recursive", S11, 20, 0, Rng(6))


def test_cost_stats_single_record():
    rec = measure_cost("recursive", S11, 5, 1, Rng(0))
    assert rec.std_attempts == 0.0 and math.isfinite(rec.mean_steps)
