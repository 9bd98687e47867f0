from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from culminating.core import StepSystem
from culminating.counting import culminating_height_counts
from culminating.genfunc import (
    Poly,
    RationalSeries,
    RecurrenceMismatch,
    T,
    adjacency,
    ck_coeffs,
    corollary_a1,
    det,
    dk_nk,
    fibonacci_polys,
    format_poly,
    parse_poly,
    transfer_matrix,
    verify_recurrence,
)
from conftest import SYSTEMS, systems

ONE = Poly.const(1)


def polys(max_deg=5):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, max_size=max_deg + 1).map(Poly)


def leibniz_det(m):
    n = len(m)
    total = Poly()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ONE
        for i in range(n):
            term = term * m[i][perm[i]]
        total = total - term if inv % 2 else total + term
    return total


def test_poly_basics():
    p = ONE - 2 * T**2 + T**4
    assert p.degree == 4 and p[2] == -2 and p[7] == 0
    assert Poly().degree == -1 and Poly().is_zero()
    assert Poly([1, 0, 0]) == ONE == 1
    assert p(Fraction(1, 2)) == Fraction(9, 16)
    q, r = p.divmod(ONE - T**2)
    assert q == ONE - T**2 and r.is_zero()
    with pytest.raises(ArithmeticError):
        p.exact_div(ONE + T**3)


@pytest.mark.parametrize("p,text", [
    (ONE - 2 * T**2, "1 - 2*t^2"),
    (T, "t"),
    (T**4, "t^4"),
    (Poly(), "0"),
    (-T**3 + 3 * T**5, "-t^3 + 3*t^5"),
    (Fraction(1, 3) * T**5, "1/3*t^5"),
])
def test_format_poly(p, text):
    assert format_poly(p) == text
    assert parse_poly(text) == p


def test_parse_poly_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("1 + x^2")


def test_fibonacci_examples():
    f = fibonacci_polys(4)
    assert f[0] == f[1] == ONE
    assert f[2] == ONE - T**2
    assert f[4] == ONE - 3 * T**2 + T**4


def test_dk_examples():
    s11 = StepSystem(1, 1)
    fs = fibonacci_polys(12)
    for k in range(1, 13):
        d, num = dk_nk(s11, k)
        assert d == fs[k - 1] and num == T**k
    assert dk_nk(StepSystem(2, 1), 2) == (ONE, T)
    assert dk_nk(StepSystem(2, 1), 3)[1] == T**3
    assert format_poly(dk_nk(StepSystem(1, 2), 5)[0]) == "1 - 2*t^3"
    with pytest.raises(ValueError):
        dk_nk(StepSystem(3, 2), 2)


def test_transfer_matrix_shape():
    s = StepSystem(2, 1)
    m = transfer_matrix(s, 6)
    adj = adjacency(s, 6)
    assert len(m) == 5 and all(len(r) == 5 for r in m)
    for i in range(5):
        for j in range(5):
            assert adj[i][j] == (1 if j - i in (2, -1) else 0)
            assert m[i][j] == (ONE if i == j else -T * adj[i][j])


def test_ck_coeffs_examples():
    s11 = StepSystem(1, 1)
    assert ck_coeffs(s11, 3, 9) == [0, 0, 0, 1, 0, 1, 0, 1, 0, 1]
    assert ck_coeffs(s11, 1, 6) == [0, 1, 0, 0, 0, 0, 0]
    for s in SYSTEMS:
        assert ck_coeffs(s, s.a + 1, 5)[0] == 0
    assert ck_coeffs(StepSystem(5, 3), 6, 60) == [0] * 61
    assert ck_coeffs(StepSystem(5, 3), 2, 10) == [0] * 11


def test_verify_recurrence_examples():
    s12 = StepSystem(1, 2)
    ds = [None] + [dk_nk(s12, k)[0] for k in range(1, 16)]
    assert verify_recurrence(ds, [ONE, -T**3], [1, 3], start=4)
    ts = [None] + [dk_nk(s12, k)[1] for k in range(1, 16)]
    assert verify_recurrence(ts, [T], [1])
    assert not verify_recurrence(ds, [ONE, T**3], [1, 3], start=4)
    with pytest.raises(ValueError):
        verify_recurrence(ds, [ONE], [1, 3])


@pytest.mark.parametrize("b,kmax", [(1, 12), (2, 15), (3, 15)])
def test_corollary_a1(b, kmax):
    rep = corollary_a1(StepSystem(1, b), kmax)
    assert rep.T[kmax] == T**kmax


def test_corollary_needs_a1():
    with pytest.raises(ValueError):
        corollary_a1(StepSystem(2, 1), 5)
    assert issubclass(RecurrenceMismatch, AssertionError)


def test_two_one_numerators():
    s = StepSystem(2, 1)
    got = [dk_nk(s, k) for k in range(2, 8)]
    assert [format_poly(n) for _, n in got] == ["t", "t^3", "t^2", "2*t^4", "t^3 + t^6", "3*t^5"]
    assert [format_poly(d) for d, _ in got] == ["1", "1", "1 - t^3", "1 - 2*t^3", "1 - 3*t^3", "1 - 4*t^3 + t^6"]


@pytest.mark.parametrize("sys", SYSTEMS)
def test_coefficients_match_dp(sys):
    n = 60
    for k in range(sys.a, sys.a + sys.b + 6):
        assert ck_coeffs(sys, k, n) == culminating_height_counts(sys, n, k)
        d, _ = dk_nk(sys, k)
        assert d[0] == 1


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly()


@given(polys(), polys().filter(lambda p: not p.is_zero()))
def test_divmod_identity(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(polys())
def test_text_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(polys(2), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(m):
    assert det(m) == leibniz_det(m)


@given(polys(3), polys(3).filter(lambda p: p[0] != 0), st.integers(0, 12))
def test_series_times_denominator(num, den, n):
    s = RationalSeries(num, den)
    prod = Poly(s.coeffs(n)) * den
    for e in range(n + 1):
        assert prod[e] == num[e]


@given(systems(max_step=3), st.integers(1, 10))
def test_numerator_is_polynomial_with_integer_series(sys, dk):
    k = sys.a + dk
    assert all(isinstance(c, int) and c >= 0 for c in ck_coeffs(sys, k, 20))
