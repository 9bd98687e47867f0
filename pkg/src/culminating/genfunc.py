"""Exact polynomials in ``t``, transfer-matrix determinants and rational
series for the height-``k`` generating functions ``C_k(t)``.

``C_k = T_k / D_k`` where ``D_k = det(1 - t A_k)`` and ``T_k`` is ``t**2``
times the ``(a, k - a)`` cofactor.  Storing ``T_k`` instead of the cofactor
keeps everything polynomial (the cofactor alone can be ``1/t``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .core import StepSystem

Number = Union[int, Fraction]


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Dense polynomial in ``t`` with exact rational coefficients.

    ``coeffs[e]`` is the coefficient of ``t**e``; trailing zeros are trimmed
    so the zero polynomial has no coefficients and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_norm(Fraction(c)) if not isinstance(c, int) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Number, ...] = tuple(cs)

    @classmethod
    def monomial(cls, e: int, c: Number = 1) -> "Poly":
        return cls([0] * e + [c])

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e: int) -> Number:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[e] + other[e] for e in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.coeffs[-1])
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        for s in range(dq, -1, -1):
            q = rem[s + other.degree] / lead
            quot[s] = q
            if q:
                for i, c in enumerate(other.coeffs):
                    rem[s + i] -= q * c
        return Poly(quot), Poly(rem[: other.degree])

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _lift(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


T = Poly.monomial(1)


# ---------------------------------------------------------- text form

_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(t(?:\^(\d+))?)?$")


def format_poly(p: Poly) -> str:
    """Canonical sparse form, ascending exponents: ``1 - 2*t^2 + t^4``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in enumerate(p.coeffs):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else f"{mag}*{var}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(text: str) -> Poly:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return Poly()
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, Fraction] = {}
    for sign, term in re.findall(r"([+-])([^+-]+)", s):
        m = _TERM.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad polynomial term {term!r}")
        c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        e = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[e] = coeffs.get(e, 0) + (c if sign == "+" else -c)
    top = max(coeffs)
    return Poly(coeffs.get(e, 0) for e in range(top + 1))


# ---------------------------------------------------------- determinants


def det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix.

    Every intermediate entry is a minor of the input, so the division by the
    previous pivot is exact.  Zero entries are skipped, which keeps banded
    matrices cheap.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return Poly.const(1)
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if swap is None:
                return Poly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            lik = m[i][k]
            for j in range(k + 1, n):
                kj = m[k][j]
                if lik.is_zero() or kj.is_zero():
                    val = piv * m[i][j]
                else:
                    val = piv * m[i][j] - lik * kj
                m[i][j] = val if val.is_zero() else val.exact_div(prev)
            m[i][k] = Poly()
        prev = piv
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def transfer_matrix(sys: StepSystem, k: int) -> list[list[Poly]]:
    """``1 - t*A_k`` on heights ``1..k-1`` (0-based list indices)."""
    a, b = sys.a, sys.b
    size = k - 1
    one, mt = Poly.const(1), -T
    zero = Poly()
    out = []
    for i in range(1, size + 1):
        row = []
        for j in range(1, size + 1):
            if i == j:
                row.append(one)
            elif j == i + a or j == i - b:
                row.append(mt)
            else:
                row.append(zero)
        out.append(row)
    return out


def adjacency(sys: StepSystem, k: int) -> list[list[int]]:
    a, b = sys.a, sys.b
    return [[1 if (j == i + a or j == i - b) else 0 for j in range(1, k)] for i in range(1, k)]


def dk_nk(sys: StepSystem, k: int) -> tuple[Poly, Poly]:
    """``(D_k, T_k)`` with ``C_k(t) = T_k / D_k`` and ``T_k = t^2 N_k``."""
    a = sys.a
    if k < a:
        raise ValueError(f"C_k vanishes for k={k} < a={a}")
    if k == a:
        return Poly.const(1), T
    m = transfer_matrix(sys, k)
    d = det(m)
    # inverse entry (a, k-a) = (-1)^k * minor(drop row k-a, drop column a) / D
    r, c = k - a - 1, a - 1
    minor = [[x for jj, x in enumerate(row) if jj != c] for ii, row in enumerate(m) if ii != r]
    cof = det(minor)
    if k % 2:
        cof = -cof
    return d, T * T * cof


# ---------------------------------------------------------- series


@dataclass
class RationalSeries:
    """Power-series expansion of ``num / den``; ``den[0]`` must be nonzero."""

    num: Poly
    den: Poly
    _coeffs: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")

    def coeff(self, m: int) -> Number:
        while len(self._coeffs) <= m:
            r = len(self._coeffs)
            acc = Fraction(self.num[r])
            for i in range(1, min(r, self.den.degree) + 1):
                acc -= self.den[i] * self._coeffs[r - i]
            self._coeffs.append(_norm(acc / self.den[0]))
        return self._coeffs[m]

    def coeffs(self, n: int) -> list[Number]:
        """Coefficients of ``t^0 .. t^n``."""
        self.coeff(n)
        return list(self._coeffs[: n + 1])


def ck_series(sys: StepSystem, k: int) -> RationalSeries:
    if k < sys.a:
        return RationalSeries(Poly(), Poly.const(1))
    d, num = dk_nk(sys, k)
    return RationalSeries(num, d)


def ck_coeffs(sys: StepSystem, k: int, n: int) -> list[int]:
    """Coefficients ``[t^0..t^n]`` of ``C_k(t)`` as integers."""
    out = []
    for c in ck_series(sys, k).coeffs(n):
        if isinstance(c, Fraction):
            raise ArithmeticError(f"non-integral coefficient {c} in C_{k}")
        out.append(c)
    return out


# ---------------------------------------------------------- recurrences


def fibonacci_polys(kmax: int) -> list[Poly]:
    """``F_0 = F_1 = 1``, ``F_k = F_{k-1} - t^2 F_{k-2}``."""
    fs = [Poly.const(1), Poly.const(1)]
    t2 = T * T
    while len(fs) <= kmax:
        fs.append(fs[-1] - t2 * fs[-2])
    return fs[: kmax + 1]


def verify_recurrence(
    seq: Sequence[Poly | None],
    coeffs: Sequence[Poly],
    offsets: Sequence[int],
    start: int | None = None,
) -> bool:
    """Check ``seq[k] == sum(coeffs[r] * seq[k - offsets[r]])``.

    ``seq`` is indexed by ``k``; ``None`` marks indices outside the sequence.
    The check runs for every ``k >= start`` (default: the first ``k`` whose
    shifted terms are all defined).
    """
    if len(coeffs) != len(offsets):
        raise ValueError("coeffs and offsets differ in length")
    first = next(i for i, s in enumerate(seq) if s is not None)
    lo = first + max(offsets) if start is None else start
    for k in range(lo, len(seq)):
        rhs = Poly()
        for c, off in zip(coeffs, offsets):
            rhs = rhs + c * seq[k - off]
        if seq[k] != rhs:
            return False
    return True


class RecurrenceMismatch(AssertionError):
    def __init__(self, k: int, what: str):
        super().__init__(f"{what} diverges at k={k}")
        self.k = k


@dataclass
class CorollaryReport:
    sys: StepSystem
    kmax: int
    D: list[Poly]
    T: list[Poly]


def corollary_a1(sys: StepSystem, kmax: int) -> CorollaryReport:
    """For ``a = 1``: ``T_k = t^k`` and ``D_k = D_{k-1} - t^{b+1} D_{k-b-1}``
    with ``D_k = 1`` for ``k <= b + 1``, checked against determinants."""
    if sys.a != 1:
        raise ValueError("corollary only applies to a = 1")
    b = sys.b
    ds, ts = [None], [None]
    rec = [None]
    tb = T ** (b + 1)
    for k in range(1, kmax + 1):
        d, num = dk_nk(sys, k)
        ds.append(d)
        ts.append(num)
        rec.append(Poly.const(1) if k <= b + 1 else rec[k - 1] - tb * rec[k - b - 1])
        if d != rec[k]:
            raise RecurrenceMismatch(k, "D_k")
        if num != T**k:
            raise RecurrenceMismatch(k, "t^2 N_k")
    return CorollaryReport(sys, kmax, ds, ts)
