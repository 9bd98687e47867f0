"""Uniform random generation of positive and culminating words.

Every sampler returns a :class:`SampleRecord` carrying the word plus cost
counters: ``attempts`` is the number of (re)starts and ``steps`` the total
number of letters drawn or placed, including those of rejected attempts.
"""
from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .core import DOWN, UP, StepSystem, Word, height, is_culminating, phi
from .counting import (
    CulminatingTable,
    FixedHeightTable,
    PositiveTable,
    culminating_table,
    fixed_height_table,
    positive_table,
)
from .grammar import (
    DivergenceError,
    Eps,
    GrammarCounts,
    Term,
    build_grammar,
    expected_size,
    gf_values,
    grammar_counts,
    grammar_sample_positive,
)
from .rng import Rng

NEGATIVE_DRIFT_STEP_CAP = 10**7

METHODS = (
    "recursive",
    "fixed-height",
    "grammar",
    "anticipated",
    "reject-positive",
    "hybrid",
    "boltzmann",
)


class SamplingError(RuntimeError):
    pass


class EmptyClassError(SamplingError):
    """The requested class has no word of the requested length."""


class GiveUpError(SamplingError):
    """A rejection sampler exceeded its step budget."""


class TuningError(SamplingError):
    pass


@dataclass
class SampleRecord:
    word: Word
    method: str
    seed: Optional[int]
    sys: StepSystem
    n: int
    attempts: int = 1
    steps: int = 0
    k: Optional[int] = None
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        d = {"a": self.sys.a, "b": self.sys.b, "n": self.n}
        if self.k is not None:
            d["k"] = self.k
        d.update(
            method=self.method,
            seed=self.seed,
            word=str(self.word),
            final_height=phi(self.sys, self.word),
            height=height(self.sys, self.word),
            attempts=self.attempts,
            steps=self.steps,
        )
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _seed_of(rng) -> Optional[int]:
    return getattr(rng, "seed", None)


# ------------------------------------------------------------ recursive


def _positive_walk(table: PositiveTable, n: int, rng) -> str:
    a, b = table.sys.a, table.sys.b
    rows = table.rows
    j = 0
    out = []
    for i in range(n, 0, -1):
        up = rows[i - 1][j + a]
        if j > b and rng.randbelow(rows[i][j]) >= up:
            j -= b
            out.append(DOWN)
        else:
            j += a
            out.append(UP)
    return "".join(out)


def sample_positive_recursive(table: PositiveTable, n: int, rng) -> SampleRecord:
    """Exactly uniform positive word; needs ``table`` built to depth >= n."""
    if n > table.n:
        raise ValueError(f"table depth {table.n} < n={n}")
    t0 = time.perf_counter()
    w = _positive_walk(table, n, rng)
    return SampleRecord(Word(w), "positive-recursive", _seed_of(rng), table.sys, n, 1, n,
                        wall_time=time.perf_counter() - t0)


def sample_culminating_recursive(table: CulminatingTable, n: int, rng) -> SampleRecord:
    if n < 1:
        raise EmptyClassError("culminating words are non-empty")
    if n > table.n:
        raise ValueError(f"table depth {table.n} < n={n}")
    t0 = time.perf_counter()
    a, b = table.sys.a, table.sys.b
    get = table.get
    j = h = 0
    out = []
    for i in range(n, 1, -1):
        up = get(i - 1, j + a, max(h, j + a))
        if j > b and rng.randbelow(get(i, j, h)) >= up:
            j -= b
            out.append(DOWN)
        else:
            j += a
            h = max(h, j)
            out.append(UP)
    out.append(UP)  # the last step must set the record
    return SampleRecord(Word("".join(out)), "recursive", _seed_of(rng), table.sys, n, 1, n,
                        wall_time=time.perf_counter() - t0)


def sample_culminating_fixed_height(table: FixedHeightTable, n: int, k: int, rng) -> SampleRecord:
    if k != table.k:
        raise ValueError(f"table is for height {table.k}, not {k}")
    if n < 1 or n > table.n or table.rows[n][0] == 0:
        raise EmptyClassError(f"no culminating word of length {n} and height {k} for {table.sys}")
    t0 = time.perf_counter()
    a, b = table.sys.a, table.sys.b
    rows = table.rows
    j = 0
    out = []
    for i in range(n, 1, -1):
        up = rows[i - 1][j + a] if j + a < k else 0
        if j > b and rng.randbelow(rows[i][j]) >= up:
            j -= b
            out.append(DOWN)
        else:
            j += a
            out.append(UP)
    out.append(UP)
    return SampleRecord(Word("".join(out)), "fixed-height", _seed_of(rng), table.sys, n, 1, n, k=k,
                        wall_time=time.perf_counter() - t0)


def sample_positive_grammar(counts: GrammarCounts, n: int, rng) -> SampleRecord:
    if n > counts.n:
        raise ValueError(f"counts only go up to length {counts.n}")
    t0 = time.perf_counter()
    try:
        w = grammar_sample_positive(counts, n, rng)
    except ValueError as e:
        raise EmptyClassError(str(e)) from e
    return SampleRecord(w, "grammar", _seed_of(rng), counts.grammar.sys, n, 1, n,
                        wall_time=time.perf_counter() - t0)


# ------------------------------------------------- anticipated rejection


def default_step_cap(sys: StepSystem) -> Optional[int]:
    return None if sys.a >= sys.b else NEGATIVE_DRIFT_STEP_CAP


def _anticipated(sys: StepSystem, n: int, rng: Rng, max_steps) -> tuple[str, int, int]:
    a, b = sys.a, sys.b
    bits, nbits = rng._bits, rng._nbits
    attempts = steps = 0
    try:
        while True:
            attempts += 1
            h = 0
            out = []
            for _ in range(n):
                if not nbits:
                    bits, nbits = rng.coins()
                bit = bits & 1
                bits >>= 1
                nbits -= 1
                steps += 1
                if bit:
                    h += a
                    out.append(UP)
                else:
                    h -= b
                    if h <= 0:
                        break
                    out.append(DOWN)
            else:
                return "".join(out), attempts, steps
            if max_steps is not None and steps >= max_steps:
                raise GiveUpError(
                    f"anticipated rejection gave up after {steps} steps ({attempts} attempts) for {sys}, n={n}"
                )
    finally:
        rng._bits, rng._nbits = bits, nbits


def sample_positive_anticipated(sys: StepSystem, n: int, rng: Rng, max_steps: Optional[int] = -1) -> SampleRecord:
    """Flip fair coins, restarting as soon as the walk hits height <= 0.

    ``max_steps=-1`` selects the default budget: unlimited when ``a >= b``,
    ``10**7`` letters otherwise (expected cost is exponential there).
    """
    if max_steps == -1:
        max_steps = default_step_cap(sys)
    t0 = time.perf_counter()
    w, attempts, steps = _anticipated(sys, n, rng, max_steps)
    return SampleRecord(Word(w), "anticipated", _seed_of(rng), sys, n, attempts, steps,
                        wall_time=time.perf_counter() - t0)


class PositiveSampler:
    """Uniform positive words of any length up to ``nmax``.

    ``method`` is ``"anticipated"``, ``"recursive"`` or ``"auto"`` (anticipated
    when ``a >= b``, recursive otherwise).  ``draw`` returns ``(word, steps)``.
    """

    def __init__(self, sys: StepSystem, method: str = "auto", nmax: int = 0, max_steps: Optional[int] = -1):
        if method == "auto":
            method = "anticipated" if sys.a >= sys.b else "recursive"
        if method not in ("anticipated", "recursive"):
            raise ValueError(f"unknown positive-walk method {method!r}")
        self.sys = sys
        self.method = method
        self.max_steps = default_step_cap(sys) if max_steps == -1 else max_steps
        self._table = positive_table(sys, nmax) if method == "recursive" else None

    def draw(self, m: int, rng) -> tuple[str, int]:
        if self.method == "anticipated":
            w, _, steps = _anticipated(self.sys, m, rng, self.max_steps)
            return w, steps
        if self._table is None or self._table.n < m:
            self._table = positive_table(self.sys, m)
        return _positive_walk(self._table, m, rng), m


PositiveMethod = Union[str, PositiveSampler]


def _positive_sampler(sys, method: PositiveMethod, n: int) -> PositiveSampler:
    if isinstance(method, PositiveSampler):
        return method
    return PositiveSampler(sys, method, n)


def sample_culminating_reject_positive(
    sys: StepSystem, n: int, rng, positive_method: PositiveMethod = "auto"
) -> SampleRecord:
    """Draw uniform positive words until one is culminating."""
    if n < 1:
        raise EmptyClassError("culminating words are non-empty")
    ps = _positive_sampler(sys, positive_method, n)
    t0 = time.perf_counter()
    attempts = steps = 0
    while True:
        attempts += 1
        w, s = ps.draw(n, rng)
        steps += s
        if is_culminating(sys, w):
            return SampleRecord(Word(w), "reject-positive", _seed_of(rng), sys, n, attempts, steps,
                                wall_time=time.perf_counter() - t0)


def sample_culminating_hybrid(
    sys: StepSystem, n: int, rng, positive_method: PositiveMethod = "auto"
) -> SampleRecord:
    """Draw ``v + mirror(w)`` with ``v, w`` uniform positive of lengths
    ``floor(n/2)`` and ``ceil(n/2)`` until the result is culminating."""
    if n < 1:
        raise EmptyClassError("culminating words are non-empty")
    ps = _positive_sampler(sys, positive_method, n - n // 2)
    t0 = time.perf_counter()
    half, rest = n // 2, n - n // 2
    attempts = steps = 0
    while True:
        attempts += 1
        v, s1 = ps.draw(half, rng)
        w, s2 = ps.draw(rest, rng)
        steps += s1 + s2
        cand = v + w[::-1]
        if is_culminating(sys, cand):
            return SampleRecord(Word(cand), "hybrid", _seed_of(rng), sys, n, attempts, steps,
                                wall_time=time.perf_counter() - t0)


# ------------------------------------------------------------- Boltzmann


def positive_radius(sys: StepSystem) -> float:
    """Radius of convergence of the positive-walk series."""
    if sys.a >= sys.b:
        return 0.5
    a, b = sys.a, sys.b
    return (a**a * b**b) ** (1.0 / (a + b)) / (a + b)


class BoltzmannSampler:
    """Boltzmann generator for positive words, tuned to mean size ``n``.

    Draws are restarted until the size lands in
    ``[(1 - epsilon) n, (1 + epsilon) n]``; conditioned on its size, the
    output is uniform.
    """

    def __init__(self, sys: StepSystem, n: int, epsilon: float, x: Optional[float] = None):
        if not 0 <= epsilon < 1:
            raise ValueError("epsilon must lie in [0, 1)")
        if sys.a < sys.b:
            warnings.warn(
                f"Boltzmann sampling of positive walks for a < b {sys}: size variance is large, "
                "expect many attempts",
                stacklevel=2,
            )
        self.sys, self.n, self.epsilon = sys, n, epsilon
        self.grammar = build_grammar(sys)
        self.x = x if x is not None else tune(sys, n, self.grammar)
        y = gf_values(sys, self.x, self.grammar)
        self.values = y
        # cumulative branch probabilities per nonterminal
        self.branches: dict[str, list[tuple[float, object]]] = {}
        for name, alts in self.grammar.rules.items():
            acc = 0.0
            table = []
            for alt in alts:
                if isinstance(alt, Eps):
                    w = 1.0
                elif isinstance(alt, Term):
                    w = self.x * y[alt.then]
                else:
                    w = y[alt.left] * y[alt.right]
                acc += w / y[name]
                table.append((acc, alt))
            self.branches[name] = table
        self.lo = math.ceil((1 - epsilon) * n - 1e-9)
        self.hi = math.floor((1 + epsilon) * n + 1e-9)

    def _attempt(self, rng, limit: int) -> Optional[str]:
        out: list[str] = []
        stack = ["P"]
        branches = self.branches
        while stack:
            x = stack.pop()
            if x == UP or x == DOWN:
                out.append(x)
                if len(out) > limit:
                    return None
                continue
            table = branches[x]
            u = rng.random()
            for acc, alt in table:
                if u < acc:
                    break
            # rounding can leave u >= last acc; the last branch absorbs it
            if isinstance(alt, Term):
                stack.append(alt.then)
                stack.append(alt.letter)
            elif not isinstance(alt, Eps):
                stack.append(alt.right)
                stack.append(alt.left)
        return "".join(out)

    def sample(self, rng) -> SampleRecord:
        t0 = time.perf_counter()
        attempts = steps = 0
        while True:
            attempts += 1
            w = self._attempt(rng, self.hi)
            if w is None:
                steps += self.hi + 1
                continue
            steps += len(w)
            if self.lo <= len(w) <= self.hi:
                return SampleRecord(Word(w), "boltzmann", _seed_of(rng), self.sys, self.n, attempts, steps,
                                    wall_time=time.perf_counter() - t0)


def tune(sys: StepSystem, n: float, grammar=None, rel_tol: float = 1e-4, max_probe: int = 39) -> float:
    """Find ``x`` whose Boltzmann mean size of ``P`` is ``n`` (bisection).

    Probes ``x = rho (1 - 2^-m)`` for ``m = 1..max_probe`` to bracket ``n``;
    mean sizes grow roughly like ``2^m`` so the default reaches ~10^11.
    """
    g = grammar or build_grammar(sys)
    rho = positive_radius(sys)
    lo, hi = 0.0, rho
    # probe towards the singularity until the target size is bracketed
    for m in range(1, max_probe + 1):
        x = rho * (1 - 2.0**-m)
        try:
            e = expected_size(sys, x, "P", g)
        except (DivergenceError, ValueError):
            # past the numerical reach of the fixed point (LinAlgError is a ValueError)
            break
        if e >= n:
            hi = x
            break
        lo = x
    else:
        raise TuningError(f"mean size {n} unreachable for {sys}; largest reached {e:.4g} at x={x:.12g}")
    if hi == rho:
        raise TuningError(f"mean size {n} unreachable for {sys}; largest reached {e:.4g} at x={lo:.12g}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        e = expected_size(sys, mid, "P", g)
        if abs(e - n) <= rel_tol * n:
            return mid
        if e < n:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sample_positive_boltzmann(sys: StepSystem, n: int, epsilon: float, rng) -> SampleRecord:
    return BoltzmannSampler(sys, n, epsilon).sample(rng)


# --------------------------------------------------------------- dispatch


def make_sampler(
    method: str,
    sys: StepSystem,
    n: int,
    k: Optional[int] = None,
    epsilon: float = 0.1,
    positive_method: str = "auto",
    positive: bool = False,
) -> Callable[[Rng], SampleRecord]:
    """Build a reusable ``rng -> SampleRecord`` callable for one method.

    Tables and tuning are computed once here.  ``positive=True`` switches the
    ``recursive`` method to positive words.
    """
    if method == "recursive":
        if positive:
            pt = positive_table(sys, n)
            return lambda rng: sample_positive_recursive(pt, n, rng)
        if n < 1:
            raise EmptyClassError("culminating words are non-empty")
        ct = culminating_table(sys, n)
        return lambda rng: sample_culminating_recursive(ct, n, rng)
    if method == "fixed-height":
        if k is None:
            raise ValueError("fixed-height sampling needs k")
        ft = fixed_height_table(sys, n, k)
        if n < 1 or ft.total == 0:
            raise EmptyClassError(f"no culminating word of length {n} and height {k} for {sys}")
        return lambda rng: sample_culminating_fixed_height(ft, n, k, rng)
    if method == "grammar":
        gc = grammar_counts(sys, n)
        if gc["P"][n] == 0:
            raise EmptyClassError(f"no positive word of length {n}")
        return lambda rng: sample_positive_grammar(gc, n, rng)
    if method == "anticipated":
        return lambda rng: sample_positive_anticipated(sys, n, rng)
    if method == "reject-positive":
        ps = PositiveSampler(sys, positive_method, n)
        return lambda rng: sample_culminating_reject_positive(sys, n, rng, ps)
    if method == "hybrid":
        ps = PositiveSampler(sys, positive_method, n - n // 2)
        return lambda rng: sample_culminating_hybrid(sys, n, rng, ps)
    if method == "boltzmann":
        bs = BoltzmannSampler(sys, n, epsilon)
        return bs.sample
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


def promised_predicate(method: str, sys: StepSystem, k: Optional[int] = None, positive: bool = False):
    """The predicate every output of ``method`` must satisfy."""
    from .core import is_positive

    if method in ("grammar", "anticipated", "boltzmann") or (method == "recursive" and positive):
        return lambda w: is_positive(sys, w)
    if method == "fixed-height":
        return lambda w: is_culminating(sys, w) and phi(sys, w) == k
    return lambda w: is_culminating(sys, w)
