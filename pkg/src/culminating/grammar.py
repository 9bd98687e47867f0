"""Unambiguous context-free grammar for excursions (``D``) and positive
walks (``P``), with exact counting, recursive uniform sampling and numeric
generating-function values for Boltzmann sampling.

Productions, for ``1 <= i <= a`` and ``1 <= j <= b``::

    D   = eps + sum_{k=1..a} L_k R_k
    P   = eps + sum_{i=1..a} L_i P
    L_i = [i = a] u D + sum_{k=i+1..a} L_k R_{k-i}
    R_j = [j = b] d D + sum_{k=j+1..b} L_{k-j} R_k

Terms naming ``L_k`` with ``k > a`` or ``R_k`` with ``k > b`` denote empty
languages and are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .core import DOWN, UP, StepSystem, Word


class GrammarError(RuntimeError):
    pass


class DivergenceError(GrammarError):
    """Fixed-point iteration did not converge: x is at or past the singularity."""


@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class Term:
    letter: str
    then: str


@dataclass(frozen=True)
class Prod:
    left: str
    right: str


Alt = Union[Eps, Term, Prod]


@dataclass(frozen=True)
class GrammarSystem:
    sys: StepSystem
    rules: dict[str, tuple[Alt, ...]] = field(hash=False)
    order: tuple[str, ...]  # nonterminals in same-length dependency order

    @property
    def nonterminals(self) -> tuple[str, ...]:
        return tuple(self.rules)


def _L(i):
    return f"L{i}"


def _R(j):
    return f"R{j}"


def build_grammar(sys: StepSystem) -> GrammarSystem:
    a, b = sys.a, sys.b
    rules: dict[str, tuple[Alt, ...]] = {}
    rules["D"] = (Eps(),) + tuple(Prod(_L(k), _R(k)) for k in range(1, min(a, b) + 1))
    rules["P"] = (Eps(),) + tuple(Prod(_L(i), "P") for i in range(1, a + 1))
    for i in range(1, a + 1):
        alts: list[Alt] = [Term(UP, "D")] if i == a else []
        alts += [Prod(_L(k), _R(k - i)) for k in range(i + 1, a + 1) if k - i <= b]
        rules[_L(i)] = tuple(alts)
    for j in range(1, b + 1):
        alts = [Term(DOWN, "D")] if j == b else []
        alts += [Prod(_L(k - j), _R(k)) for k in range(j + 1, b + 1) if k - j <= a]
        rules[_R(j)] = tuple(alts)
    return GrammarSystem(sys, rules, _dependency_order(rules))


def _dependency_order(rules) -> tuple[str, ...]:
    """Order nonterminals so counts at length r only need earlier entries.

    A product ``X -> Y Z`` makes ``X[r]`` depend on ``Y[r]`` when ``Z`` derives
    the empty word (and symmetrically).  A cycle of such dependencies means
    the counting recurrence is not well founded.
    """
    nullable = {x: any(isinstance(alt, Eps) for alt in alts) for x, alts in rules.items()}
    changed = True
    while changed:
        changed = False
        for x, alts in rules.items():
            if not nullable[x] and any(
                isinstance(alt, Prod) and nullable[alt.left] and nullable[alt.right] for alt in alts
            ):
                nullable[x] = changed = True
    deps: dict[str, set[str]] = {x: set() for x in rules}
    for x, alts in rules.items():
        for alt in alts:
            if isinstance(alt, Prod):
                if nullable[alt.right]:
                    deps[x].add(alt.left)
                if nullable[alt.left]:
                    deps[x].add(alt.right)
    order: list[str] = []
    state: dict[str, int] = {}

    def visit(x, path):
        if state.get(x) == 2:
            return
        if state.get(x) == 1:
            raise GrammarError(f"grammar is not well founded: cycle through {' -> '.join(path + [x])}")
        state[x] = 1
        for y in sorted(deps[x]):
            visit(y, path + [x])
        state[x] = 2
        order.append(x)

    for x in rules:
        visit(x, [])
    return tuple(order)


# ------------------------------------------------------------- counting


@dataclass(frozen=True)
class GrammarCounts:
    grammar: GrammarSystem
    n: int
    counts: dict[str, list[int]] = field(hash=False, repr=False)

    def __getitem__(self, name: str) -> list[int]:
        return self.counts[name]


def _alt_count(alt: Alt, r: int, c: dict[str, list[int]]) -> int:
    if isinstance(alt, Eps):
        return 1 if r == 0 else 0
    if isinstance(alt, Term):
        return c[alt.then][r - 1] if r >= 1 else 0
    left, right = c[alt.left], c[alt.right]
    return sum(left[s] * right[r - s] for s in range(r + 1) if left[s] and right[r - s])


def grammar_counts(sys: StepSystem, n: int, grammar: GrammarSystem | None = None) -> GrammarCounts:
    """Counts by length ``0..n`` for every nonterminal, via convolutions."""
    g = grammar or build_grammar(sys)
    c: dict[str, list[int]] = {x: [0] * (n + 1) for x in g.rules}
    for r in range(n + 1):
        for x in g.order:
            c[x][r] = sum(_alt_count(alt, r, c) for alt in g.rules[x])
    return GrammarCounts(g, n, c)


def _split_order(r: int):
    """Boustrophedon order 0, r, 1, r-1, ...: short splits are found fast."""
    lo, hi = 0, r
    while lo <= hi:
        yield lo
        if hi != lo:
            yield hi
        lo += 1
        hi -= 1


def grammar_sample(counts: GrammarCounts, symbol: str, n: int, rng) -> Word:
    """Uniform word of length ``n`` derived from ``symbol``."""
    c = counts.counts
    rules = counts.grammar.rules
    if n > counts.n:
        raise ValueError(f"counts only go up to length {counts.n}")
    if c[symbol][n] == 0:
        raise ValueError(f"no word of length {n} derives from {symbol}")
    out: list[str] = []
    stack: list[tuple[str, int]] = [(symbol, n)]
    while stack:
        x, r = stack.pop()
        if x in (UP, DOWN):
            out.append(x)
            continue
        pick = rng.randbelow(c[x][r])
        for alt in rules[x]:
            w = _alt_count(alt, r, c)
            if pick >= w:
                pick -= w
                continue
            if isinstance(alt, Term):
                stack.append((alt.then, r - 1))
                stack.append((alt.letter, 1))
            elif isinstance(alt, Prod):
                left, right = c[alt.left], c[alt.right]
                for s in _split_order(r):
                    w = left[s] * right[r - s]
                    if pick < w:
                        break
                    pick -= w
                stack.append((alt.right, r - s))
                stack.append((alt.left, s))
            break
    return Word("".join(out))


def grammar_sample_positive(counts: GrammarCounts, n: int, rng) -> Word:
    if n > counts.n:
        raise ValueError(f"counts only go up to length {counts.n}")
    if counts["P"][n] == 0:
        raise ValueError(f"no positive word of length {n}")
    return grammar_sample(counts, "P", n, rng)


# ------------------------------------------------------ numeric GF values

MAX_ITER = 10**6
VALUE_CAP = 1e12
TOL = 1e-12


def _evaluate(g: GrammarSystem, x: float, y: dict[str, float]) -> dict[str, float]:
    out = {}
    for name, alts in g.rules.items():
        v = 0.0
        for alt in alts:
            if isinstance(alt, Eps):
                v += 1.0
            elif isinstance(alt, Term):
                v += x * y[alt.then]
            else:
                v += y[alt.left] * y[alt.right]
        out[name] = v
    return out


def gf_values(
    sys: StepSystem,
    x: float,
    grammar: GrammarSystem | None = None,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
) -> dict[str, float]:
    """Least fixed point of the grammar's polynomial system at ``x``.

    Iterates from zero; iterates increase monotonically to the
    combinatorial solution when ``x`` is inside the disc of convergence.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    g = grammar or build_grammar(sys)
    y = {name: 0.0 for name in g.rules}
    for _ in range(max_iter):
        nxt = _evaluate(g, x, y)
        if any(v > VALUE_CAP for v in nxt.values()):
            raise DivergenceError(f"generating function diverges at x={x}")
        if all(abs(nxt[k] - y[k]) <= tol * max(1.0, nxt[k]) for k in y):
            return nxt
        y = nxt
    raise DivergenceError(f"no convergence after {max_iter} iterations at x={x}")


def gf_derivatives(g: GrammarSystem, x: float, y: dict[str, float]) -> dict[str, float]:
    """``dY/dx`` at a solution, from ``(I - J) Y' = dF/dx``."""
    names = list(g.rules)
    idx = {k: i for i, k in enumerate(names)}
    n = len(names)
    jac = np.zeros((n, n))
    rhs = np.zeros(n)
    for name, alts in g.rules.items():
        r = idx[name]
        for alt in alts:
            if isinstance(alt, Term):
                rhs[r] += y[alt.then]
                jac[r, idx[alt.then]] += x
            elif isinstance(alt, Prod):
                jac[r, idx[alt.left]] += y[alt.right]
                jac[r, idx[alt.right]] += y[alt.left]
    sol = np.linalg.solve(np.eye(n) - jac, rhs)
    return {k: float(sol[idx[k]]) for k in names}


def expected_size(sys: StepSystem, x: float, symbol: str = "P", grammar: GrammarSystem | None = None) -> float:
    """Mean length ``x Y'(x) / Y(x)`` of a Boltzmann draw from ``symbol``."""
    g = grammar or build_grammar(sys)
    y = gf_values(sys, x, g)
    dy = gf_derivatives(g, x, y)
    return x * dy[symbol] / y[symbol]
