"""Deterministic automaton for culminating words of a fixed final height."""
from __future__ import annotations

from dataclasses import dataclass

from .core import UP, StepSystem, WordLike


@dataclass(frozen=True)
class HeightDfa:
    """States ``0..k`` are heights, state ``k + 1`` is the garbage sink.

    ``delta[q] == (on_up, on_down)``.  The initial state is 0 and the only
    accepting state is ``k``.
    """

    sys: StepSystem
    k: int
    delta: tuple[tuple[int, int], ...]

    @property
    def garbage(self) -> int:
        return self.k + 1

    @property
    def n_states(self) -> int:
        return self.k + 2

    def step(self, q: int, letter: str) -> int:
        return self.delta[q][0 if letter == UP else 1]

    def to_dot(self) -> str:
        lines = [
            "digraph culminating {",
            "  rankdir=LR;",
            f'  node [shape=circle]; {self.k} [shape=doublecircle];',
            '  bot [label="⊥"];',
            "  start [shape=point]; start -> 0;",
        ]
        name = lambda q: "bot" if q == self.garbage else str(q)  # noqa: E731
        for q in range(self.k):
            up, down = self.delta[q]
            lines.append(f'  {name(q)} -> {name(up)} [label="u"];')
            lines.append(f'  {name(q)} -> {name(down)} [label="d"];')
        lines.append(f'  {self.k} -> bot [label="u,d"];')
        lines.append('  bot -> bot [label="u,d"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_dfa(sys: StepSystem, k: int) -> HeightDfa:
    if k < 1:
        raise ValueError(f"target height must be >= 1, got {k}")
    a, b = sys.a, sys.b
    bot = k + 1
    delta = []
    for q in range(k):
        up = q + a if q <= k - a else bot
        down = q - b if q > b else bot
        delta.append((up, down))
    delta.append((bot, bot))  # k
    delta.append((bot, bot))  # garbage
    return HeightDfa(sys, k, tuple(delta))


def dfa_accepts(dfa: HeightDfa, w: WordLike) -> bool:
    q = 0
    bot = dfa.garbage
    for c in str(w):
        q = dfa.step(q, c)
        if q == bot:
            return False
    return q == dfa.k


def dfa_count(dfa: HeightDfa, n: int) -> int:
    """Number of accepted words of length ``n`` (transfer count over states)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    counts = [0] * dfa.n_states
    counts[0] = 1
    for _ in range(n):
        nxt = [0] * dfa.n_states
        for q, c in enumerate(counts):
            if c:
                up, down = dfa.delta[q]
                nxt[up] += c
                nxt[down] += c
        counts = nxt
    return counts[dfa.k]
