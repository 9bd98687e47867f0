"""Words over {u, d}, height profiles and the path predicates.

A word is read as a walk starting at height 0 where ``u`` adds ``a`` and
``d`` subtracts ``b``.  All predicates accept either a :class:`Word` or a
plain string over ``{u, d}``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

UP = "u"
DOWN = "d"


class ValidationError(ValueError):
    """Invalid step system or word text."""


class Step(enum.Enum):
    UP = UP
    DOWN = DOWN


@dataclass(frozen=True)
class StepSystem:
    """Coprime step sizes: up steps add ``a``, down steps subtract ``b``."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise ValidationError(f"step sizes must be integers, got {self.a!r}, {self.b!r}")
        if self.a < 1 or self.b < 1:
            raise ValidationError(f"step sizes must be positive, got a={self.a}, b={self.b}")
        if gcd(self.a, self.b) != 1:
            raise ValidationError(
                f"step sizes must be coprime, got a={self.a}, b={self.b} (gcd={gcd(self.a, self.b)})"
            )

    @property
    def drift(self) -> int:
        return self.a - self.b

    def __str__(self):
        return f"({self.a},{self.b})"


def make_system(a: int, b: int) -> StepSystem:
    return StepSystem(a, b)


@dataclass(frozen=True)
class Word:
    """An immutable word over ``{u, d}``; behaves like its text for iteration."""

    text: str = ""

    def __post_init__(self):
        _check_letters(self.text)

    @property
    def steps(self) -> tuple[Step, ...]:
        return tuple(Step(c) for c in self.text)

    @classmethod
    def from_steps(cls, steps: Iterable[Step]) -> "Word":
        return cls("".join(s.value for s in steps))

    def __len__(self):
        return len(self.text)

    def __iter__(self):
        return iter(self.text)

    def __str__(self):
        return self.text

    def __add__(self, other: "WordLike") -> "Word":
        return Word(self.text + str(other))

    def count(self, letter: str) -> int:
        return self.text.count(letter)


WordLike = Union[Word, str]


def _check_letters(text: str) -> None:
    for i, c in enumerate(text):
        if c != UP and c != DOWN:
            raise ValidationError(f"invalid letter {c!r} at index {i}; expected 'u' or 'd'")


def parse_word(text: str) -> Word:
    return Word(text.strip("\r\n"))


def format_word(w: WordLike) -> str:
    return str(w)


def parse_word_list(text: str) -> list[Word]:
    """Parse newline-delimited words; blank lines are skipped."""
    return [parse_word(line) for line in text.splitlines() if line.strip()]


def format_word_list(words: Iterable[WordLike]) -> str:
    return "".join(f"{w}\n" for w in words)


def heights(sys: StepSystem, w: WordLike) -> list[int]:
    """Height profile of ``w``: length ``len(w) + 1``, starting at 0."""
    h = 0
    out = [0]
    a, b = sys.a, sys.b
    for c in str(w):
        h = h + a if c == UP else h - b
        out.append(h)
    return out


def phi(sys: StepSystem, w: WordLike) -> int:
    """Final height ``a * #u - b * #d``."""
    s = str(w)
    return sys.a * s.count(UP) - sys.b * s.count(DOWN)


def height(sys: StepSystem, w: WordLike) -> int:
    """Maximum height reached (0 for the empty word)."""
    return max(heights(sys, w))


def is_positive(sys: StepSystem, w: WordLike) -> bool:
    h = 0
    a, b = sys.a, sys.b
    for c in str(w):
        if c == UP:
            h += a
        else:
            h -= b
            if h <= 0:
                return False
    return True


def is_culminating(sys: StepSystem, w: WordLike) -> bool:
    """Non-empty, positive, and the last height is a strict record."""
    s = str(w)
    if not s:
        return False
    h = top = 0
    a, b = sys.a, sys.b
    for c in s[:-1]:
        if c == UP:
            h += a
            if h > top:
                top = h
        else:
            h -= b
            if h <= 0:
                return False
    # a final down step can never set a record
    return s[-1] == UP and h + a > top


def is_excursion(sys: StepSystem, w: WordLike) -> bool:
    hs = heights(sys, w)
    return min(hs) >= 0 and hs[-1] == 0


def is_quasi_excursion(sys: StepSystem, w: WordLike) -> bool:
    """Every step but the last ends above 0 and the last one ends at or below 0.

    The prefix before the last step must be non-empty, so quasi-excursions
    of length ``n`` match positive walks of length ``n - 1`` ending in
    ``1..b``.  The one-letter word ``d`` is excluded.
    """
    s = str(w)
    if len(s) < 2:
        return False
    return is_positive(sys, s[:-1]) and phi(sys, s) <= 0


def mirror(w: WordLike) -> Word:
    return Word(str(w)[::-1])


def zigzag_witness(sys: StepSystem, n: int) -> Word:
    """The word ``u^i d^j u^i`` with ``i, j > n`` and ``i*a - j*b = 1``.

    Used to show that the culminating language fails the pumping lemma.
    """
    a, b = sys.a, sys.b
    # i*a = 1 (mod b); pow(a, -1, 1) == 0 covers b == 1
    i = pow(a, -1, b)
    if i == 0:
        i = b
    while True:
        j = (i * a - 1) // b
        if i > n and j > n:
            return Word(UP * i + DOWN * j + UP * i)
        i += b
