import pytest
from hypothesis import given, strategies as st

from culminating.core import (
    Step,
    StepSystem,
    ValidationError,
    Word,
    format_word,
    format_word_list,
    height,
    heights,
    is_culminating,
    is_excursion,
    is_positive,
    is_quasi_excursion,
    make_system,
    mirror,
    parse_word,
    parse_word_list,
    phi,
    zigzag_witness,
)
from conftest import systems, words


def test_make_system_accepts_coprime():
    assert make_system(1, 1) == StepSystem(1, 1)
    s = make_system(5, 3)
    assert (s.a, s.b, s.drift) == (5, 3, 2)


@pytest.mark.parametrize("a,b", [(2, 4), (0, 1), (1, 0), (-1, 2), (6, 9)])
def test_make_system_rejects(a, b):
    with pytest.raises(ValidationError):
        make_system(a, b)


def test_coprimality_error_names_gcd():
    with pytest.raises(ValidationError, match="gcd=2"):
        make_system(2, 4)


@pytest.mark.parametrize("sys,w,expected", [
    (StepSystem(1, 1), "ud", 0),
    (StepSystem(5, 3), "ud", 2),
    (StepSystem(2, 1), "uudd", 2),
    (StepSystem(1, 2), "", 0),
])
def test_phi(sys, w, expected):
    assert phi(sys, w) == expected


@pytest.mark.parametrize("sys,w,expected", [
    (StepSystem(1, 1), "ud", False),
    (StepSystem(1, 1), "uud", True),
    (StepSystem(1, 2), "ud", False),
    (StepSystem(1, 1), "", True),
    (StepSystem(1, 1), "d", False),
])
def test_is_positive(sys, w, expected):
    assert is_positive(sys, w) is expected


@pytest.mark.parametrize("w,expected", [
    ("uudu", False),
    ("uduuu", False),
    ("uuduu", True),
    ("", False),
    ("u", True),
    ("uuud", False),
])
def test_is_culminating_11(w, expected):
    assert is_culminating(StepSystem(1, 1), w) is expected


def test_excursion_and_quasi_excursion():
    s = StepSystem(1, 1)
    assert is_excursion(s, "") and is_excursion(s, "udud") and is_excursion(s, "uudd")
    assert not is_excursion(s, "du") and not is_excursion(s, "uud")
    assert is_quasi_excursion(StepSystem(3, 2), "udd")  # heights 3, 1, -1
    assert not is_quasi_excursion(StepSystem(3, 2), "ud")
    assert is_quasi_excursion(s, "ud")
    # a single down step has no positive proper prefix to speak of, still excluded
    assert not is_quasi_excursion(s, "d")


@pytest.mark.parametrize("w,m", [("uud", "duu"), ("", ""), ("ud", "du")])
def test_mirror_examples(w, m):
    assert str(mirror(w)) == m


def test_zigzag_examples():
    assert str(zigzag_witness(StepSystem(1, 1), 2)) == "uuuuddduuuu"
    assert str(zigzag_witness(StepSystem(2, 1), 0)) == "udu"


def test_parse_format():
    w = parse_word("uud")
    assert w.steps == (Step.UP, Step.UP, Step.DOWN)
    assert format_word(w) == "uud"
    assert len(parse_word("")) == 0
    with pytest.raises(ValidationError, match="index 1"):
        parse_word("uxd")
    assert Word.from_steps([Step.DOWN, Step.UP]) == Word("du")


def test_word_list_round_trip():
    ws = [Word("u"), Word("uud"), Word("dd")]
    assert parse_word_list(format_word_list(ws)) == ws


# ---------------------------------------------------------------- properties


@given(systems(), words())
def test_culminating_implies_positive(sys, w):
    if is_culminating(sys, w):
        assert is_positive(sys, w)


@given(systems(), words())
def test_mirror_closure(sys, w):
    if is_culminating(sys, w):
        assert is_culminating(sys, mirror(w))
    assert mirror(mirror(w)) == Word(w)


@given(systems(), words())
def test_heights_consistency(sys, w):
    hs = heights(sys, w)
    assert len(hs) == len(w) + 1 and hs[0] == 0
    assert all(y - x in (sys.a, -sys.b) for x, y in zip(hs, hs[1:]))
    assert hs[-1] == phi(sys, w)
    assert max(hs) == height(sys, w) >= phi(sys, w)
    assert phi(sys, w) == sys.a * w.count("u") - sys.b * w.count("d")


@given(systems(), st.integers(1, 40))
def test_all_up_is_culminating(sys, n):
    assert is_culminating(sys, "u" * n)


@given(systems(), st.integers(0, 30))
def test_zigzag_witness(sys, n):
    w = str(zigzag_witness(sys, n))
    i = len(w) - len(w.rstrip("u"))
    j = w.count("d")
    assert w == "u" * i + "d" * j + "u" * i
    assert i > n and j > n and i * sys.a - j * sys.b == 1
    assert is_culminating(sys, w)


@given(words())
def test_parse_round_trip(text):
    assert format_word(parse_word(text)) == text


@given(st.text(alphabet="udx", min_size=1, max_size=12).filter(lambda s: "x" in s))
def test_parse_rejects_with_position(text):
    with pytest.raises(ValidationError, match=f"index {text.index('x')}"):
        parse_word(text)
