import pytest
from hypothesis import given, strategies as st

from culminating.automaton import build_dfa, dfa_accepts, dfa_count
from culminating.core import StepSystem, height, is_culminating, phi
from culminating.counting import all_words, brute_force_count, count_culminating_height
from conftest import SYSTEMS, systems, words


def test_build_small():
    dfa = build_dfa(StepSystem(1, 1), 2)
    assert dfa.n_states == 4
    assert dfa.step(0, "d") == dfa.garbage
    assert build_dfa(StepSystem(1, 1), 1).step(0, "d") == build_dfa(StepSystem(1, 1), 1).garbage


def test_build_rejects_zero_height():
    with pytest.raises(ValueError):
        build_dfa(StepSystem(1, 1), 0)


def test_length_one_words_53():
    dfa = build_dfa(StepSystem(5, 3), 5)
    assert [w for w in ("u", "d") if dfa_accepts(dfa, w)] == ["u"]


@pytest.mark.parametrize("k,w,expected", [(2, "uu", True), (2, "udu", False), (3, "uduuu", False), (3, "uuduu", True)])
def test_accepts_examples(k, w, expected):
    assert dfa_accepts(build_dfa(StepSystem(1, 1), k), w) is expected


def test_count_examples():
    s = StepSystem(1, 1)
    assert dfa_count(build_dfa(s, 1), 1) == 1
    assert dfa_count(build_dfa(s, 3), 5) == 1
    assert all(dfa_count(build_dfa(StepSystem(5, 3), 6), n) == 0 for n in range(60))


def test_transition_rule():
    s = StepSystem(3, 2)
    dfa = build_dfa(s, 7)
    bot = dfa.garbage
    for q in range(7):
        assert dfa.step(q, "u") == (q + 3 if q <= 4 else bot)
        assert dfa.step(q, "d") == (q - 2 if q > 2 else bot)
    assert dfa.delta[7] == (bot, bot) and dfa.delta[bot] == (bot, bot)


def test_dot_dump():
    dot = build_dfa(StepSystem(1, 1), 2).to_dot()
    assert dot.startswith("digraph") and '0 -> 1 [label="u"]' in dot


@pytest.mark.parametrize("sys", SYSTEMS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_count_equals_brute_force(sys, k):
    dfa = build_dfa(sys, k)
    for n in range(0, 19, 3):
        assert dfa_count(dfa, n) == brute_force_count(sys, n, lambda s, w: dfa_accepts(dfa, w))


@given(systems(), st.integers(1, 12), words(max_size=14))
def test_accepts_means_culminating_at_height_k(sys, k, w):
    expected = is_culminating(sys, w) and phi(sys, w) == k and height(sys, w) == k
    assert dfa_accepts(build_dfa(sys, k), w) == expected


@given(systems(), st.integers(1, 15), st.integers(0, 40))
def test_count_matches_fixed_height_dp(sys, k, n):
    assert dfa_count(build_dfa(sys, k), n) == count_culminating_height(sys, n, k)
