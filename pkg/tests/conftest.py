import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from monadic.automata import Alphabet, iter_words
from monadic.generators import random_automaton

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SIGMA = Alphabet(("a", "b"))
L = 4  # brute-force length bound


@pytest.fixture
def sigma():
    return SIGMA


def words_upto(n, alphabet=SIGMA):
    return list(iter_words(alphabet, n))


def word_st(max_len=L, symbols=("a", "b")):
    return st.lists(st.sampled_from(symbols), max_size=max_len).map(tuple)


def tuple_st(arity, max_len=L):
    return st.tuples(*[word_st(max_len) for _ in range(arity)])


seeds = st.integers(min_value=0, max_value=10_000)


def small_automaton(seed, arity=2, max_states=3, deterministic=False):
    rng = random.Random(seed)
    return random_automaton(seed, arity, rng.randint(1, max_states), rng.uniform(0.2, 0.8),
                            SIGMA, deterministic=deterministic)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
