import dataclasses
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SIGMA, seeds, small_automaton
from monadic.automata import (
    AutomatonError,
    MultiTapeAutomaton,
    accepts,
    language_product,
    permute_tapes,
    relabel_states,
)
from monadic.decider import (
    Certificate,
    Verdict,
    bounded_antichain_search,
    decide,
    decide_binary,
    decide_nary,
    expand_family,
    validate_certificate,
)
from monadic.generators import (
    equal_length,
    equality,
    random_finite_relation,
    random_language,
    strict_prefix,
)
from monadic.relations import build_not_sim, not_sim_for_decider
from monadic.suites import UniversalitySuite

NOT = Verdict.NOT_DECOMPOSABLE
DEC = Verdict.DECOMPOSABLE

# fixed at first implementation
EQUALITY_CERT = Certificate(0, 0, 3, 3, ("a",), ("a",), ("a",), ("a",), ("a",), ("a",))
UNIV7_CERT = {"q": 24, "qp": 0, "p": 36, "r": 36, "w0": ["b", "#"], "v0": ["a", "#"],
              "w1": ["b", "#"], "v1": ["a", "#"], "w": ["b", "#"], "v": ["a", "#"]}


def test_equality_not_decomposable():
    d = decide_binary(build_not_sim(equality(SIGMA)))
    assert d.verdict is NOT
    assert d.certificate == EQUALITY_CERT
    assert validate_certificate(d.certificate, d.not_sim, 10)


def test_strict_prefix_not_decomposable():
    d = decide_binary(build_not_sim(strict_prefix(SIGMA)))
    assert d.verdict is NOT
    assert validate_certificate(d.certificate, d.not_sim, 10)


def test_equal_length_not_decomposable():
    assert decide(equal_length(SIGMA)).verdict is NOT


@settings(max_examples=25)
@given(seeds)
def test_finite_relations_decomposable(seed):
    rel = random_finite_relation(random.Random(seed), SIGMA, 10)
    d = decide_binary(build_not_sim(rel))
    assert d.verdict is DEC and d.certificate is None


@settings(max_examples=25)
@given(seeds)
def test_products_decomposable(seed):
    rng = random.Random(seed)
    rel = language_product([random_language(rng, SIGMA), random_language(rng, SIGMA)])
    assert decide(rel).verdict is DEC


def test_decide_binary_needs_binary():
    with pytest.raises(AutomatonError):
        decide_binary(equality(SIGMA, 3))


def test_empty_relation_decomposable():
    empty = MultiTapeAutomaton(2, SIGMA, 1, 0, [], [])
    assert decide(empty).verdict is DEC


@settings(max_examples=30)
@given(seeds)
def test_every_not_decomposable_verdict_has_valid_certificate(seed):
    d = decide(small_automaton(seed))
    if d.verdict is NOT:
        assert validate_certificate(d.certificate, d.not_sim, 10)


@settings(max_examples=30)
@given(seeds, st.randoms(use_true_random=False))
def test_verdict_invariant_under_renaming(seed, rnd):
    r = small_automaton(seed)
    perm = list(range(r.n_states))
    rnd.shuffle(perm)
    assert decide(relabel_states(r, perm)).verdict is decide(r).verdict


@settings(max_examples=30)
@given(seeds)
def test_verdict_invariant_under_swap(seed):
    r = small_automaton(seed)
    assert decide(permute_tapes(r, (1, 0))).verdict is decide(r).verdict


@settings(max_examples=20)
@given(seeds)
def test_threads_do_not_change_output(seed):
    r = small_automaton(seed)
    n = not_sim_for_decider(r)
    one, many = decide_binary(n), decide_binary(n, threads=4)
    assert one.verdict is many.verdict
    assert one.certificate == many.certificate


def test_decide_is_deterministic():
    r = small_automaton(11)
    assert decide(r).certificate == decide(r).certificate


# --- n-ary ------------------------------------------------------------------------

def test_ternary_equality_fails_at_first_split():
    d = decide_nary(equality(SIGMA, 3))
    assert d.verdict is NOT and d.failing_k == 1
    assert validate_certificate(d.certificate, d.not_sim, 10)


def test_ternary_product_decomposable():
    rng = random.Random(5)
    rel = language_product([random_language(rng, SIGMA) for _ in range(3)])
    d = decide_nary(rel)
    assert d.verdict is DEC and d.per_k_verdicts == (DEC, DEC)


def test_binary_through_nary_matches_decide_binary():
    for r in (equality(SIGMA), strict_prefix(SIGMA), small_automaton(4)):
        assert decide_nary(r).verdict is decide_binary(build_not_sim(r)).verdict


def test_nary_needs_two_tapes():
    with pytest.raises(AutomatonError):
        decide_nary(MultiTapeAutomaton(1, SIGMA, 1, 0, [0], []))


# --- certificates ------------------------------------------------------------------

def test_expand_family_example():
    c = Certificate(0, 0, 0, 0, ("a",), ("a",), ("b",), ("a",), ("b",), ("a",))
    family = expand_family(c, 3)
    assert ["".join(x) for x in family] == ["a", "ab", "aab", "aaab"]
    n = build_not_sim(strict_prefix(SIGMA))
    for x, y in itertools.combinations(family, 2):
        assert accepts(n, (x, y))


def test_expand_family_k0():
    assert expand_family(EQUALITY_CERT, 0) == [("a",)]


@given(st.integers(1, 12))
def test_expand_family_lengths(k):
    c = Certificate(0, 0, 0, 0, ("a",), ("b",), ("a", "b"), ("b", "b"), ("a",), ("b",))
    family = expand_family(c, k)
    for i in range(1, k):
        assert len(family[i + 1]) == len(family[i]) + len(c.w)


def test_expand_family_rejects_bad_lengths():
    c = dataclasses.replace(EQUALITY_CERT, w=("a", "b"))
    with pytest.raises(ValueError):
        expand_family(c, 3)


def test_swapped_certificate_fails():
    inst = UniversalitySuite().instance(7)
    d = decide(inst.relation)
    assert d.certificate.to_dict() == UNIV7_CERT
    assert validate_certificate(d.certificate, d.not_sim, 10)
    c = d.certificate
    swapped = dataclasses.replace(c, w=c.v, v=c.w)
    check = validate_certificate(swapped, d.not_sim, 10)
    assert not check
    assert "B(ii)" in check.failed


def test_validation_k1_checks_one_pair():
    n = build_not_sim(equality(SIGMA))
    assert validate_certificate(EQUALITY_CERT, n, 1)
    # x0 = x1 would be reflexive; the pair check must catch it
    bad = dataclasses.replace(EQUALITY_CERT, w1=("a",), v0=())
    assert not validate_certificate(bad, n, 1)


def test_validation_rejects_nonfinal_p():
    n = build_not_sim(equality(SIGMA))
    bad = dataclasses.replace(EQUALITY_CERT, p=0)
    assert validate_certificate(bad, n, 10).failed == "p is not final"


def test_certificate_serialization_round_trip():
    c = Certificate.from_dict(UNIV7_CERT)
    assert Certificate.loads(c.dumps()) == c
    assert list(c.to_dict()) == ["q", "qp", "p", "r", "w0", "v0", "w1", "v1", "w", "v"]
    with pytest.raises(ValueError):
        Certificate.from_dict({"q": 0})


# --- antichains ------------------------------------------------------------------

def pairwise(n, words):
    return all(accepts(n, (x, y)) for x, y in itertools.permutations(words, 2))


def test_antichain_equality():
    n = build_not_sim(equality(SIGMA))
    found = bounded_antichain_search(n, 5, 5)
    assert len(found) == 5 and pairwise(n, found)


def test_antichain_equal_length():
    n = build_not_sim(equal_length(SIGMA))
    found = bounded_antichain_search(n, 5, 5)
    assert len(found) == 5 and pairwise(n, found)
    assert len({len(w) for w in found}) == 5


def test_antichain_empty_relation():
    n = build_not_sim(MultiTapeAutomaton(2, SIGMA, 1, 0, [], []))
    assert len(bounded_antichain_search(n, 5, 3)) <= 1
