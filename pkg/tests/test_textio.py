from pathlib import Path

import pytest
from hypothesis import given, settings

from conftest import SIGMA, seeds, small_automaton
from monadic.automata import accepts
from monadic.generators import equality, strict_prefix
from monadic.relations import induced_binary
from monadic.textio import (
    ParseError,
    format_automaton,
    format_word,
    parse_automaton,
    parse_symbol,
    to_dot,
)

GOLDEN = Path(__file__).parent / "golden"

HEADER = "arity 2\nalphabet a b\npad _\nstates 2\ninitial 0\nfinal 1\n"


def test_parse_example():
    a = parse_automaton(HEADER + "trans 0 (a,a) 0\ntrans 0 (_,a) 1\n")
    assert a.n_states == 2 and a.finals == {1}
    assert accepts(a, ("a", "aa"))


@given(seeds)
def test_round_trip_random(seed):
    a = small_automaton(seed)
    text = format_automaton(a)
    b = parse_automaton(text)
    assert b.signature() == a.signature()
    assert format_automaton(b) == text


@pytest.mark.parametrize("name", ["equality.txt", "strict_prefix.txt"])
def test_round_trip_golden_bytes(name):
    text = (GOLDEN / name).read_text()
    body = "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))
    assert format_automaton(parse_automaton(text)) == body


def test_packed_letters_round_trip():
    r = induced_binary(equality(SIGMA, 3), 1)
    text = format_automaton(r)
    assert "pad !" in text
    assert parse_automaton(text).signature() == r.signature()


def test_hash_is_a_symbol_inside_lines():
    text = "arity 1\nalphabet a #\npad _\nstates 1\ninitial 0\nfinal 0\n# comment\ntrans 0 (#) 0\n"
    a = parse_automaton(text)
    assert accepts(a, (("#", "#"),))


@pytest.mark.parametrize("body, line, message", [
    ("trans 0 (_,_) 0\n", 7, "all-pad"),
    ("trans 0 (a) 0\n", 7, "2-tuple"),
    ("trans 0 (a,c) 0\n", 7, "unknown symbol"),
    ("trans 0 (a,a) 5\n", 7, "out of range"),
    ("trans 0 (a,a\n", 7, "unclosed"),
    ("bogus 1\n", 7, "unknown declaration"),
    ("trans x (a,a) 0\n", 7, "integer"),
])
def test_parse_errors_have_line_numbers(body, line, message):
    with pytest.raises(ParseError, match=message) as info:
        parse_automaton(HEADER + body)
    assert info.value.line == line


def test_missing_and_duplicate_headers():
    with pytest.raises(ParseError, match="missing 'states'"):
        parse_automaton("arity 2\nalphabet a b\npad _\ninitial 0\n")
    with pytest.raises(ParseError, match="duplicate"):
        parse_automaton(HEADER + "arity 2\n")
    with pytest.raises(ParseError, match="after transitions"):
        parse_automaton(HEADER.replace("final 1\n", "") + "trans 0 (a,a) 0\nfinal 0\n")


def test_parse_symbol_nested():
    assert parse_symbol("((a,_),(b,b))") == (("a", "_"), ("b", "b"))
    with pytest.raises(ParseError):
        parse_symbol("(a,b")


def test_format_word():
    assert format_word(()) == "ε"
    assert format_word(("a", "b")) == "ab"
    assert format_word((("_", "a"), ("_", "b"))) == "(_,a) (_,b)"


def test_dot_golden():
    a = parse_automaton((GOLDEN / "strict_prefix.txt").read_text())
    assert to_dot(a) == (GOLDEN / "strict_prefix.dot").read_text()


def test_dot_equality_two_nodes_and_trim_note():
    dot = to_dot(equality(SIGMA))
    assert dot.count("[shape=") == 3  # start point plus two states
    assert dot.count("->") == 1 + 16
    trimmed = to_dot(equality(SIGMA), trimmed=True)
    assert "// trimmed: kept 1 of 2 states" in trimmed


@settings(max_examples=20)
@given(seeds)
def test_dot_one_edge_per_transition(seed):
    a = small_automaton(seed)
    assert to_dot(a).count(" -> ") == a.n_transitions + 1


def test_strict_prefix_golden_matches_generator():
    a = parse_automaton((GOLDEN / "strict_prefix.txt").read_text())
    assert a.signature() == strict_prefix(SIGMA).signature()
