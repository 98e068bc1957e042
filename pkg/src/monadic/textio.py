"""Line-oriented text format and DOT export.

::

    arity 2
    alphabet a b
    pad _
    states 3
    initial 0
    final 1
    trans 0 (a,a) 0
    trans 0 (_,a) 1

Symbols are bare tokens or parenthesized tuples of symbols, so packed
letters of induced relations print as ``((a,_),(b,b))``. Lines whose first
non-blank character is ``#`` are comments; ``#`` elsewhere is an ordinary
symbol (the universality instances use it as a separator).
"""
from __future__ import annotations

from .automata import Alphabet, AutomatonError, MultiTapeAutomaton, trim

_DELIMS = "(),"
_HEADER = ("arity", "alphabet", "pad", "states", "initial", "final")


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ---------------------------------------------------------------------------
# Symbols


def format_symbol(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(format_symbol(y) for y in x) + ")"
    return str(x)


def format_word(word) -> str:
    """Compact rendering: plain concatenation for single-character letters,
    space separated otherwise; the empty word prints as ``ε``."""
    if not word:
        return "ε"
    if all(isinstance(x, str) and len(x) == 1 for x in word):
        return "".join(word)
    return " ".join(format_symbol(x) for x in word)


def _tokenize(text: str, line: int) -> list[str]:
    out, atom = [], []
    for ch in text:
        if ch in _DELIMS or ch.isspace():
            if atom:
                out.append("".join(atom))
                atom = []
            if ch in _DELIMS:
                out.append(ch)
        else:
            atom.append(ch)
    if atom:
        out.append("".join(atom))
    return out


def parse_symbol(text: str, line: int = 0):
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError(line, "empty symbol")
    value, pos = _parse_tokens(tokens, 0, line)
    if pos != len(tokens):
        raise ParseError(line, f"trailing input in {text!r}")
    return value


def _parse_tokens(tokens, pos, line):
    if pos >= len(tokens):
        raise ParseError(line, "unexpected end of symbol")
    tok = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while True:
            item, pos = _parse_tokens(tokens, pos, line)
            items.append(item)
            if pos >= len(tokens):
                raise ParseError(line, "unclosed parenthesis")
            if tokens[pos] == ")":
                return tuple(items), pos + 1
            if tokens[pos] != ",":
                raise ParseError(line, f"expected ',' or ')' but found {tokens[pos]!r}")
            pos += 1
    if tok in _DELIMS:
        raise ParseError(line, f"unexpected {tok!r}")
    return tok, pos + 1


def _split_symbols(text: str, line: int) -> list:
    """Whitespace-separated list of symbols, tuples allowed."""
    tokens = _tokenize(text, line)
    out, pos = [], 0
    while pos < len(tokens):
        value, pos = _parse_tokens(tokens, pos, line)
        out.append(value)
    return out


# ---------------------------------------------------------------------------
# Automata


def _int(text: str, line: int, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {text!r}") from None
    if value < 0:
        raise ParseError(line, f"{what} must be non-negative")
    return value


def parse_automaton(text: str) -> MultiTapeAutomaton:
    header: dict = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        keyword, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if keyword in _HEADER:
            if keyword in header:
                raise ParseError(lineno, f"duplicate {keyword!r} declaration")
            if edges:
                raise ParseError(lineno, f"{keyword!r} after transitions")
            header[keyword] = (lineno, rest)
        elif keyword == "trans":
            edges.append((lineno, rest))
        else:
            raise ParseError(lineno, f"unknown declaration {keyword!r}")
    last = len(text.splitlines())
    for keyword in _HEADER:
        if keyword not in header and keyword != "final":
            raise ParseError(last, f"missing {keyword!r} declaration")

    line, value = header["arity"]
    arity = _int(value, line, "arity")
    if arity < 1:
        raise ParseError(line, "arity must be at least 1")
    line, value = header["alphabet"]
    symbols = _split_symbols(value, line)
    pad_line, value = header["pad"]
    pad = parse_symbol(value, pad_line)
    try:
        alphabet = Alphabet(tuple(symbols), pad)
    except AutomatonError as exc:
        raise ParseError(line, str(exc)) from None
    line, value = header["states"]
    n_states = _int(value, line, "states")
    if n_states < 1:
        raise ParseError(line, "need at least one state")
    line, value = header["initial"]
    initial = _int(value, line, "initial")
    if initial >= n_states:
        raise ParseError(line, f"initial state {initial} out of range")
    finals = []
    if "final" in header:
        line, value = header["final"]
        for tok in value.split():
            f = _int(tok, line, "final state")
            if f >= n_states:
                raise ParseError(line, f"final state {f} out of range")
            finals.append(f)

    allowed = set(alphabet.padded)
    allpad = (pad,) * arity
    transitions = []
    for line, rest in edges:
        parts = _split_symbols(rest, line)
        if len(parts) != 3:
            raise ParseError(line, "expected: trans <src> <letter> <dst>")
        src, letter, dst = parts
        if not isinstance(src, str) or not isinstance(dst, str):
            raise ParseError(line, "states must be integers")
        src = _int(src, line, "source state")
        dst = _int(dst, line, "target state")
        if src >= n_states or dst >= n_states:
            raise ParseError(line, "state out of range")
        if not isinstance(letter, tuple) or len(letter) != arity:
            raise ParseError(line, f"letter must be a {arity}-tuple")
        for x in letter:
            if x not in allowed:
                raise ParseError(line, f"unknown symbol {format_symbol(x)}")
        if letter == allpad:
            raise ParseError(line, "the all-pad column is not a letter")
        transitions.append((src, letter, dst))
    return MultiTapeAutomaton(arity, alphabet, n_states, initial, finals, transitions)


def format_automaton(a: MultiTapeAutomaton, comments=()) -> str:
    """Canonical text: header, then transitions by source state and letter
    order. ``parse_automaton`` inverts it byte for byte."""
    lines = [f"# {c}" for c in comments]
    lines += [
        f"arity {a.arity}",
        "alphabet " + " ".join(format_symbol(x) for x in a.alphabet.symbols),
        f"pad {format_symbol(a.alphabet.pad)}",
        f"states {a.n_states}",
        f"initial {a.initial}",
        " ".join(["final"] + [str(f) for f in sorted(a.finals)]),
    ]
    lines += [f"trans {s} {format_symbol(letter)} {t}" for s, letter, t in a.transitions()]
    return "\n".join(lines) + "\n"


def read_automaton(path) -> MultiTapeAutomaton:
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def write_automaton(a: MultiTapeAutomaton, path, comments=()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_automaton(a, comments))


# ---------------------------------------------------------------------------
# DOT


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(a: MultiTapeAutomaton, trimmed: bool = False) -> str:
    """Graphviz source with one edge per transition.

    With ``trimmed`` dead and unreachable states (such as a sink) are dropped
    first and the header says so.
    """
    header = [f"// arity {a.arity}, {a.n_states} states"]
    if trimmed:
        before = a.n_states
        a = trim(a)
        header.append(f"// trimmed: kept {a.n_states} of {before} states")
    lines = header + ["digraph automaton {", "  rankdir=LR;",
                      "  __start [shape=point];", f"  __start -> {a.initial};"]
    for s in range(a.n_states):
        shape = "doublecircle" if s in a.finals else "circle"
        lines.append(f"  {s} [shape={shape}];")
    for s, letter, t in a.transitions():
        lines.append(f"  {s} -> {t} [label={_dot_quote(format_symbol(letter))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
