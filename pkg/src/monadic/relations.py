"""Derived relations: the inequivalence relation and induced binary relations.

For a binary relation ``R`` two words are equivalent when no context word
separates them on either side::

    w ~ w'  iff  for all u: R(w,u) <-> R(w',u)  and  R(u,w) <-> R(u,w')

``build_not_sim`` returns an automaton for the complement of ``~``. An
``n``-ary relation is decomposable iff each of its ``n-1`` induced binary
relations is, where the ``k``-th one packs tapes ``1..k`` and ``k+1..n``
into compound letters.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .automata import (
    Alphabet,
    AutomatonError,
    MultiTapeAutomaton,
    PaddingError,
    StateLimitExceeded,
    boolean_product,
    cylindrify,
    disjoint_union,
    minimize,
    pad_decode,
    pad_encode,
    project,
    reduce_bisimulation,
    reduce_simulation,
    trim,
)

PACKED_PAD = "!"

# Tape layout of the ternary intermediate automata: (w, w', u).
# Row piece: R(w,u) xor R(w',u). Column piece: R(u,w) xor R(u,w').
_PIECES = (((0, 2), (1, 2)), ((2, 0), (2, 1)))


@dataclass(frozen=True)
class PackedAlphabet:
    """Letters ``(Sigma + pad)^width`` minus the all-pad tuple.

    Width-1 letters are the base symbols themselves, so packing a single tape
    leaves its words unchanged.
    """

    base: Alphabet
    width: int
    packed_pad: str = PACKED_PAD
    letters: tuple = field(init=False)

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be positive")
        if self.packed_pad in self.base.padded:
            raise AutomatonError(f"packed pad {self.packed_pad!r} is not fresh")
        object.__setattr__(self, "letters", tuple(
            pack_letter(column) for column in self.base.letters(self.width)))

    def __len__(self):
        return len(self.letters)


def pack_letter(column: tuple):
    """The compound letter for one column of a packed group of tapes."""
    return column[0] if len(column) == 1 else tuple(column)


def _unpack_letter(letter, width: int) -> tuple:
    if width == 1:
        return (letter,)
    if not isinstance(letter, tuple) or len(letter) != width:
        raise PaddingError(f"{letter!r} is not a packed letter of width {width}")
    return letter


def _lambda(column: tuple, base_pad, packed_pad):
    """Relabel a group column: all-pad becomes the packed pad."""
    if all(s == base_pad for s in column):
        return packed_pad
    return pack_letter(column)


def delta_encode(words, pad: str = "_") -> tuple:
    """Pack an ``n``-tuple of words into one word over ``(Sigma + pad)^n``.

    >>> delta_encode(("a", "", "ab"))
    (('a', '_', 'a'), ('_', '_', 'b'))
    """
    return tuple(pack_letter(column) for column in pad_encode(words, pad))


def delta_decode(word, arity: int, pad: str = "_") -> tuple:
    """Inverse of :func:`delta_encode`; rejects malformed packed words."""
    return pad_decode([_unpack_letter(letter, arity) for letter in word], arity, pad)


def induced_alphabet(base: Alphabet, arity: int, k: int) -> Alphabet:
    """Union alphabet of the ``k``-th induced relation, packed pad ``!``."""
    left = PackedAlphabet(base, k)
    right = PackedAlphabet(base, arity - k)
    symbols = list(left.letters)
    seen = set(symbols)
    symbols += [x for x in right.letters if x not in seen]
    return Alphabet(tuple(symbols), left.packed_pad)


def induced_binary(r: MultiTapeAutomaton, k: int) -> MultiTapeAutomaton:
    """Binary view of ``r`` packing tapes ``1..k`` against ``k+1..n``.

    Same states, initial state and finals; each transition is relabelled
    group-wise. The input should accept only validly padded words (garbage
    columns would survive the relabelling as legitimate packed letters).
    """
    n = r.arity
    if not 1 <= k <= n - 1:
        raise AutomatonError(f"split point k={k} outside 1..{n - 1}")
    alphabet = induced_alphabet(r.alphabet, n, k)
    pad = r.alphabet.pad
    edges = [
        (s, (_lambda(letter[:k], pad, alphabet.pad), _lambda(letter[k:], pad, alphabet.pad)), t)
        for s, letter, t in r.transitions()
    ]
    return MultiTapeAutomaton(2, alphabet, r.n_states, r.initial, r.finals, edges)


def not_sim_pieces(r: MultiTapeAutomaton) -> list[MultiTapeAutomaton]:
    """The row and column pieces over tapes ``(w, w', u)``.

    Each is the symmetric difference of two cylinders of the minimal DFA
    for ``r``, i.e. the union of two of the four disjuncts in the defining
    formula. Their union, with ``u`` projected away, is the inequivalence
    relation.
    """
    if r.arity != 2:
        raise AutomatonError("inequivalence relation needs a binary relation")
    d = trim(minimize(r))
    return [
        trim(minimize(boolean_product(cylindrify(d, left, 3), cylindrify(d, right, 3), "xor")))
        for left, right in _PIECES
    ]


def build_not_sim(r: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Nondeterministic automaton for the pairs ``(w, w')`` with ``w`` not
    equivalent to ``w'`` under ``r``."""
    union = disjoint_union(*not_sim_pieces(r))
    return reduce_bisimulation(trim(project(union, 2)))


def not_sim_dfa(r: MultiTapeAutomaton, limit: int | None = None) -> MultiTapeAutomaton:
    """Trimmed minimal DFA for the inequivalence relation of ``r``."""
    return trim(minimize(build_not_sim(r), limit=limit))


def not_sim_for_decider(r: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """The inequivalence automaton handed to the decider.

    The minimal DFA when its subset construction stays within a few times
    the NFA size, otherwise the NFA reduced by simulation. All accept the
    same pairs; the choice only affects running time.
    """
    nfa = build_not_sim(r)
    try:
        return trim(minimize(nfa, limit=4 * nfa.n_states + 64))
    except StateLimitExceeded:
        return reduce_simulation(nfa)
