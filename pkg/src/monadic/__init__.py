"""Monadic decomposability of synchronized multi-tape regular relations."""

from .automata import (
    Alphabet,
    AutomatonError,
    MultiTapeAutomaton,
    PaddingError,
    accepts,
    boolean_product,
    complement_padded,
    cylindrify,
    determinize,
    equivalent,
    minimize,
    pad_decode,
    pad_encode,
    project,
    trim,
    valid_pad,
    word_slice,
)
from .decider import (
    Certificate,
    Decision,
    Verdict,
    bounded_antichain_search,
    decide,
    decide_binary,
    decide_nary,
    expand_family,
    validate_certificate,
)
from .relations import build_not_sim, delta_decode, delta_encode, induced_binary
from .textio import format_automaton, parse_automaton, read_automaton, to_dot, write_automaton

__version__ = "0.1.0"
