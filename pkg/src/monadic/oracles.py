"""Brute-force reference semantics, independent of the constructions.

Nothing here calls into ``relations`` or ``decider``; the only automaton
operation used is stepping a deterministic automaton letter by letter.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .automata import MultiTapeAutomaton, iter_words, pad_encode


def _dfa_step(a: MultiTapeAutomaton, state, letter):
    if state is None:
        return None
    targets = a.delta[state].get(letter)
    return targets[0] if targets else None


def _dfa_run(a: MultiTapeAutomaton, state, columns):
    for letter in columns:
        state = _dfa_step(a, state, letter)
    return state


class NotSimOracle:
    """Evaluates the defining formula of the inequivalence relation of a
    binary DFA ``r`` with the context word bounded by ``|u| <= max(|w|, |w'|) + extra``.

    Contexts no longer than ``max(|w|, |w'|)`` are enumerated. Longer ones
    share a prefix ``u1`` of that length, after which every run reads pads
    against ``u``'s tail, so the tail is explored as a depth-limited search
    over the four current run states.
    """

    def __init__(self, r: MultiTapeAutomaton, extra: int):
        if r.arity != 2 or not r.is_deterministic:
            raise ValueError("oracle needs a binary deterministic automaton")
        self.r = r
        self.extra = extra
        self.symbols = r.alphabet.symbols
        self.pad = r.alphabet.pad
        self._tail = lru_cache(maxsize=None)(self._tail_uncached)

    def _state(self, words):
        return _dfa_run(self.r, self.r.initial, pad_encode(words, self.pad))

    def _accepting(self, state) -> bool:
        return state is not None and state in self.r.finals

    def _distinguishes(self, quad) -> bool:
        f = [self._accepting(s) for s in quad]
        return f[0] != f[1] or f[2] != f[3]

    def _tail_uncached(self, quad) -> bool:
        """Some tail of length 1..extra distinguishes, starting from ``quad``
        = runs of R(w,u1), R(w',u1), R(u1,w), R(u1,w')."""
        pad = self.pad
        frontier = {quad}
        seen = set()
        for _ in range(self.extra):
            nxt = set()
            for s1, s2, s3, s4 in frontier:
                for x in self.symbols:
                    succ = (_dfa_step(self.r, s1, (pad, x)), _dfa_step(self.r, s2, (pad, x)),
                            _dfa_step(self.r, s3, (x, pad)), _dfa_step(self.r, s4, (x, pad)))
                    if self._distinguishes(succ):
                        return True
                    if succ not in seen:
                        seen.add(succ)
                        nxt.add(succ)
            if not nxt:
                return False
            frontier = nxt
        return False

    def related(self, w, w2) -> bool:
        m = max(len(w), len(w2))
        for u in iter_words(self.r.alphabet, m):
            quad = (self._state((w, u)), self._state((w2, u)),
                    self._state((u, w)), self._state((u, w2)))
            if self._distinguishes(quad):
                return True
            if len(u) == m and self.extra > 0 and self._tail(quad):
                return True
        return False


def relation_members(r: MultiTapeAutomaton, max_len: int):
    """All tuples with components of length ``<= max_len`` accepted by ``r``
    (any automaton; runs the subset simulation)."""
    words = list(iter_words(r.alphabet, max_len))
    for t in product(words, repeat=r.arity):
        if r.accepts_columns(pad_encode(t, r.alphabet.pad)):
            yield t
