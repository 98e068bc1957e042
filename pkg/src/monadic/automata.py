"""Synchronized multi-tape automata over padded product alphabets.

A relation over words is represented by an automaton that reads one column
per step. Column ``i`` holds the ``i``-th letter of every tape, with shorter
words padded on the right by a reserved pad symbol. The all-pad column never
occurs in an encoding and is rejected everywhere.

Every construction here is a pure function returning a fresh automaton whose
states are numbered in breadth-first discovery order, so equal inputs give
bit-identical outputs.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

Symbol = Hashable
Letter = tuple
Word = tuple


class AutomatonError(ValueError):
    """Raised for malformed automata or incompatible operands."""


class StateLimitExceeded(AutomatonError):
    """A construction outgrew its ``limit`` argument."""


class PaddingError(ValueError):
    """Raised when a column sequence is not a valid padded encoding."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered base letters plus one reserved pad symbol.

    The order of ``symbols`` fixes the enumeration order of column letters;
    the pad always sorts last.
    """

    symbols: tuple
    pad: str = "_"

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise AutomatonError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise AutomatonError("alphabet symbols must be distinct")
        if self.pad in self.symbols:
            raise AutomatonError(f"pad {self.pad!r} collides with a symbol")

    @property
    def padded(self) -> tuple:
        return self.symbols + (self.pad,)

    @cached_property
    def _tables(self) -> dict:
        return {}

    def letters(self, arity: int) -> tuple:
        """All column letters of the given arity, in canonical order."""
        return self.rank(arity)[0]

    def rank(self, arity: int) -> tuple[tuple, dict]:
        """Canonical letters of ``arity`` and the map letter -> position."""
        table = self._tables.get(arity)
        if table is None:
            allpad = (self.pad,) * arity
            letters = tuple(c for c in itertools.product(self.padded, repeat=arity) if c != allpad)
            table = self._tables[arity] = (letters, {c: i for i, c in enumerate(letters)})
        return table

    def letter_key(self, letter: Letter) -> int:
        return self.rank(len(letter))[1][letter]

    def extend(self, *symbols) -> "Alphabet":
        return Alphabet(self.symbols + tuple(symbols), self.pad)


class MultiTapeAutomaton:
    """An ``arity``-tape automaton ``(Q, delta, q0, F)`` with ``Q = 0..n_states-1``.

    ``transitions`` is an iterable of ``(source, letter, target)`` triples.
    Instances are immutable by convention: no method mutates them.
    """

    __slots__ = ("arity", "alphabet", "n_states", "initial", "finals", "delta")

    def __init__(self, arity: int, alphabet: Alphabet, n_states: int, initial: int,
                 finals: Iterable[int], transitions: Iterable[tuple]):
        if arity < 1:
            raise AutomatonError("arity must be at least 1")
        if n_states < 1 or not 0 <= initial < n_states:
            raise AutomatonError("initial state out of range")
        finals = frozenset(finals)
        if any(not 0 <= f < n_states for f in finals):
            raise AutomatonError("final state out of range")
        rank = alphabet.rank(arity)[1]
        table: list[dict] = [{} for _ in range(n_states)]
        for src, letter, dst in transitions:
            if not (0 <= src < n_states and 0 <= dst < n_states):
                raise AutomatonError(f"transition {src} -> {dst} leaves the state set")
            letter = tuple(letter)
            if letter not in rank:
                if letter == (alphabet.pad,) * arity:
                    raise AutomatonError("the all-pad column is not a letter")
                raise AutomatonError(f"bad letter {letter!r} for arity {arity}")
            table[src].setdefault(letter, set()).add(dst)
        self.arity = arity
        self.alphabet = alphabet
        self.n_states = n_states
        self.initial = initial
        self.finals = finals
        self.delta = tuple(
            {letter: tuple(sorted(row[letter])) for letter in sorted(row, key=rank.__getitem__)}
            for row in table
        )

    @classmethod
    def _trusted(cls, arity, alphabet, n_states, initial, finals, delta):
        """Internal constructor for rows already validated and in letter order."""
        self = object.__new__(cls)
        self.arity = arity
        self.alphabet = alphabet
        self.n_states = n_states
        self.initial = initial
        self.finals = frozenset(finals)
        self.delta = tuple(delta)
        return self

    def __repr__(self):
        return (f"MultiTapeAutomaton(arity={self.arity}, states={self.n_states}, "
                f"finals={sorted(self.finals)}, transitions={self.n_transitions})")

    @property
    def n_transitions(self) -> int:
        return sum(len(targets) for row in self.delta for targets in row.values())

    @property
    def is_deterministic(self) -> bool:
        return all(len(t) <= 1 for row in self.delta for t in row.values())

    @property
    def is_complete(self) -> bool:
        full = len(self.alphabet.letters(self.arity))
        return self.is_deterministic and all(len(row) == full for row in self.delta)

    def transitions(self) -> Iterator[tuple]:
        for src, row in enumerate(self.delta):
            for letter, targets in row.items():
                for dst in targets:
                    yield src, letter, dst

    def step(self, states: Iterable[int], letter: Letter) -> frozenset:
        out = set()
        for s in states:
            out.update(self.delta[s].get(letter, ()))
        return frozenset(out)

    def run(self, columns: Iterable[Letter], start: int | Iterable[int] | None = None) -> frozenset:
        """States reachable by reading ``columns`` (raw, unvalidated)."""
        if start is None:
            current = frozenset((self.initial,))
        elif isinstance(start, int):
            current = frozenset((start,))
        else:
            current = frozenset(start)
        for letter in columns:
            current = self.step(current, tuple(letter))
            if not current:
                break
        return current

    def accepts_columns(self, columns: Iterable[Letter]) -> bool:
        return not self.finals.isdisjoint(self.run(columns))

    def same_shape(self, other: "MultiTapeAutomaton") -> bool:
        return self.arity == other.arity and self.alphabet == other.alphabet

    def signature(self) -> tuple:
        """Hashable structural identity (used for golden and determinism tests)."""
        return (self.arity, self.alphabet, self.n_states, self.initial,
                tuple(sorted(self.finals)), tuple(self.transitions()))


# ---------------------------------------------------------------------------
# Encoding of word tuples


def _as_word(w) -> Word:
    return tuple(w)


def pad_encode(words: Sequence, pad: str = "_") -> tuple:
    """Column-wise padded encoding of a tuple of words.

    >>> pad_encode(("a", "", "ab"))
    (('a', '_', 'a'), ('_', '_', 'b'))
    """
    words = [_as_word(w) for w in words]
    for w in words:
        if pad in w:
            raise PaddingError(f"word {w!r} contains the pad symbol")
    length = max((len(w) for w in words), default=0)
    return tuple(
        tuple(w[i] if i < len(w) else pad for w in words) for i in range(length)
    )


def pad_decode(columns: Sequence[Letter], arity: int, pad: str = "_") -> tuple:
    """Inverse of :func:`pad_encode`; rejects invalid padding."""
    words = [[] for _ in range(arity)]
    ended = [False] * arity
    for pos, column in enumerate(columns):
        if len(column) != arity:
            raise PaddingError(f"column {pos} has {len(column)} entries, expected {arity}")
        if all(s == pad for s in column):
            raise PaddingError(f"column {pos} is all pad")
        for i, s in enumerate(column):
            if s == pad:
                ended[i] = True
            elif ended[i]:
                raise PaddingError(f"invalid padding: tape {i + 1} resumes at column {pos}")
            else:
                words[i].append(s)
    return tuple(tuple(w) for w in words)


def word_slice(w, i: int, mode: str = "suffix"):
    """``suffix``: drop the first ``i`` letters; ``prefix``: keep the first ``i``."""
    if not 0 <= i <= len(w):
        raise ValueError(f"slice position {i} outside 0..{len(w)}")
    if mode == "suffix":
        return w[i:]
    if mode == "prefix":
        return w[:i]
    raise ValueError(f"unknown mode {mode!r}")


def accepts(a: MultiTapeAutomaton, words: Sequence) -> bool:
    """Membership of a word tuple in the relation of ``a``."""
    if len(words) != a.arity:
        raise AutomatonError(f"expected {a.arity} words, got {len(words)}")
    return a.accepts_columns(pad_encode(words, a.alphabet.pad))


def _step_mask(mask: int, letter: Letter, pad) -> int | None:
    """Track which tapes have ended; ``None`` if ``letter`` breaks padding."""
    new = mask
    for i, s in enumerate(letter):
        if s == pad:
            new |= 1 << i
        elif mask >> i & 1:
            return None
    return new


def is_valid_padding(columns: Iterable[Letter], pad: str = "_") -> bool:
    mask = 0
    for letter in columns:
        if all(s == pad for s in letter):
            return False
        mask = _step_mask(mask, letter, pad)
        if mask is None:
            return False
    return True


# ---------------------------------------------------------------------------
# Generic construction helpers


def _explore(arity: int, alphabet: Alphabet, start, expand: Callable, is_final: Callable,
             limit: int | None = None):
    """Build the reachable part of an implicitly given automaton.

    ``expand(key)`` yields ``(letter, successor_keys)`` pairs. States are
    numbered in breadth-first order with letters visited canonically.
    Returns the automaton and the list of keys indexed by state.
    """
    rank = alphabet.rank(arity)[1]
    index = {start: 0}
    keys = [start]
    rows = []
    queue = deque([start])
    while queue:
        key = queue.popleft()
        row = {}
        for letter, succs in sorted(expand(key), key=lambda item: rank[item[0]]):
            targets = set()
            for succ in succs:
                if succ not in index:
                    if limit is not None and len(keys) >= limit:
                        raise StateLimitExceeded(f"more than {limit} states")
                    index[succ] = len(keys)
                    keys.append(succ)
                    queue.append(succ)
                targets.add(index[succ])
            if targets:
                if letter in row:
                    targets.update(row[letter])
                row[letter] = tuple(targets) if len(targets) == 1 else tuple(sorted(targets))
        rows.append(row)
    finals = [i for i, k in enumerate(keys) if is_final(k)]
    return MultiTapeAutomaton._trusted(arity, alphabet, len(keys), 0, finals, rows), keys


def _require_same_shape(a: MultiTapeAutomaton, b: MultiTapeAutomaton):
    if a.arity != b.arity:
        raise AutomatonError(f"arity mismatch: {a.arity} vs {b.arity}")
    if a.alphabet != b.alphabet:
        raise AutomatonError("alphabet mismatch")


def valid_pad(arity: int, alphabet: Alphabet) -> MultiTapeAutomaton:
    """Automaton accepting exactly the validly padded column words.

    States are the sets of tapes that have already ended (every proper
    subset of the tapes is reachable, so there are ``2**arity - 1`` states).
    """
    pad = alphabet.pad
    letters = alphabet.letters(arity)

    def expand(mask):
        for letter in letters:
            nxt = _step_mask(mask, letter, pad)
            if nxt is not None:
                yield letter, (nxt,)

    a, _ = _explore(arity, alphabet, 0, expand, lambda _: True)
    return a


def relabel_states(a: MultiTapeAutomaton, perm: Sequence[int]) -> MultiTapeAutomaton:
    """Rename state ``s`` to ``perm[s]``; the language is unchanged."""
    if sorted(perm) != list(range(a.n_states)):
        raise AutomatonError("perm must be a permutation of the states")
    return MultiTapeAutomaton(
        a.arity, a.alphabet, a.n_states, perm[a.initial], [perm[f] for f in a.finals],
        [(perm[s], letter, perm[t]) for s, letter, t in a.transitions()],
    )


def permute_tapes(a: MultiTapeAutomaton, order: Sequence[int]) -> MultiTapeAutomaton:
    """Tape ``i`` of the result is tape ``order[i]`` of ``a``."""
    if sorted(order) != list(range(a.arity)):
        raise AutomatonError("order must be a permutation of the tapes")
    return MultiTapeAutomaton(
        a.arity, a.alphabet, a.n_states, a.initial, a.finals,
        [(s, tuple(letter[j] for j in order), t) for s, letter, t in a.transitions()],
    )


def with_alphabet(a: MultiTapeAutomaton, alphabet: Alphabet) -> MultiTapeAutomaton:
    """Reinterpret ``a`` over a larger alphabet with the same pad."""
    if alphabet.pad != a.alphabet.pad or not set(a.alphabet.symbols) <= set(alphabet.symbols):
        raise AutomatonError("target alphabet must extend the source alphabet")
    return MultiTapeAutomaton(a.arity, alphabet, a.n_states, a.initial, a.finals,
                              a.transitions())


# ---------------------------------------------------------------------------
# Reachability, emptiness, trimming


def reachable(a: MultiTapeAutomaton, start: Iterable[int] | None = None) -> set:
    seen = set((a.initial,) if start is None else start)
    queue = deque(seen)
    while queue:
        s = queue.popleft()
        for targets in a.delta[s].values():
            for t in targets:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
    return seen


def coreachable(a: MultiTapeAutomaton) -> set:
    back: list[list[int]] = [[] for _ in range(a.n_states)]
    for s, _, t in a.transitions():
        back[t].append(s)
    seen = set(a.finals)
    queue = deque(seen)
    while queue:
        t = queue.popleft()
        for s in back[t]:
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def is_empty(a: MultiTapeAutomaton) -> bool:
    return a.finals.isdisjoint(reachable(a))


def _restrict(a: MultiTapeAutomaton, keep: set) -> MultiTapeAutomaton:
    order = sorted(keep)
    new = {s: i for i, s in enumerate(order)}
    rows = []
    for s in order:
        row = {}
        for letter, targets in a.delta[s].items():
            kept = tuple(new[t] for t in targets if t in new)
            if kept:
                row[letter] = kept
        rows.append(row)
    return MultiTapeAutomaton._trusted(a.arity, a.alphabet, len(order), new[a.initial],
                                       [new[f] for f in a.finals if f in new], rows)


def trim(a: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Drop states that are not both reachable and co-reachable.

    The initial state always survives, so an empty relation trims to a single
    non-final state without transitions.
    """
    keep = reachable(a) & coreachable(a)
    keep.add(a.initial)
    return _restrict(a, keep)


# ---------------------------------------------------------------------------
# Determinization, completion, complement, minimization


def determinize(a: MultiTapeAutomaton, complete: bool = True,
                limit: int | None = None) -> MultiTapeAutomaton:
    """Subset construction over reachable subsets.

    With ``complete`` the empty subset is added as a sink so that every state
    has exactly one successor on every letter. ``limit`` caps the number of
    subsets (``StateLimitExceeded`` beyond it).
    """
    letters = a.alphabet.letters(a.arity)
    delta = a.delta

    def expand(subset):
        moves: dict = {}
        for s in subset:
            for letter, targets in delta[s].items():
                moves.setdefault(letter, set()).update(targets)
        for letter, targets in moves.items():
            yield letter, (tuple(sorted(targets)),)
        if complete:
            for letter in letters:
                if letter not in moves:
                    yield letter, ((),)

    finals = a.finals
    d, _ = _explore(a.arity, a.alphabet, (a.initial,), expand,
                    lambda subset: not finals.isdisjoint(subset), limit)
    return d


def complete(a: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Add a sink to a deterministic automaton (no-op if already complete)."""
    if not a.is_deterministic:
        raise AutomatonError("complete() needs a deterministic automaton")
    if a.is_complete:
        return a
    return determinize(a)


def complement_padded(a: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Complement relative to the validly padded words.

    The result encodes the complementary relation and accepts no garbage.
    """
    d = determinize(a)
    pad = a.alphabet.pad
    letters = a.alphabet.letters(a.arity)

    def expand(key):
        state, mask = key
        row = d.delta[state]
        for letter in letters:
            nxt = _step_mask(mask, letter, pad)
            if nxt is not None:
                yield letter, ((row[letter][0], nxt),)

    c, _ = _explore(a.arity, a.alphabet, (d.initial, 0), expand,
                    lambda key: key[0] not in d.finals)
    return c


def _refine(d: MultiTapeAutomaton) -> list[int]:
    """Moore partition refinement on a complete DFA; returns class per state."""
    letters = d.alphabet.letters(d.arity)
    succ = [[row[letter][0] for letter in letters] for row in d.delta]
    cls = [1 if s in d.finals else 0 for s in range(d.n_states)]
    n_classes = len(set(cls))
    while True:
        sigs: dict = {}
        new = []
        for s in range(d.n_states):
            sig = (cls[s], tuple(cls[t] for t in succ[s]))
            new.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == n_classes:
            return new
        cls, n_classes = new, len(sigs)


def minimize(a: MultiTapeAutomaton, limit: int | None = None) -> MultiTapeAutomaton:
    """Canonical minimal complete DFA for the padded relation of ``a``.

    Garbage (invalidly padded) words are discarded first, so two automata for
    the same relation minimize to identical outputs.
    """
    v = boolean_product(a, valid_pad(a.arity, a.alphabet), "and")
    d = determinize(v, limit=limit)
    cls = _refine(d)
    quotient = {}
    for s in range(d.n_states):
        quotient.setdefault(cls[s], s)

    def expand(c):
        for letter, targets in d.delta[quotient[c]].items():
            yield letter, (cls[targets[0]],)

    m, _ = _explore(a.arity, a.alphabet, cls[d.initial], expand,
                    lambda c: quotient[c] in d.finals)
    return m


def reduce_bisimulation(a: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Quotient by the coarsest forward bisimulation.

    Works on nondeterministic automata, never adds states and preserves the
    accepted words.
    """
    cls = [1 if s in a.finals else 0 for s in range(a.n_states)]
    n_classes = len(set(cls))
    while True:
        sigs: dict = {}
        new = []
        for s in range(a.n_states):
            moves = tuple((letter, frozenset(cls[t] for t in targets))
                          for letter, targets in a.delta[s].items())
            new.append(sigs.setdefault((cls[s], moves), len(sigs)))
        if len(sigs) == n_classes:
            break
        cls, n_classes = new, len(sigs)
    rep = {}
    for s in range(a.n_states):
        rep.setdefault(cls[s], s)

    def expand(c):
        for letter, targets in a.delta[rep[c]].items():
            yield letter, tuple(sorted({cls[t] for t in targets}))

    out, _ = _explore(a.arity, a.alphabet, cls[a.initial], expand,
                      lambda c: rep[c] in a.finals)
    return out


def simulation_preorder(a: MultiTapeAutomaton) -> list[int]:
    """Greatest forward simulation as bitmasks: bit ``y`` of ``sim[x]`` is set
    iff ``y`` can match every move of ``x`` forever and is final whenever
    ``x`` is. Then every word accepted from ``x`` is accepted from ``y``."""
    n = a.n_states
    delta = a.delta
    letter_sets = [frozenset(row) for row in delta]
    final_mask = sum(1 << f for f in a.finals)
    everything = (1 << n) - 1
    pred: dict = {}
    preds: list[set] = [set() for _ in range(n)]
    for src, letter, dst in a.transitions():
        pred.setdefault(letter, [0] * n)[dst] |= 1 << src
        preds[dst].add(src)
    sim = []
    for x in range(n):
        mask = final_mask if x in a.finals else everything
        for y in range(n):
            if (mask >> y) & 1 and not letter_sets[x] <= letter_sets[y]:
                mask &= ~(1 << y)
        sim.append(mask)
    cache: dict = {}

    def pre(letter, z):
        # states with a ``letter`` move into sim[z]
        key = (letter, z)
        hit = cache.get(key)
        if hit is not None and hit[0] == sim[z]:
            return hit[1]
        table = pred[letter]
        out = 0
        m = sim[z]
        while m:
            low = m & -m
            out |= table[low.bit_length() - 1]
            m ^= low
        cache[key] = (sim[z], out)
        return out

    queue = deque(range(n))
    pending = set(queue)
    while queue:
        x = queue.popleft()
        pending.discard(x)
        new = sim[x]
        for letter, targets in delta[x].items():
            for z in targets:
                new &= pre(letter, z)
        if new != sim[x]:
            sim[x] = new
            for p in preds[x]:
                if p not in pending:
                    pending.add(p)
                    queue.append(p)
    return sim


def reduce_simulation(a: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Merge simulation-equivalent states and drop transitions into a state
    strictly simulated by a sibling target on the same letter. Preserves the
    accepted words; the result is trimmed."""
    sim = simulation_preorder(a)

    def below(x, y):
        return (sim[x] >> y) & 1 == 1

    rep = list(range(a.n_states))
    for x in range(a.n_states):
        for y in range(x):
            if below(x, y) and below(y, x):
                rep[x] = rep[y]
                break

    def expand(x):
        for letter, targets in a.delta[x].items():
            ts = sorted({rep[t] for t in targets})
            kept = tuple(t for t in ts
                         if not any(u != t and below(t, u) and not below(u, t) for u in ts))
            yield letter, kept

    out, _ = _explore(a.arity, a.alphabet, rep[a.initial], expand, lambda x: x in a.finals)
    return trim(out)


def is_universal_padded(a: MultiTapeAutomaton) -> bool:
    """True iff ``a`` accepts every validly padded word."""
    return is_empty(complement_padded(a))


def equivalent(a: MultiTapeAutomaton, b: MultiTapeAutomaton) -> bool:
    """Same encoded relation (garbage words ignored)."""
    _require_same_shape(a, b)
    return minimize(a).signature() == minimize(b).signature()


# ---------------------------------------------------------------------------
# Boolean operations, cylindrification, projection, union


def boolean_product(a: MultiTapeAutomaton, b: MultiTapeAutomaton, op: str = "and") -> MultiTapeAutomaton:
    """Pair construction for intersection (``and``), union (``or``) or
    symmetric difference (``xor``).

    For ``or`` and ``xor`` both operands are implicitly completed with a sink
    (``None`` in the pair), so a run survives as long as either side does.
    ``xor`` determinizes nondeterministic operands first.
    """
    _require_same_shape(a, b)
    if op == "xor":
        # exactly-one-final is only meaningful along unique runs
        if not a.is_deterministic:
            a = determinize(a, complete=False)
        if not b.is_deterministic:
            b = determinize(b, complete=False)
    da, db = a.delta, b.delta
    if op == "and":
        def expand(key):
            x, y = key
            ra, rb = da[x], db[y]
            if len(ra) <= len(rb):
                for letter, sa in ra.items():
                    sb = rb.get(letter)
                    if sb:
                        yield letter, [(p, q) for p in sa for q in sb]
            else:
                for letter, sb in rb.items():
                    sa = ra.get(letter)
                    if sa:
                        yield letter, [(p, q) for p in sa for q in sb]

        def is_final(key):
            return key[0] in a.finals and key[1] in b.finals
    elif op in ("or", "xor"):
        def expand(key):
            x, y = key
            ra = da[x] if x is not None else {}
            rb = db[y] if y is not None else {}
            for letter in set(ra) | set(rb):
                sa = ra.get(letter) or (None,)
                sb = rb.get(letter) or (None,)
                yield letter, [(p, q) for p in sa for q in sb]

        if op == "or":
            def is_final(key):
                return key[0] in a.finals or key[1] in b.finals
        else:
            def is_final(key):
                return (key[0] in a.finals) != (key[1] in b.finals)
    else:
        raise ValueError(f"unknown boolean op {op!r}")
    result, _ = _explore(a.arity, a.alphabet, (a.initial, b.initial), expand, is_final)
    return result


def disjoint_union(*automata: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Nondeterministic union: a fresh initial state copies every operand's
    initial moves. Size is the sum of the operands plus one."""
    if not automata:
        raise AutomatonError("union of nothing")
    first = automata[0]
    for other in automata[1:]:
        _require_same_shape(first, other)
    edges = []
    finals = []
    offset = 1
    for a in automata:
        for s, letter, t in a.transitions():
            edges.append((s + offset, letter, t + offset))
            if s == a.initial:
                edges.append((0, letter, t + offset))
        finals.extend(f + offset for f in a.finals)
        if a.initial in a.finals:
            finals.append(0)
        offset += a.n_states
    return MultiTapeAutomaton(first.arity, first.alphabet, offset, 0, finals, edges)


def cylindrify(a: MultiTapeAutomaton, positions: Sequence[int], arity: int) -> MultiTapeAutomaton:
    """Lift ``a`` to ``arity`` tapes; tape ``i`` of ``a`` becomes tape ``positions[i]``.

    Tapes outside ``positions`` are unconstrained. Once every constrained tape
    has ended, ``a`` idles in a final state (pad extension). The result only
    accepts validly padded words.
    """
    positions = tuple(positions)
    if len(positions) != a.arity or len(set(positions)) != a.arity:
        raise AutomatonError("positions must be an injective map from the tapes of a")
    if any(not 0 <= p < arity for p in positions):
        raise AutomatonError(f"positions must lie in 0..{arity - 1}")
    alphabet = a.alphabet
    pad = alphabet.pad
    free = [i for i in range(arity) if i not in positions]
    free_choices = list(itertools.product(alphabet.padded, repeat=len(free)))
    restricted_pad = (pad,) * a.arity
    full = (1 << arity) - 1

    def expand(key):
        state, mask = key
        moves = list(a.delta[state].items())
        if state in a.finals:
            moves.append((restricted_pad, (state,)))
        for restricted, targets in moves:
            for choice in free_choices:
                letter = [pad] * arity
                for i, p in enumerate(positions):
                    letter[p] = restricted[i]
                for i, p in enumerate(free):
                    letter[p] = choice[i]
                letter = tuple(letter)
                nxt = _step_mask(mask, letter, pad)
                if nxt is None or nxt == full:
                    continue
                yield letter, [(t, nxt) for t in targets]

    result, _ = _explore(arity, alphabet, (a.initial, 0), expand, lambda key: key[0] in a.finals)
    return result


def project(a: MultiTapeAutomaton, tape: int) -> MultiTapeAutomaton:
    """Existentially quantify tape ``tape`` away.

    Columns that become all-pad after deletion can only trail the word, so
    they are absorbed by marking final every state that reaches a final state
    through such columns alone.
    """
    if a.arity < 2:
        raise AutomatonError("cannot project a 1-tape automaton")
    if not 0 <= tape < a.arity:
        raise AutomatonError(f"tape index {tape} out of range")
    pad = a.alphabet.pad
    back: list[list[int]] = [[] for _ in range(a.n_states)]
    edges = []
    for s, letter, t in a.transitions():
        rest = letter[:tape] + letter[tape + 1:]
        if all(x == pad for x in rest):
            back[t].append(s)
        else:
            edges.append((s, rest, t))
    finals = set(a.finals)
    queue = deque(finals)
    while queue:
        t = queue.popleft()
        for s in back[t]:
            if s not in finals:
                finals.add(s)
                queue.append(s)
    return MultiTapeAutomaton(a.arity - 1, a.alphabet, a.n_states, a.initial, finals, edges)


# ---------------------------------------------------------------------------
# One-tape helpers used to assemble relations from languages


def _require_unary(*automata):
    for a in automata:
        if a.arity != 1:
            raise AutomatonError("operation defined on 1-tape automata only")


def word_language(alphabet: Alphabet, words: Iterable) -> MultiTapeAutomaton:
    """Trie automaton for a finite set of words."""
    return finite_relation(alphabet, [(w,) for w in words], 1)


def finite_relation(alphabet: Alphabet, tuples: Iterable[Sequence], arity: int) -> MultiTapeAutomaton:
    """Trie over padded encodings of the given word tuples."""
    tuples = list(tuples)
    if any(len(t) != arity for t in tuples):
        raise AutomatonError("tuple arity mismatch")
    encodings = sorted({pad_encode(t, alphabet.pad) for t in tuples},
                       key=lambda cols: [alphabet.letter_key(c) for c in cols])
    nodes = {(): 0}
    edges = []
    finals = set()
    for cols in encodings:
        for i in range(len(cols)):
            prefix = cols[:i + 1]
            if prefix not in nodes:
                nodes[prefix] = len(nodes)
                edges.append((nodes[cols[:i]], cols[i], nodes[prefix]))
        finals.add(nodes[cols])
    return MultiTapeAutomaton(arity, alphabet, len(nodes), 0, finals, edges)


def universal_language(alphabet: Alphabet) -> MultiTapeAutomaton:
    return MultiTapeAutomaton(1, alphabet, 1, 0, [0], [(0, (x,), 0) for x in alphabet.symbols])


def concat(a: MultiTapeAutomaton, b: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Language concatenation without epsilon moves."""
    _require_unary(a, b)
    _require_same_shape(a, b)
    off = a.n_states
    edges = list(a.transitions())
    edges += [(s + off, letter, t + off) for s, letter, t in b.transitions()]
    for f in a.finals:
        for letter, targets in b.delta[b.initial].items():
            edges += [(f, letter, t + off) for t in targets]
    finals = {f + off for f in b.finals}
    if b.initial in b.finals:
        finals |= a.finals
    return MultiTapeAutomaton(1, a.alphabet, a.n_states + b.n_states, a.initial, finals, edges)


def star(a: MultiTapeAutomaton) -> MultiTapeAutomaton:
    """Kleene star without epsilon moves: fresh final initial state 0."""
    _require_unary(a)
    edges = [(s + 1, letter, t + 1) for s, letter, t in a.transitions()]
    init_moves = [(letter, t + 1) for letter, targets in a.delta[a.initial].items() for t in targets]
    for src in [0] + [f + 1 for f in a.finals]:
        edges += [(src, letter, t) for letter, t in init_moves]
    finals = [0] + [f + 1 for f in a.finals]
    return MultiTapeAutomaton(1, a.alphabet, a.n_states + 1, 0, finals, edges)


def language_product(languages: Sequence[MultiTapeAutomaton]) -> MultiTapeAutomaton:
    """The relation ``L1 x ... x Ln`` from 1-tape automata over one alphabet."""
    _require_unary(*languages)
    n = len(languages)
    if n == 0:
        raise AutomatonError("empty product")
    result = cylindrify(languages[0], (0,), n)
    for i, lang in enumerate(languages[1:], start=1):
        _require_same_shape(languages[0], lang)
        result = boolean_product(result, cylindrify(lang, (i,), n), "and")
    return result


def iter_words(alphabet: Alphabet, max_len: int) -> Iterator[Word]:
    """All words of length at most ``max_len``, by length then symbol order."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet.symbols, repeat=n)
