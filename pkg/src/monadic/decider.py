"""Deciding monadic decomposability by reachability in small product automata.

The input of :func:`decide_binary` is an automaton ``N`` for the
inequivalence relation of a binary relation ``R``. ``R`` fails to be
decomposable iff there are states ``q, q', p, r`` (``p`` final) and
nonempty equal-length word pairs ``(w0, v0)``, ``(w1, v1)``, ``(w, v)`` with

    check A:  q0 -(w0,v0)-> q     q0 -(v0,v0)-> q'
              q' -(w1,v1)-> q     q' -(v1,v1)-> q'
              q -(_,w1)-> p       q -(_,v1)-> r
    check B:  q' -(w,v)-> q       q' -(v,v)-> q'
              q -(_,w)-> p        q -(_,v)-> r
              r -(_,w)-> p        r -(_,v)-> r

where ``(_, x)`` reads ``x`` on the second tape against pads on the first.
Each check is one breadth-first search in a product of copies of ``N``
that read shared letters, so the search also yields shortest witnesses.
"""
from __future__ import annotations

import enum
import json
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product

from .automata import (
    AutomatonError,
    MultiTapeAutomaton,
    accepts,
    boolean_product,
    iter_words,
    trim,
    valid_pad,
)
from .relations import induced_binary, not_sim_for_decider


class Verdict(str, enum.Enum):
    DECOMPOSABLE = "decomposable"
    NOT_DECOMPOSABLE = "not_decomposable"

    def __str__(self):
        return self.value


CERTIFICATE_FIELDS = ("q", "qp", "p", "r", "w0", "v0", "w1", "v1", "w", "v")

# Copy kinds of the product searches. Each copy reads a letter built from
# the shared pair (a, b): the word pair itself, the diagonal on the second
# word, or the first/second word against pads.
_WV, _VV, _PW, _PV = "wv", "vv", "pw", "pv"
_CHECK_A1 = (_WV, _VV)
_CHECK_A2 = (_WV, _VV, _PW, _PV)
_CHECK_B = (_WV, _VV, _PW, _PV, _PW, _PV)


@dataclass(frozen=True)
class Certificate:
    """States ``q, q', p, r`` of ``N`` plus the pump words of both checks."""

    q: int
    qp: int
    p: int
    r: int
    w0: tuple
    v0: tuple
    w1: tuple
    v1: tuple
    w: tuple
    v: tuple

    def to_dict(self) -> dict:
        out = {}
        for name in CERTIFICATE_FIELDS:
            value = getattr(self, name)
            out[name] = [_jsonable(x) for x in value] if isinstance(value, tuple) else value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        missing = [f for f in CERTIFICATE_FIELDS if f not in data]
        if missing:
            raise ValueError(f"certificate is missing fields {missing}")
        kwargs = {}
        for name in CERTIFICATE_FIELDS:
            value = data[name]
            kwargs[name] = int(value) if name in ("q", "qp", "p", "r") else tuple(
                _tupled(x) for x in value)
        return cls(**kwargs)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def _jsonable(x):
    return [_jsonable(y) for y in x] if isinstance(x, tuple) else x


def _tupled(x):
    return tuple(_tupled(y) for y in x) if isinstance(x, list) else x


@dataclass
class Decision:
    verdict: Verdict
    certificate: Certificate | None = None
    not_sim: MultiTapeAutomaton | None = None
    failing_k: int | None = None
    per_k_verdicts: tuple = ()
    stats: dict = field(default_factory=dict)

    @property
    def decomposable(self) -> bool:
        return self.verdict is Verdict.DECOMPOSABLE


@dataclass(frozen=True)
class Validation:
    ok: bool
    failed: str | None = None

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# Product searches


def _copy_letter(kind: str, a, b, pad):
    if kind == _WV:
        return (a, b)
    if kind == _VV:
        return (b, b)
    if kind == _PW:
        return (pad, a)
    return (pad, b)


def _copy_class(kind: str) -> str:
    """Which letters a copy can ever read: pairs, diagonal, or pad-first."""
    return {_WV: "pair", _VV: "diag"}.get(kind, "pad")


class _ProductSearch:
    """Breadth-first search from ``start`` in the product of ``len(kinds)``
    copies of ``n`` reading the shared pair ``(a, b)`` over ``Sigma x Sigma``.

    ``parents`` maps every tuple reached by a path of length at least one
    to ``(parent_tuple, (a, b))``. Letters are expanded in alphabet order, so
    parent pointers spell shortest, lexicographically least witnesses. The
    search is lazy: :meth:`reaches` only expands until its target shows up,
    and later calls resume where the previous one stopped.

    ``allowed`` optionally restricts each component to a state set; the
    callers pass sets closed under predecessors (states that can still
    reach the component's target), which leaves every path into the target
    and the discovery order among the kept tuples unchanged.
    """

    def __init__(self, n: MultiTapeAutomaton, kinds: tuple, start: tuple, allowed=None):
        symbols = n.alphabet.symbols
        pad = n.alphabet.pad
        self.start = start
        self.parents: dict = {}
        self._queue = deque([start])
        self._rows = []
        seen_rows = set()
        for a in symbols:
            for b in symbols:
                letters = tuple(_copy_letter(kind, a, b, pad) for kind in kinds)
                if letters not in seen_rows:
                    seen_rows.add(letters)
                    self._rows.append(((a, b), letters))
        self._delta = n.delta
        self._allowed = allowed
        self._succ = [{} for _ in kinds]

    def _successors(self, i: int, state: int) -> list:
        """Targets of component ``i`` from ``state``, one entry per letter row."""
        table = self._succ[i]
        out = table.get(state)
        if out is None:
            row = self._delta[state]
            ok = self._allowed[i] if self._allowed is not None else None
            out = []
            for _, letters in self._rows:
                targets = row.get(letters[i], ())
                if ok is not None and targets:
                    targets = tuple(t for t in targets if t in ok)
                out.append(targets)
            table[state] = out
        return out

    def _expand(self, node):
        parents = self.parents
        queue = self._queue
        lists = [self._successors(i, state) for i, state in enumerate(node)]
        for j, (pair, _) in enumerate(self._rows):
            choices = []
            for succ in lists:
                targets = succ[j]
                if not targets:
                    break
                choices.append(targets)
            else:
                for nxt in _tuples(choices):
                    if nxt not in parents:
                        parents[nxt] = (node, pair)
                        queue.append(nxt)

    def reaches(self, target) -> bool:
        parents = self.parents
        queue = self._queue
        while target not in parents and queue:
            self._expand(queue.popleft())
        return target in parents

    def complete(self) -> dict:
        while self._queue:
            self._expand(self._queue.popleft())
        return self.parents


def _product_search(n: MultiTapeAutomaton, kinds: tuple, start: tuple, allowed=None) -> dict:
    """Every tuple reachable from ``start`` (see :class:`_ProductSearch`)."""
    return _ProductSearch(n, kinds, start, allowed).complete()


def _tuples(choices):
    if all(len(c) == 1 for c in choices):
        yield tuple(c[0] for c in choices)
        return
    yield from product(*choices)


def _spell(parents: dict, start: tuple, end: tuple) -> tuple[tuple, tuple]:
    """Recover the word pair labelling the search path ``start -> end``."""
    pairs = []
    node = end
    while True:
        prev, pair = parents[node]
        pairs.append(pair)
        node = prev
        if node == start:
            break
    pairs.reverse()
    return tuple(a for a, _ in pairs), tuple(b for _, b in pairs)


# ---------------------------------------------------------------------------
# Deciding


class _Searcher:
    """Product searches shared between quadruples, with caches.

    Check B's first four conditions are those of the second half of check A
    with ``(w1, v1) = (w, v)``, so a quadruple passes both checks iff it
    passes the ``(q0, q0)`` search and check B. The 4-fold search is only
    run to spell ``(w1, v1)`` for the reported quadruple. Cheap two-copy
    searches on necessary conditions filter quadruples first.
    """

    def __init__(self, n: MultiTapeAutomaton):
        self.n = n
        self.q0 = n.initial
        self.finals = frozenset(n.finals)
        pad = n.alphabet.pad
        self._rev = {"pair": {}, "diag": {}, "pad": {}}
        for s, letter, t in n.transitions():
            if letter[0] == pad:
                cls = "pad"
            elif letter[1] == pad:
                continue
            else:
                cls = "diag" if letter[0] == letter[1] else "pair"
            self._rev[cls].setdefault(t, set()).add(s)
            if cls == "diag":
                self._rev["pair"].setdefault(t, set()).add(s)
        self._coreach: dict = {}
        self._b: dict = {}
        self._pad_pairs: dict = {}
        self.a1 = _product_search(n, _CHECK_A1, (self.q0, self.q0))

    def coreach(self, cls: str, targets: frozenset) -> frozenset:
        """States reaching ``targets`` by a path over letters of ``cls``."""
        key = (cls, targets)
        if key not in self._coreach:
            rev = self._rev[cls]
            seen = set(targets)
            stack = list(targets)
            while stack:
                for s in rev.get(stack.pop(), ()):
                    if s not in seen:
                        seen.add(s)
                        stack.append(s)
            self._coreach[key] = frozenset(seen)
        return self._coreach[key]

    def _allowed(self, kinds, targets):
        return tuple(self.coreach(_copy_class(k), t) for k, t in zip(kinds, targets))

    def loops(self, q, qp) -> bool:
        """Some ``(w, v)`` has ``q' -(w,v)-> q`` and ``q' -(v,v)-> q'``."""
        allowed = self._allowed(_CHECK_A1, (frozenset([q]), frozenset([qp])))
        return _ProductSearch(self.n, _CHECK_A1, (qp, qp), allowed).reaches((q, qp))

    def pad_pairs(self, q, r):
        """Two-copy searches from ``(q, r)`` on pad-first letters: the ``v``
        search must reach ``(r, r)``, the ``w`` search some ``(p, p)``."""
        key = (q, r)
        if key not in self._pad_pairs:
            only_r = frozenset([r])
            allowed = self._allowed((_PV, _PV), (only_r, only_r))
            v_ok = _ProductSearch(self.n, (_PV, _PV), (q, r), allowed).reaches((r, r))
            w_reach = frozenset()
            if v_ok:
                allowed = self._allowed((_PW, _PW), (self.finals, self.finals))
                w_reach = frozenset(_product_search(self.n, (_PW, _PW), (q, r), allowed))
            self._pad_pairs[key] = (v_ok, w_reach)
        return self._pad_pairs[key]

    def b(self, q, qp, r):
        key = (q, qp, r)
        if key not in self._b:
            only_r = frozenset([r])
            allowed = self._allowed(_CHECK_B, (frozenset([q]), frozenset([qp]), self.finals,
                                               only_r, self.finals, only_r))
            self._b[key] = _ProductSearch(self.n, _CHECK_B, (qp, qp, q, q, r, r), allowed)
        return self._b[key]

    def a2(self, q, qp, p, r):
        allowed = self._allowed(_CHECK_A2, (frozenset([q]), frozenset([qp]),
                                            frozenset([p]), frozenset([r])))
        return _product_search(self.n, _CHECK_A2, (qp, qp, q, q), allowed)

    def candidates(self, q, qp):
        """First passing ``(p, r)`` for this ``(q, q')`` and the number of
        quadruples examined."""
        n = self.n
        finals = sorted(n.finals)
        if (q, qp) not in self.a1 or not self.loops(q, qp):
            return None, n.n_states * len(finals)
        examined = 0
        for p in finals:
            for r in range(n.n_states):
                examined += 1
                v_ok, w_reach = self.pad_pairs(q, r)
                if not v_ok or (p, p) not in w_reach:
                    continue
                if self.b(q, qp, r).reaches((q, qp, p, r, p, r)):
                    return (p, r), examined
        return None, examined

    def certificate(self, q, qp, p, r) -> Certificate:
        q0 = self.q0
        w0, v0 = _spell(self.a1, (q0, q0), (q, qp))
        start2 = (qp, qp, q, q)
        w1, v1 = _spell(self.a2(q, qp, p, r), start2, (q, qp, p, r))
        start3 = (qp, qp, q, q, r, r)
        w, v = _spell(self.b(q, qp, r).parents, start3, (q, qp, p, r, p, r))
        return Certificate(q, qp, p, r, w0, v0, w1, v1, w, v)


def decide_binary(n: MultiTapeAutomaton, threads: int = 1) -> Decision:
    """Decide decomposability of ``R`` from an automaton ``n`` for its
    inequivalence relation.

    Quadruples are tried in lexicographic order ``(q, q', p, r)``; the first
    passing one is reported, so the answer is independent of ``threads``.
    """
    if n.arity != 2:
        raise AutomatonError("decide_binary expects a binary automaton")
    n = trim(n)
    searcher = _Searcher(n)
    pairs = [(q, qp) for q in range(n.n_states) for qp in range(n.n_states)]
    examined = 0
    hit = None
    if threads > 1:
        # ordered batches; the earliest hit of the first batch with one wins
        batch = 4 * threads
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for lo in range(0, len(pairs), batch):
                chunk = pairs[lo:lo + batch]
                results = list(pool.map(lambda pair: searcher.candidates(*pair), chunk))
                for (q, qp), (found, count) in zip(chunk, results):
                    examined += count
                    if found is not None:
                        hit = (q, qp) + found
                        break
                if hit is not None:
                    break
    else:
        for q, qp in pairs:
            found, count = searcher.candidates(q, qp)
            examined += count
            if found is not None:
                hit = (q, qp) + found
                break
    stats = {"not_sim_states": n.n_states, "quadruples_examined": examined}
    if hit is None:
        return Decision(Verdict.DECOMPOSABLE, not_sim=n, stats=stats)
    cert = searcher.certificate(*hit)
    return Decision(Verdict.NOT_DECOMPOSABLE, cert, not_sim=n, stats=stats)


def decide_nary(r: MultiTapeAutomaton, threads: int = 1) -> Decision:
    """Check every induced binary relation; report the first failing split."""
    if r.arity < 2:
        raise AutomatonError("decomposability needs arity at least 2")
    valid = boolean_product(r, valid_pad(r.arity, r.alphabet), "and")
    verdicts = []
    per_k_states = []
    examined = 0
    first_fail = None
    for k in range(1, r.arity):
        rk = induced_binary(valid, k)
        sub = decide_binary(not_sim_for_decider(rk), threads=threads)
        verdicts.append(sub.verdict)
        per_k_states.append(sub.stats["not_sim_states"])
        examined += sub.stats["quadruples_examined"]
        if first_fail is None and not sub.decomposable:
            first_fail = (k, sub)
    stats = {"input_states": r.n_states, "not_sim_states": per_k_states,
             "quadruples_examined": examined}
    if first_fail is None:
        return Decision(Verdict.DECOMPOSABLE, per_k_verdicts=tuple(verdicts), stats=stats)
    k, sub = first_fail
    return Decision(Verdict.NOT_DECOMPOSABLE, sub.certificate, not_sim=sub.not_sim,
                    failing_k=k, per_k_verdicts=tuple(verdicts), stats=stats)


def decide(r: MultiTapeAutomaton, threads: int = 1) -> Decision:
    """Full pipeline from a relation automaton of any arity >= 2.

    Binary inputs are handled directly (no relabelling), so their
    certificates speak about words over the input alphabet.
    """
    if r.arity == 2:
        out = decide_binary(not_sim_for_decider(r), threads=threads)
        out.per_k_verdicts = (out.verdict,)
        if not out.decomposable:
            out.failing_k = 1
        out.stats = {"input_states": r.n_states, "not_sim_states": [out.stats["not_sim_states"]],
                     "quadruples_examined": out.stats["quadruples_examined"]}
        return out
    return decide_nary(r, threads=threads)


# ---------------------------------------------------------------------------
# Certificates


def _structure_ok(c: Certificate) -> str | None:
    for x, y, name in ((c.w0, c.v0, "(w0,v0)"), (c.w1, c.v1, "(w1,v1)"), (c.w, c.v, "(w,v)")):
        if len(x) != len(y) or not x:
            return f"{name} must be nonempty and of equal length"
    return None


def expand_family(c: Certificate, k: int) -> list[tuple]:
    """Words ``x_0..x_k`` of the pairwise inequivalent family.

    ``x_0 = w0``, ``y_0 = v0``, ``x_1 = v0 w1``, ``y_1 = v0 v1`` and then
    ``x_(i+1) = y_i w``, ``y_(i+1) = y_i v``.
    """
    problem = _structure_ok(c)
    if problem:
        raise ValueError(f"invalid certificate: {problem}")
    xs = [c.w0]
    y = c.v0
    for i in range(k):
        if i == 0:
            xs.append(y + c.w1)
            y = y + c.v1
        else:
            xs.append(y + c.w)
            y = y + c.v
    return xs


def validate_certificate(c: Certificate, n: MultiTapeAutomaton, k: int = 10) -> Validation:
    """Replay all twelve run conditions on ``n`` and check the first ``k+1``
    family words pairwise."""
    problem = _structure_ok(c)
    if problem:
        return Validation(False, problem)
    states = range(n.n_states)
    if any(s not in states for s in (c.q, c.qp, c.p, c.r)):
        return Validation(False, "state index out of range")
    if c.p not in n.finals:
        return Validation(False, "p is not final")
    pad = n.alphabet.pad

    def reaches(src, left, right, dst):
        cols = tuple(zip(left, right)) if left is not None else tuple((pad, x) for x in right)
        return dst in n.run(cols, src)

    conditions = [
        ("A(i) q0 -(w0,v0)-> q", n.initial, c.w0, c.v0, c.q),
        ("A(ii) q0 -(v0,v0)-> q'", n.initial, c.v0, c.v0, c.qp),
        ("A(iii) q' -(w1,v1)-> q", c.qp, c.w1, c.v1, c.q),
        ("A(iv) q' -(v1,v1)-> q'", c.qp, c.v1, c.v1, c.qp),
        ("A(v) q -(_,w1)-> p", c.q, None, c.w1, c.p),
        ("A(vi) q -(_,v1)-> r", c.q, None, c.v1, c.r),
        ("B(i) q' -(w,v)-> q", c.qp, c.w, c.v, c.q),
        ("B(ii) q' -(v,v)-> q'", c.qp, c.v, c.v, c.qp),
        ("B(iii) q -(_,w)-> p", c.q, None, c.w, c.p),
        ("B(iv) q -(_,v)-> r", c.q, None, c.v, c.r),
        ("B(v) r -(_,w)-> p", c.r, None, c.w, c.p),
        ("B(vi) r -(_,v)-> r", c.r, None, c.v, c.r),
    ]
    for name, src, left, right, dst in conditions:
        if not reaches(src, left, right, dst):
            return Validation(False, f"condition {name} fails")
    family = expand_family(c, k)
    for i, j in combinations(range(len(family)), 2):
        if not accepts(n, (family[i], family[j])):
            return Validation(False, f"family pair (x{i}, x{j}) not accepted")
    return Validation(True)


def bounded_antichain_search(n: MultiTapeAutomaton, size: int, max_len: int) -> list[tuple]:
    """Largest set (up to ``size``) of words of length ``<= max_len`` that are
    pairwise related by ``n``, found by backtracking.

    Diagnostic only: a small result does not prove decomposability.
    """
    words = list(iter_words(n.alphabet, max_len))
    related = {
        (i, j): accepts(n, (words[i], words[j])) and accepts(n, (words[j], words[i]))
        for i, j in combinations(range(len(words)), 2)
    }
    best: list[int] = []

    def extend(chosen: list[int], start: int):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= size:
            return True
        for i in range(start, len(words)):
            if len(chosen) + (len(words) - i) <= len(best):
                return False
            if all(related[(c, i)] for c in chosen):
                chosen.append(i)
                if extend(chosen, i + 1):
                    return True
                chosen.pop()
        return False

    extend([], 0)
    return [words[i] for i in best]


__all__ = [
    "Certificate", "Decision", "Validation", "Verdict", "bounded_antichain_search",
    "decide", "decide_binary", "decide_nary", "expand_family",
    "validate_certificate",
]
