"""Relations with independently known verdicts.

Ground truths here never call the decider: universality is checked by
complementation and emptiness, DAG reachability by graph search, and the
canonical relations are decomposable or not by construction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from .automata import (
    Alphabet,
    AutomatonError,
    MultiTapeAutomaton,
    boolean_product,
    concat,
    disjoint_union,
    finite_relation,
    is_universal_padded,
    language_product,
    star,
    word_language,
)
from .decider import Verdict

SEPARATOR = "#"


@dataclass(frozen=True)
class ReductionInstance:
    relation: MultiTapeAutomaton
    ground_truth: Verdict
    provenance: str


def _complete_with_sink(arity, alphabet, n_live, finals, edges):
    """Route every missing (state, letter) of a DFA to a fresh sink."""
    sink = n_live
    present = {(s, letter) for s, letter, _ in edges}
    edges = list(edges)
    for s in range(n_live + 1):
        for letter in alphabet.letters(arity):
            if (s, letter) not in present:
                edges.append((s, letter, sink))
    return MultiTapeAutomaton(arity, alphabet, n_live + 1, 0, finals, edges)


def equality(alphabet: Alphabet, arity: int = 2) -> MultiTapeAutomaton:
    """``{(v, ..., v)}``: one live state and a sink."""
    edges = [(0, (x,) * arity, 0) for x in alphabet.symbols]
    return _complete_with_sink(arity, alphabet, 1, [0], edges)


def strict_prefix(alphabet: Alphabet) -> MultiTapeAutomaton:
    """``{(u, v) : u is a proper prefix of v}``: two live states and a sink."""
    pad = alphabet.pad
    edges = [(0, (x, x), 0) for x in alphabet.symbols]
    edges += [(0, (pad, x), 1) for x in alphabet.symbols]
    edges += [(1, (pad, x), 1) for x in alphabet.symbols]
    return _complete_with_sink(2, alphabet, 2, [1], edges)


def equal_length(alphabet: Alphabet) -> MultiTapeAutomaton:
    """``{(u, v) : |u| = |v|}``."""
    edges = [(0, (x, y), 0) for x in alphabet.symbols for y in alphabet.symbols]
    return _complete_with_sink(2, alphabet, 1, [0], edges)


def canonical(name: str, alphabet: Alphabet, tuples=None, languages=None, arity: int = 2):
    """Named relations: ``equality``, ``strict_prefix``, ``equal_length``,
    ``finite`` (from ``tuples``) and ``product`` (from 1-tape ``languages``)."""
    if name == "equality":
        return equality(alphabet, arity)
    if name == "strict_prefix":
        return strict_prefix(alphabet)
    if name == "equal_length":
        return equal_length(alphabet)
    if name == "finite":
        if tuples is None:
            raise ValueError("finite relation needs tuples")
        tuples = list(tuples)
        n = len(tuples[0]) if tuples else arity
        return finite_relation(alphabet, tuples, n)
    if name == "product":
        if not languages:
            raise ValueError("product needs at least one language")
        return language_product(languages)
    raise ValueError(f"unknown canonical relation {name!r}")


CANONICAL_NAMES = ("equality", "strict_prefix", "equal_length")


# ---------------------------------------------------------------------------
# Random instances


def random_automaton(seed, arity: int, state_count: int, density: float,
                     alphabet: Alphabet | None = None, deterministic: bool = False,
                     valid_only: bool = False) -> MultiTapeAutomaton:
    """Seeded random automaton.

    Each ``(state, letter)`` gets a transition with probability ``density``;
    nondeterministic mode draws one or two targets. At least one state is
    final. ``valid_only`` restricts letters to those without pads (every
    tape the same length), which keeps random relations nonempty more often.
    """
    if state_count < 1 or not 0 < density <= 1:
        raise ValueError("need state_count >= 1 and 0 < density <= 1")
    alphabet = alphabet or Alphabet(("a", "b"))
    rng = random.Random(seed)
    letters = alphabet.letters(arity)
    if valid_only:
        letters = [x for x in letters if alphabet.pad not in x]
    edges = []
    for s in range(state_count):
        for letter in letters:
            if rng.random() < density:
                if deterministic:
                    edges.append((s, letter, rng.randrange(state_count)))
                else:
                    for t in rng.sample(range(state_count), min(state_count, rng.choice((1, 2)))):
                        edges.append((s, letter, t))
    finals = [s for s in range(state_count) if rng.random() < 0.5]
    if not finals:
        finals = [rng.randrange(state_count)]
    return MultiTapeAutomaton(arity, alphabet, state_count, 0, finals, edges)


def random_language(rng: random.Random, alphabet: Alphabet, max_states: int = 3) -> MultiTapeAutomaton:
    n = rng.randint(1, max_states)
    return random_automaton(rng.random(), 1, n, rng.uniform(0.4, 0.9), alphabet)


def random_finite_relation(rng: random.Random, alphabet: Alphabet, max_tuples: int = 10,
                           max_len: int = 3, arity: int = 2) -> MultiTapeAutomaton:
    count = rng.randint(1, max_tuples)
    tuples = [
        tuple("".join(rng.choice(alphabet.symbols) for _ in range(rng.randint(0, max_len)))
              for _ in range(arity))
        for _ in range(count)
    ]
    return finite_relation(alphabet, tuples, arity)


def random_union_of_products(rng: random.Random, alphabet: Alphabet, max_factors: int = 3,
                             arity: int = 2) -> MultiTapeAutomaton:
    """Union of up to ``max_factors`` products of random regular languages."""
    products = [
        language_product([random_language(rng, alphabet) for _ in range(arity)])
        for _ in range(rng.randint(1, max_factors))
    ]
    return disjoint_union(*products) if len(products) > 1 else products[0]


# ---------------------------------------------------------------------------
# Hardness reductions


def universality_reduction(a: MultiTapeAutomaton) -> ReductionInstance:
    """``R1 u R2`` with ``R1`` the equality on ``(Sigma* #)*`` and
    ``R2 = (L #)* x (Sigma* #)*``; decomposable iff ``L(a)`` is universal."""
    if a.arity != 1:
        raise AutomatonError("universality reduction takes a 1-tape automaton")
    if SEPARATOR in a.alphabet.symbols or SEPARATOR == a.alphabet.pad:
        raise AutomatonError(f"separator {SEPARATOR!r} must be fresh")
    sigma = a.alphabet.extend(SEPARATOR)
    lang = MultiTapeAutomaton(1, sigma, a.n_states, a.initial, a.finals, a.transitions())
    sep = word_language(sigma, [(SEPARATOR,)])
    sigma_star = MultiTapeAutomaton(1, sigma, 1, 0, [0],
                                    [(0, (x,), 0) for x in a.alphabet.symbols])
    left = star(concat(lang, sep))
    right = star(concat(sigma_star, sep))
    # Equality restricted to separator-terminated words; over all of
    # (Sigma + #)* the union would never be decomposable.
    r1 = boolean_product(equality(sigma), language_product([right, right]), "and")
    r2 = language_product([left, right])
    relation = boolean_product(r1, r2, "or")
    universal = is_universal_padded(a)
    truth = Verdict.DECOMPOSABLE if universal else Verdict.NOT_DECOMPOSABLE
    provenance = f"universality: NFA with {a.n_states} states, universal={universal}"
    return ReductionInstance(relation, truth, provenance)


def dag_reduction(graph: nx.DiGraph, s, t) -> ReductionInstance:
    """Binary DFA accepting ``(u, u)`` for labels ``u`` of ``s -> t`` paths
    followed by loops on the extra letter at ``t``; decomposable iff ``t`` is
    unreachable from ``s``."""
    if not nx.is_directed_acyclic_graph(graph):
        raise ValueError("graph has a cycle")
    if s not in graph or t not in graph:
        raise ValueError("s and t must be vertices of the graph")
    vertices = sorted(graph.nodes)
    # Relabel so that s is the initial state 0.
    order = [s] + [v for v in vertices if v != s]
    state = {v: i for i, v in enumerate(order)}
    d = max((graph.out_degree(v) for v in vertices), default=0)
    alphabet = Alphabet(tuple(f"a{i}" for i in range(1, d + 2)))
    letters = alphabet.symbols
    sink = len(order)
    edges = []
    for v in order:
        for i, succ in enumerate(sorted(graph.successors(v))):
            edges.append((state[v], (letters[i], letters[i]), state[succ]))
    edges.append((state[t], (letters[d], letters[d]), state[t]))
    for src in range(len(order) + 1):
        for x in letters:
            for y in letters:
                if x != y:
                    edges.append((src, (x, y), sink))
    relation = MultiTapeAutomaton(2, alphabet, len(order) + 1, 0, [state[t]], edges)
    reach = nx.has_path(graph, s, t)
    truth = Verdict.NOT_DECOMPOSABLE if reach else Verdict.DECOMPOSABLE
    provenance = (f"dag: {graph.number_of_nodes()} vertices, {graph.number_of_edges()} edges, "
                  f"s={s}, t={t}, reachable={reach}")
    return ReductionInstance(relation, truth, provenance)


def random_dag(seed, vertices: int, edge_prob: float = 0.3, max_out: int | None = None):
    """Random DAG with edges only from lower to higher index, and random
    ``s <= t``. Returns ``(graph, s, t)``."""
    rng = random.Random(seed)
    g = nx.DiGraph()
    g.add_nodes_from(range(vertices))
    for i in range(vertices):
        targets = [j for j in range(i + 1, vertices) if rng.random() < edge_prob]
        if max_out is not None:
            targets = targets[:max_out]
        g.add_edges_from((i, j) for j in targets)
    s = rng.randrange(vertices)
    t = rng.randrange(s, vertices)
    return g, s, t
