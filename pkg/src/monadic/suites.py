"""Experiment configurations and runners for the acceptance suites.

Each suite is a frozen dataclass holding its parameters; ``run`` returns a
:class:`SuiteResult` with counts, failures and timing. The tests and the
scripts under ``scripts/`` share these so both see the same instances.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .automata import (
    Alphabet,
    MultiTapeAutomaton,
    accepts,
    boolean_product,
    disjoint_union,
    iter_words,
    language_product,
    permute_tapes,
    relabel_states,
    valid_pad,
)
from .decider import Verdict, decide, decide_binary, validate_certificate
from .generators import (
    ReductionInstance,
    dag_reduction,
    equal_length,
    equality,
    random_automaton,
    random_dag,
    random_finite_relation,
    random_language,
    random_union_of_products,
    strict_prefix,
    universality_reduction,
)
from .oracles import NotSimOracle
from .relations import build_not_sim, induced_binary, not_sim_for_decider, not_sim_pieces


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    certificates_checked: int = 0
    certificate_failures: list = field(default_factory=list)
    seconds: float = 0.0
    budget_s: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        within = self.budget_s is None or self.seconds <= self.budget_s
        return self.passed == self.total and not self.certificate_failures and within

    def summary(self) -> str:
        parts = [f"{self.passed}/{self.total} agree"]
        if self.certificates_checked:
            bad = len(self.certificate_failures)
            parts.append(f"{self.certificates_checked - bad}/{self.certificates_checked} certificates valid")
        budget = f" (budget {self.budget_s:.0f}s)" if self.budget_s is not None else ""
        parts.append(f"{self.seconds:.1f}s{budget}")
        parts += [f"{k}={v}" for k, v in self.extra.items()]
        return ", ".join(parts)


def _check_instance(result: SuiteResult, label, relation, expected: Verdict, cert_k: int):
    decision = decide(relation)
    result.total += 1
    if decision.verdict == expected:
        result.passed += 1
    else:
        result.failures.append((label, expected.value, decision.verdict.value))
    if not decision.decomposable:
        result.certificates_checked += 1
        check = validate_certificate(decision.certificate, decision.not_sim, cert_k)
        if not check:
            result.certificate_failures.append((label, check.failed))
    return decision


# ---------------------------------------------------------------------------
# Differential suites against reductions


@dataclass(frozen=True)
class UniversalitySuite:
    count: int = 200
    max_states: int = 5
    symbols: tuple = ("a", "b")
    density: tuple = (0.3, 0.9)
    budget_s: float = 120.0
    certificate_k: int = 10

    def nfa(self, seed: int) -> MultiTapeAutomaton:
        rng = random.Random(seed)
        states = rng.randint(1, self.max_states)
        return random_automaton(seed, 1, states, rng.uniform(*self.density), Alphabet(self.symbols))

    def instance(self, seed: int) -> ReductionInstance:
        return universality_reduction(self.nfa(seed))

    def run(self) -> SuiteResult:
        result = SuiteResult("universality", budget_s=self.budget_s)
        start = time.perf_counter()
        universal = 0
        for seed in range(self.count):
            inst = self.instance(seed)
            universal += inst.ground_truth is Verdict.DECOMPOSABLE
            _check_instance(result, seed, inst.relation, inst.ground_truth, self.certificate_k)
        result.seconds = time.perf_counter() - start
        result.extra["universal"] = universal
        return result


@dataclass(frozen=True)
class DagSuite:
    count: int = 200
    max_vertices: int = 12
    edge_prob: tuple = (0.1, 0.4)
    budget_s: float = 60.0
    certificate_k: int = 10

    def instance(self, seed: int) -> ReductionInstance:
        rng = random.Random(seed)
        graph, s, t = random_dag(seed, rng.randint(2, self.max_vertices), rng.uniform(*self.edge_prob))
        return dag_reduction(graph, s, t)

    def run(self) -> SuiteResult:
        result = SuiteResult("dag", budget_s=self.budget_s)
        start = time.perf_counter()
        reachable = 0
        for seed in range(self.count):
            inst = self.instance(seed)
            reachable += inst.ground_truth is Verdict.NOT_DECOMPOSABLE
            _check_instance(result, seed, inst.relation, inst.ground_truth, self.certificate_k)
        result.seconds = time.perf_counter() - start
        result.extra["reachable"] = reachable
        return result


@dataclass(frozen=True)
class CanonicalSuite:
    symbols: tuple = ("a", "b")
    finite_count: int = 50
    max_tuples: int = 10
    product_count: int = 50
    max_factors: int = 3
    certificate_k: int = 10

    def instances(self):
        sigma = Alphabet(self.symbols)
        yield "equality", equality(sigma), Verdict.NOT_DECOMPOSABLE
        yield "strict_prefix", strict_prefix(sigma), Verdict.NOT_DECOMPOSABLE
        yield "equal_length", equal_length(sigma), Verdict.NOT_DECOMPOSABLE
        for seed in range(self.finite_count):
            rng = random.Random(seed)
            yield (f"finite/{seed}", random_finite_relation(rng, sigma, self.max_tuples),
                   Verdict.DECOMPOSABLE)
        for seed in range(self.product_count):
            rng = random.Random(1000 + seed)
            if seed % 2 == 0:
                rel = language_product([random_language(rng, sigma), random_language(rng, sigma)])
            else:
                rel = random_union_of_products(rng, sigma, self.max_factors)
            yield f"product/{seed}", rel, Verdict.DECOMPOSABLE

    def run(self) -> SuiteResult:
        result = SuiteResult("canonical")
        start = time.perf_counter()
        for label, rel, expected in self.instances():
            _check_instance(result, label, rel, expected, self.certificate_k)
        result.seconds = time.perf_counter() - start
        return result


# ---------------------------------------------------------------------------
# Inequivalence relation: semantics and size


@dataclass(frozen=True)
class NotSimSuite:
    count: int = 50
    max_states: int = 4
    max_len: int = 4
    symbols: tuple = ("a", "b")
    density: tuple = (0.5, 1.0)
    size_factor: int = 8
    size_slack: int = 2
    size_constant: int = 16

    def dfa(self, seed: int) -> MultiTapeAutomaton:
        rng = random.Random(seed)
        states = rng.randint(1, self.max_states)
        return random_automaton(seed, 2, states, rng.uniform(*self.density),
                                Alphabet(self.symbols), deterministic=True)

    def size_bound(self, q: int) -> int:
        return self.size_factor * (q + self.size_slack) ** 2 + self.size_constant

    def run_semantics(self) -> SuiteResult:
        """Membership in the constructed automaton against the bounded formula
        over every pair of words up to ``max_len``."""
        result = SuiteResult("not_sim_semantics")
        start = time.perf_counter()
        pairs = 0
        for seed in range(self.count):
            r = self.dfa(seed)
            n = build_not_sim(r)
            extra = disjoint_union(*not_sim_pieces(r)).n_states
            oracle = NotSimOracle(r, extra)
            words = list(iter_words(r.alphabet, self.max_len))
            bad = 0
            for w in words:
                for w2 in words:
                    pairs += 1
                    if accepts(n, (w, w2)) != oracle.related(w, w2):
                        bad += 1
                        if bad <= 3:
                            result.failures.append((seed, w, w2))
            result.total += 1
            result.passed += bad == 0
        result.seconds = time.perf_counter() - start
        result.extra["pairs"] = pairs
        return result

    def run_size(self) -> SuiteResult:
        result = SuiteResult("not_sim_size")
        start = time.perf_counter()
        worst = (0.0, None)
        largest = 0
        for seed in range(self.count):
            r = self.dfa(seed)
            states = build_not_sim(r).n_states
            bound = self.size_bound(r.n_states)
            largest = max(largest, states)
            ratio = states / bound
            if ratio > worst[0]:
                worst = (ratio, seed)
            result.total += 1
            if states <= bound:
                result.passed += 1
            else:
                result.failures.append((seed, r.n_states, states, bound))
        result.seconds = time.perf_counter() - start
        result.extra["max_states"] = largest
        result.extra["max_ratio"] = round(worst[0], 3)
        result.extra["worst_seed"] = worst[1]
        return result


# ---------------------------------------------------------------------------
# Metamorphic invariances


@dataclass(frozen=True)
class MetamorphicSuite:
    trials: int = 50
    max_states: int = 4
    symbols: tuple = ("a", "b")
    density: tuple = (0.4, 1.0)
    max_tuples: int = 6

    def relation(self, seed: int) -> MultiTapeAutomaton:
        """Random automata on even seeds; on odd seeds a union of products
        or a finite relation, so both verdicts are well represented."""
        rng = random.Random(seed)
        sigma = Alphabet(self.symbols)
        if seed % 2 == 1:
            if seed % 4 == 1:
                return random_union_of_products(rng, sigma, 2)
            return random_finite_relation(rng, sigma, self.max_tuples)
        states = rng.randint(1, self.max_states)
        deterministic = rng.random() < 0.5
        return random_automaton(seed, 2, states, rng.uniform(*self.density),
                                sigma, deterministic=deterministic)

    def variants(self, seed: int):
        rng = random.Random(10_000 + seed)
        r = self.relation(seed)
        perm = list(range(r.n_states))
        rng.shuffle(perm)
        finite = random_finite_relation(rng, r.alphabet, self.max_tuples)
        return r, {
            "renaming": relabel_states(r, perm),
            "finite_union": boolean_product(r, finite, "or"),
            "swap": permute_tapes(r, (1, 0)),
        }

    def run(self) -> SuiteResult:
        result = SuiteResult("metamorphic")
        start = time.perf_counter()
        counts = {"renaming": 0, "finite_union": 0, "swap": 0}
        decomposable = 0
        for seed in range(self.trials):
            r, variants = self.variants(seed)
            base = decide(r).verdict
            decomposable += base is Verdict.DECOMPOSABLE
            for name, other in variants.items():
                result.total += 1
                got = decide(other).verdict
                if got == base:
                    result.passed += 1
                    counts[name] += 1
                else:
                    result.failures.append((seed, name, base.value, got.value))
        result.seconds = time.perf_counter() - start
        result.extra.update(counts)
        result.extra["decomposable_bases"] = decomposable
        return result


# ---------------------------------------------------------------------------
# n-ary relations


@dataclass(frozen=True)
class NarySuite:
    count: int = 50
    max_states: int = 4
    symbols: tuple = ("a", "b")
    density: tuple = (0.05, 0.25)
    certificate_k: int = 10

    def random_ternary(self, seed: int) -> MultiTapeAutomaton:
        rng = random.Random(seed)
        states = rng.randint(1, self.max_states)
        return random_automaton(seed, 3, states, rng.uniform(*self.density), Alphabet(self.symbols))

    def run(self) -> SuiteResult:
        result = SuiteResult("nary")
        start = time.perf_counter()
        sigma = Alphabet(self.symbols)
        fixed = [
            ("ternary_equality", equality(sigma, 3), Verdict.NOT_DECOMPOSABLE),
        ]
        rng = random.Random(0)
        fixed.append(("product_ABC", language_product([random_language(rng, sigma) for _ in range(3)]),
                      Verdict.DECOMPOSABLE))
        for label, rel, expected in fixed:
            d = _check_instance(result, label, rel, expected, self.certificate_k)
            result.extra[label] = f"{d.verdict.value}@k={d.failing_k}"
        undecomposable = 0
        for seed in range(self.count):
            r = self.random_ternary(seed)
            d = decide(r)
            valid = boolean_product(r, valid_pad(3, r.alphabet), "and")
            per_k = [decide_binary(not_sim_for_decider(induced_binary(valid, k))).verdict
                     for k in (1, 2)]
            expected = (Verdict.DECOMPOSABLE if all(v is Verdict.DECOMPOSABLE for v in per_k)
                        else Verdict.NOT_DECOMPOSABLE)
            result.total += 1
            if d.verdict == expected and tuple(per_k) == d.per_k_verdicts:
                result.passed += 1
            else:
                result.failures.append((seed, d.verdict.value, [v.value for v in per_k]))
            if not d.decomposable:
                undecomposable += 1
                result.certificates_checked += 1
                check = validate_certificate(d.certificate, d.not_sim, self.certificate_k)
                if not check:
                    result.certificate_failures.append((seed, check.failed))
        result.seconds = time.perf_counter() - start
        result.extra["random_not_decomposable"] = undecomposable
        return result
