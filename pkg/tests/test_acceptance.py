"""Acceptance criteria 1-8, each at its stated size and tolerance.

Each test prints one PASS/FAIL line; the lines are repeated in the
terminal summary so they survive output capture.
"""
import pytest

from monadic.suites import (
    CanonicalSuite,
    DagSuite,
    MetamorphicSuite,
    NarySuite,
    NotSimSuite,
    UniversalitySuite,
)

RESULTS: dict = {}


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    RESULTS[number] = line
    print(line)
    return ok


@pytest.fixture(scope="module")
def universality():
    return UniversalitySuite().run()


@pytest.fixture(scope="module")
def dag():
    return DagSuite().run()


@pytest.fixture(scope="module")
def canonical():
    return CanonicalSuite().run()


def test_criterion_1_universality(universality):
    r = universality
    ok = r.passed == r.total == 200 and r.seconds < r.budget_s
    assert record(1, "universality differential (200, <120s)", ok, r.summary()), r.failures


def test_criterion_2_dag(dag):
    r = dag
    ok = r.passed == r.total == 200 and r.seconds < r.budget_s
    assert record(2, "DAG differential (200, <60s)", ok, r.summary()), r.failures


def test_criterion_3_canonical(canonical):
    r = canonical
    ok = r.passed == r.total == 103
    assert record(3, "canonical verdicts (3 + 50 finite + 50 products)", ok, r.summary()), r.failures


def test_criterion_4_certificates(universality, dag, canonical):
    suites = (universality, dag, canonical)
    checked = sum(s.certificates_checked for s in suites)
    failures = [f for s in suites for f in s.certificate_failures]
    ok = checked > 0 and not failures
    detail = f"{checked - len(failures)}/{checked} certificates valid at k=10"
    assert record(4, "certificate soundness", ok, detail), failures


def test_criterion_5_not_sim_semantics():
    r = NotSimSuite().run_semantics()
    ok = r.total == 50 and r.passed == 50
    assert record(5, "inequivalence semantics vs bounded formula", ok, r.summary()), r.failures


def test_criterion_6_size_bound():
    r = NotSimSuite().run_size()
    ok = r.total == 50 and r.passed == 50
    assert record(6, "states <= 8(|Q|+2)^2 + 16", ok, r.summary()), r.failures


def test_criterion_7_metamorphic():
    r = MetamorphicSuite().run()
    ok = r.total == 150 and r.passed == 150
    assert record(7, "metamorphic invariances (3 x 50)", ok, r.summary()), r.failures


def test_criterion_8_nary():
    r = NarySuite().run()
    ok = r.total == 52 and r.passed == 52 and not r.certificate_failures
    assert record(8, "n-ary verdicts and per-k conjunction", ok, r.summary()), (
        r.failures, r.certificate_failures)
