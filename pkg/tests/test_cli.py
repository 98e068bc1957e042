import json
import random
import subprocess
import sys
from pathlib import Path

import networkx as nx
import pytest

from conftest import SIGMA
from monadic.automata import accepts, is_universal_padded, language_product
from monadic.cli import main
from monadic.generators import equality, random_automaton, random_dag, random_language
from monadic.textio import read_automaton, write_automaton

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_decide_equality_exit_1(capsys):
    code, out, _ = run(capsys, "decide", GOLDEN / "equality.txt")
    assert code == 1
    assert "verdict: not_decomposable" in out


def test_decide_product_exit_0(capsys, tmp_path):
    rng = random.Random(2)
    path = tmp_path / "prod.txt"
    write_automaton(language_product([random_language(rng, SIGMA), random_language(rng, SIGMA)]), path)
    code, out, _ = run(capsys, "decide", path)
    assert code == 0 and "verdict: decomposable" in out


def test_decide_json_golden(capsys):
    code, out, _ = run(capsys, "decide", GOLDEN / "equality.txt", "--json")
    assert code == 1
    assert out == (GOLDEN / "equality_decide.json").read_text()
    assert set(json.loads(out)) >= {"verdict", "failing_k", "certificate", "stats"}


def test_decide_json_stable(capsys):
    first = run(capsys, "decide", GOLDEN / "strict_prefix.txt", "--json")
    second = run(capsys, "decide", GOLDEN / "strict_prefix.txt", "--json", "--threads", "3")
    assert first == second


def test_decide_timing_only_on_request(capsys):
    _, out, _ = run(capsys, "decide", GOLDEN / "equality.txt", "--json", "--timing")
    assert json.loads(out)["stats"]["wall_time_s"] >= 0


def test_decide_certificate_and_family(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "decide", GOLDEN / "equality.txt", "--certificate", cert,
                       "--family", 3, "--validate")
    assert code == 1
    assert "certificate: valid" in out and "x3 = aaaa" in out
    data = json.loads(cert.read_text())
    assert list(data) == ["q", "qp", "p", "r", "w0", "v0", "w1", "v1", "w", "v"]


def test_decide_nary_table(capsys, tmp_path):
    path = tmp_path / "eq3.txt"
    write_automaton(equality(SIGMA, 3), path)
    code, out, _ = run(capsys, "decide", path)
    assert code == 1
    assert "k=1: not_decomposable" in out and "failing k: 1" in out


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("arity 2\nalphabet a b\npad _\nstates 1\ninitial 0\ntrans 0 (_,_) 0\n")
    code, _, err = run(capsys, "decide", bad)
    assert code == 2 and "line 6" in err


def test_missing_file_and_usage_exit_2(capsys, tmp_path):
    assert run(capsys, "decide", tmp_path / "nope.txt")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    assert run(capsys, "gen", "random", "--density", "0")[0] == 2
    assert run(capsys, "ops", "project", GOLDEN / "equality.txt", "--tape", "3")[0] == 2
    assert run(capsys, "ops", "product", GOLDEN / "equality.txt")[0] == 2


def test_gen_universality_sidecar(capsys, tmp_path):
    out = tmp_path / "u.txt"
    assert run(capsys, "gen", "universality", "--seed", 7, "--out", out)[0] == 0
    sidecar = (tmp_path / "u.txt.truth").read_text()
    rng = random.Random(7)
    states = rng.randint(1, 5)
    nfa = random_automaton(7, 1, states, rng.uniform(0.3, 0.9), SIGMA)
    truth = "decomposable" if is_universal_padded(nfa) else "not_decomposable"
    assert sidecar.startswith(f"ground_truth {truth}\n")
    read_automaton(out)


def test_gen_dag_sidecar(capsys, tmp_path):
    out = tmp_path / "d.txt"
    assert run(capsys, "gen", "dag", "--vertices", 8, "--seed", 7, "--out", out)[0] == 0
    g, s, t = random_dag(7, 8, 0.3)
    truth = "not_decomposable" if nx.has_path(g, s, t) else "decomposable"
    assert (tmp_path / "d.txt.truth").read_text().startswith(f"ground_truth {truth}\n")
    code, _, _ = run(capsys, "decide", out)
    assert code == (1 if truth == "not_decomposable" else 0)


def test_gen_canonical_golden(capsys, tmp_path):
    out = tmp_path / "sp.txt"
    run(capsys, "gen", "canonical", "--name", "strict_prefix", "--out", out)
    assert out.read_text() == (GOLDEN / "strict_prefix.txt").read_text()


def test_gen_is_seed_deterministic(capsys):
    first = run(capsys, "gen", "random", "--seed", 3)
    assert first == run(capsys, "gen", "random", "--seed", 3)


def test_ops_notsim_on_equality(capsys, tmp_path):
    out = tmp_path / "n.txt"
    assert run(capsys, "ops", "notsim", GOLDEN / "equality.txt", "--out", out)[0] == 0
    n = read_automaton(out)
    for u, v in [("a", "a"), ("a", "b"), ("ab", "ab"), ("", "a"), ("ab", "ba")]:
        assert accepts(n, (u, v)) == (u != v)


def test_ops_induced_single_tuple(capsys, tmp_path):
    src = tmp_path / "t.txt"
    src.write_text("arity 3\nalphabet a b\npad _\nstates 3\ninitial 0\nfinal 2\n"
                   "trans 0 (a,_,a) 1\ntrans 1 (_,_,b) 2\n")
    out = tmp_path / "r1.txt"
    assert run(capsys, "ops", "induced", 1, src, "--out", out)[0] == 0
    r1 = read_automaton(out)
    assert accepts(r1, (("a",), (("_", "a"), ("_", "b"))))
    assert not accepts(r1, (("a",), ("a", "b")))


def test_ops_minimize_idempotent(capsys, tmp_path):
    once, twice = tmp_path / "m1.txt", tmp_path / "m2.txt"
    run(capsys, "ops", "minimize", GOLDEN / "strict_prefix.txt", "--out", once)
    run(capsys, "ops", "minimize", once, "--out", twice)
    assert once.read_text() == twice.read_text()


def test_ops_product_and_project(capsys, tmp_path):
    out = tmp_path / "p.txt"
    code, _, _ = run(capsys, "ops", "product", GOLDEN / "equality.txt",
                     GOLDEN / "strict_prefix.txt", "--bool", "or", "--out", out)
    assert code == 0
    rel = read_automaton(out)
    assert accepts(rel, ("a", "a")) and accepts(rel, ("a", "ab"))
    run(capsys, "ops", "project", GOLDEN / "equality.txt", "--tape", 1, "--out", out)
    assert read_automaton(out).arity == 1


def test_export_dot_golden(capsys):
    code, out, _ = run(capsys, "export-dot", GOLDEN / "strict_prefix.txt")
    assert code == 0 and out == (GOLDEN / "strict_prefix.dot").read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monadic", "decide", str(GOLDEN / "equality.txt")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout.startswith("verdict: not_decomposable")
