"""Command-line front end.

Exit status of ``decide``: 0 decomposable, 1 not decomposable, 2 input or
usage error. Library tape indices are 0-based; ``--tape`` here is 1-based.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field

from .automata import (
    Alphabet,
    AutomatonError,
    PaddingError,
    boolean_product,
    complement_padded,
    minimize,
    project,
)
from .decider import Decision, Verdict, decide, expand_family, validate_certificate
from .generators import (
    CANONICAL_NAMES,
    ReductionInstance,
    canonical,
    dag_reduction,
    random_automaton,
    random_dag,
    universality_reduction,
)
from .relations import build_not_sim, induced_binary
from .textio import ParseError, format_automaton, format_word, read_automaton, to_dot

EXIT_DECOMPOSABLE, EXIT_NOT_DECOMPOSABLE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    verdict: str
    failing_k: int | None
    per_k_verdicts: list
    certificate: dict | None
    stats: dict = field(default_factory=dict)
    family: list | None = None

    @classmethod
    def from_decision(cls, d: Decision) -> "RunReport":
        return cls(
            verdict=d.verdict.value,
            failing_k=d.failing_k,
            per_k_verdicts=[v.value for v in d.per_k_verdicts],
            certificate=d.certificate.to_dict() if d.certificate else None,
            stats=dict(d.stats),
        )

    def to_json(self) -> str:
        data = asdict(self)
        if data["family"] is None:
            del data["family"]
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _write(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# decide


def cmd_decide(args) -> int:
    r = read_automaton(args.path)
    if r.arity < 2:
        raise UsageError("decide needs a relation of arity at least 2")
    start = time.perf_counter()
    d = decide(r, threads=args.threads)
    elapsed = time.perf_counter() - start
    report = RunReport.from_decision(d)
    if args.timing:
        report.stats["wall_time_s"] = round(elapsed, 6)
    family = None
    if d.certificate is not None:
        if args.validate:
            check = validate_certificate(d.certificate, d.not_sim, max(args.family or 0, 10))
            if not check:
                print(f"error: certificate failed validation: {check.failed}", file=sys.stderr)
                return EXIT_ERROR
        if args.certificate:
            _write(d.certificate.dumps(), args.certificate)
        if args.family is not None:
            family = expand_family(d.certificate, args.family)
            report.family = [[_plain(x) for x in word] for word in family]

    if args.json:
        sys.stdout.write(report.to_json())
    else:
        print(f"verdict: {d.verdict.value}")
        if r.arity > 2:
            for k, v in enumerate(d.per_k_verdicts, start=1):
                print(f"  k={k}: {v.value}")
            if d.failing_k is not None:
                print(f"failing k: {d.failing_k}")
        stats = report.stats
        print(f"input states: {stats['input_states']}")
        print(f"not-sim states: {', '.join(str(s) for s in stats['not_sim_states'])}")
        print(f"quadruples examined: {stats['quadruples_examined']}")
        if args.timing:
            print(f"wall time: {stats['wall_time_s']:.3f}s")
        c = d.certificate
        if c is not None:
            if args.validate:
                print("certificate: valid")
            print(f"states: q={c.q} q'={c.qp} p={c.p} r={c.r}")
            for name in ("w0", "v0", "w1", "v1", "w", "v"):
                print(f"  {name} = {format_word(getattr(c, name))}")
            if family is not None:
                for i, word in enumerate(family):
                    print(f"  x{i} = {format_word(word)}")
    return EXIT_DECOMPOSABLE if d.decomposable else EXIT_NOT_DECOMPOSABLE


def _plain(x):
    return [_plain(y) for y in x] if isinstance(x, tuple) else x


# ---------------------------------------------------------------------------
# gen


def _gen_instance(args):
    seed = args.seed
    rng = random.Random(seed)
    sigma = Alphabet(tuple(args.alphabet))
    if args.family == "universality":
        states = args.states or rng.randint(1, 5)
        density = args.density if args.density is not None else rng.uniform(0.3, 0.9)
        nfa = random_automaton(seed, 1, states, density, sigma)
        return universality_reduction(nfa)
    if args.family == "dag":
        vertices = args.vertices or rng.randint(2, 12)
        graph, s, t = random_dag(seed, vertices, args.edge_prob)
        return dag_reduction(graph, s, t)
    if args.family == "canonical":
        if args.name not in CANONICAL_NAMES:
            raise UsageError(f"canonical needs --name from {', '.join(CANONICAL_NAMES)}")
        rel = canonical(args.name, sigma)
        return ReductionInstance(rel, Verdict.NOT_DECOMPOSABLE, f"canonical: {args.name}")
    if args.family == "random":
        states = args.states or rng.randint(1, 4)
        density = args.density if args.density is not None else rng.uniform(0.3, 1.0)
        rel = random_automaton(seed, args.arity, states, density, sigma,
                               deterministic=args.deterministic)
        return ReductionInstance(rel, None, f"random: seed={seed}, states={states}")
    raise UsageError(f"unknown family {args.family!r}")


def cmd_gen(args) -> int:
    if args.density is not None and not 0 < args.density <= 1:
        raise UsageError("--density must lie in (0, 1]")
    if args.states is not None and args.states < 1:
        raise UsageError("--states must be positive")
    inst = _gen_instance(args)
    truth = inst.ground_truth.value if inst.ground_truth is not None else "unknown"
    comments = [inst.provenance, f"seed {args.seed}"]
    _write(format_automaton(inst.relation, comments), args.out)
    sidecar = f"ground_truth {truth}\nprovenance {inst.provenance}\n"
    if args.out:
        _write(sidecar, args.out + ".truth")
    else:
        sys.stderr.write(sidecar)
    return 0


# ---------------------------------------------------------------------------
# ops


def cmd_ops(args) -> int:
    op = args.op
    paths = list(args.paths)
    if op == "induced" and len(paths) == 2 and paths[0].isdigit():
        # "ops induced K FILE"
        args.k = int(paths.pop(0))
    automata = [read_automaton(p) for p in paths]
    expected = 2 if op == "product" else 1
    if len(automata) != expected:
        raise UsageError(f"{op} takes {expected} input file(s)")
    a = automata[0]
    if op == "notsim":
        out = build_not_sim(a)
    elif op == "complement":
        out = complement_padded(a)
    elif op == "product":
        out = boolean_product(a, automata[1], args.bool)
    elif op == "project":
        if args.tape is None or not 1 <= args.tape <= a.arity:
            raise UsageError(f"project needs --tape in 1..{a.arity}")
        out = project(a, args.tape - 1)
    elif op == "minimize":
        out = minimize(a)
    elif op == "induced":
        if args.k is None:
            raise UsageError("induced needs a split point: ops induced K FILE")
        out = induced_binary(a, args.k)
    else:
        raise UsageError(f"unknown op {op!r}")
    _write(format_automaton(out), args.out)
    return 0


def cmd_export_dot(args) -> int:
    a = read_automaton(args.path)
    _write(to_dot(a, trimmed=args.trim), args.out)
    return 0


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monadic", description="Monadic decomposability of regular relations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", help="decide decomposability of a relation file")
    p.add_argument("path")
    p.add_argument("--certificate", metavar="OUT", help="write the certificate as JSON")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--family", type=int, metavar="K", help="also print x_0..x_K")
    p.add_argument("--validate", action="store_true", help="re-validate the certificate first")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("gen", help="generate an instance with a ground-truth sidecar")
    p.add_argument("family", choices=("universality", "dag", "canonical", "random"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--alphabet", nargs="+", default=["a", "b"])
    p.add_argument("--states", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--vertices", type=int)
    p.add_argument("--edge-prob", type=float, default=0.3)
    p.add_argument("--name", help="canonical relation name")
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--deterministic", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("ops", help="apply one construction and print the automaton")
    p.add_argument("op", choices=("notsim", "complement", "product", "project", "minimize", "induced"))
    p.add_argument("paths", nargs="+")
    p.add_argument("--out")
    p.add_argument("--bool", choices=("and", "or", "xor"), default="and", help="product mode")
    p.add_argument("--tape", type=int, help="1-based tape for project")
    p.add_argument("--k", type=int, help="split point for induced")
    p.set_defaults(func=cmd_ops)

    p = sub.add_parser("export-dot", help="Graphviz rendering")
    p.add_argument("path")
    p.add_argument("--out")
    p.add_argument("--trim", action="store_true", help="drop dead states first")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, AutomatonError, PaddingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
