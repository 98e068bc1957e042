"""Time the full pipeline per instance for one generator family.

    python scripts/bench_decider.py universality --count 20
"""
import argparse
import time

from monadic.decider import decide
from monadic.suites import DagSuite, MetamorphicSuite, NarySuite, UniversalitySuite


def instances(family, count):
    if family == "universality":
        suite = UniversalitySuite()
        return ((s, suite.instance(s).relation) for s in range(count))
    if family == "dag":
        suite = DagSuite()
        return ((s, suite.instance(s).relation) for s in range(count))
    if family == "binary":
        suite = MetamorphicSuite()
        return ((s, suite.relation(s)) for s in range(count))
    suite = NarySuite()
    return ((s, suite.random_ternary(s)) for s in range(count))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("family", choices=("universality", "dag", "binary", "ternary"))
    parser.add_argument("--count", type=int, default=20)
    args = parser.parse_args()
    print(f"{'seed':>4} {'in':>4} {'not-sim':>12} {'quads':>10} {'verdict':>17} {'secs':>7}")
    total = 0.0
    for seed, rel in instances(args.family, args.count):
        start = time.perf_counter()
        d = decide(rel)
        secs = time.perf_counter() - start
        total += secs
        sizes = ",".join(str(x) for x in d.stats["not_sim_states"])
        print(f"{seed:>4} {rel.n_states:>4} {sizes:>12} {d.stats['quadruples_examined']:>10} "
              f"{d.verdict.value:>17} {secs:>7.2f}")
    print(f"total {total:.1f}s")


if __name__ == "__main__":
    main()
