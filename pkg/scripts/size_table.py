"""Per-instance sizes of the inequivalence automaton on the random DFA suite.

Prints |Q|, the state counts along the pipeline and the bound
8(|Q|+2)^2 + 16, followed by the worst ratio.
"""
import argparse

from monadic.automata import disjoint_union
from monadic.relations import build_not_sim, not_sim_pieces
from monadic.suites import NotSimSuite


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=50)
    args = parser.parse_args()
    suite = NotSimSuite(count=args.count)
    print(f"{'seed':>4} {'|Q|':>4} {'pieces':>7} {'union':>6} {'result':>7} {'bound':>6} {'ratio':>6}")
    worst = 0.0
    for seed in range(args.count):
        r = suite.dfa(seed)
        pieces = not_sim_pieces(r)
        union = disjoint_union(*pieces).n_states
        result = build_not_sim(r).n_states
        bound = suite.size_bound(r.n_states)
        worst = max(worst, result / bound)
        sizes = "+".join(str(p.n_states) for p in pieces)
        print(f"{seed:>4} {r.n_states:>4} {sizes:>7} {union:>6} {result:>7} {bound:>6} {result / bound:>6.3f}")
    print(f"worst ratio {worst:.3f}")


if __name__ == "__main__":
    main()
