"""Run the acceptance suites and print one summary row per suite.

    python scripts/run_suites.py                 # everything
    python scripts/run_suites.py --only dag nary
"""
import argparse
import sys

from monadic.suites import (
    CanonicalSuite,
    DagSuite,
    MetamorphicSuite,
    NarySuite,
    NotSimSuite,
    UniversalitySuite,
)

SUITES = {
    "universality": lambda: UniversalitySuite().run(),
    "dag": lambda: DagSuite().run(),
    "canonical": lambda: CanonicalSuite().run(),
    "semantics": lambda: NotSimSuite().run_semantics(),
    "size": lambda: NotSimSuite().run_size(),
    "metamorphic": lambda: MetamorphicSuite().run(),
    "nary": lambda: NarySuite().run(),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--only", nargs="+", choices=sorted(SUITES))
    args = parser.parse_args()
    names = args.only or list(SUITES)
    all_ok = True
    print(f"{'suite':<14} {'ok':<5} summary")
    for name in names:
        result = SUITES[name]()
        all_ok &= result.ok
        print(f"{name:<14} {str(result.ok):<5} {result.summary()}", flush=True)
        for failure in result.failures[:5] + result.certificate_failures[:5]:
            print(f"{'':<20}failure: {failure}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
