"""Run every composition property (and the witness-minimality check) and print the reports.

    python scripts/fuzz_all.py --seed 0 --count 100 [--json results.json]
"""

import argparse
import json
import sys
import time

from compo_mbt.harness import PROPERTIES, GenConfig, run_property, run_witness_minimality


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--depth", type=int, default=5)
    ap.add_argument("--max-states", type=int, default=6)
    ap.add_argument("--json", help="also dump all reports to this file")
    args = ap.parse_args()

    cfg = GenConfig(seed=args.seed, max_states=args.max_states)
    reports = []
    for name in PROPERTIES:
        start = time.perf_counter()
        rep = run_property(name, cfg, args.count, depth=args.depth)
        print(rep.summary(), f"[{time.perf_counter() - start:.1f} s]")
        reports.append(rep)
    rep = run_witness_minimality(GenConfig(seed=args.seed, max_states=min(args.max_states, 5)), args.count)
    print(rep.summary())
    reports.append(rep)

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2, sort_keys=True)
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
