"""Reproduce the parking-system verdicts and write DOT renderings of the models.

    python scripts/run_parking_example.py [--dot-dir out/]
"""

import argparse
import sys
from pathlib import Path

from compo_mbt.acceptance import all_violations
from compo_mbt.modelio import export_dot, load_bundled, load_ref
from compo_mbt.regression import run_manifest


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dot-dir", type=Path, help="write one .dot file per system here")
    args = ap.parse_args()

    results, seconds = run_manifest()
    for r in results:
        status = "ok " if r.ok else "MISMATCH"
        print(f"[{status}] {r.entry} {r.check}: {r.actual.get('status', '')}")
        for problem in r.mismatches:
            print(f"         {problem}")
    print(f"{sum(r.ok for r in results)}/{len(results)} checks as expected in {seconds:.3f} s")

    print("\nall refusals of Autopark against Sensor:")
    for v in all_violations(load_ref("parking.mbt::Autopark"), load_ref("parking.mbt::Sensor")):
        print(f"  {'.'.join(v.trace) or 'ε'} @ {v.pair}: {v.label}")

    if args.dot_dir:
        args.dot_dir.mkdir(parents=True, exist_ok=True)
        parking = load_bundled("parking.mbt")
        composed = load_bundled("composed.mbt")
        drawings = {
            "sensor": (parking["Sensor"], parking["SensorImpl"]),
            "autopark": (parking["Autopark"], parking["AutoparkImpl"]),
            "system": (composed["Sys"], composed["SysImpl"]),
            "system_adapted": (composed["SysAdapted"], composed["SysAdaptedImpl"]),
        }
        for name, (spec, impl) in drawings.items():
            (args.dot_dir / f"{name}.dot").write_text(export_dot(spec, impl), encoding="utf-8")
        print(f"\nwrote {len(drawings)} DOT files to {args.dot_dir}")
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
