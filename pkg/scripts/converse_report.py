"""Look for instances where the composed check passes although a component check fails.

The compositional result only goes one way; this script counts and prints
the instances that show it, for example a component whose extra output is
never triggered inside the composition.
"""

import argparse
import random

from compo_mbt.composition import compose
from compo_mbt.harness import (GenConfig, gen_input_completion, gen_mutual_pair, mutate_outputs,
                               sample_config)
from compo_mbt.modelio import serialize
from compo_mbt.uioco import check_uioco


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--show", type=int, default=1, help="print this many instances in full")
    args = ap.parse_args()

    cfg = GenConfig(seed=args.seed)
    found = 0
    for k in range(args.samples):
        sub = sample_config(cfg, k)
        rng = random.Random(sub.seed)
        s, e = gen_mutual_pair(sub, rng=rng)
        i_s = mutate_outputs(gen_input_completion(s, sub, rng=rng), rng).with_name("i_s")
        i_e = mutate_outputs(gen_input_completion(e, sub, rng=rng), rng).with_name("i_e")
        v_s, v_e = check_uioco(i_s, s), check_uioco(i_e, e)
        if (v_s.passed and v_e.passed) or not check_uioco(compose(i_s, i_e), compose(s, e)).passed:
            continue
        found += 1
        if found <= args.show:
            bad = v_s if not v_s.passed else v_e
            print(f"sample {k}: component witness {'.'.join(bad.trace) or 'ε'} / {bad.offending}, "
                  f"composition passes")
            print(serialize([s, e, i_s, i_e]))
    print(f"{found} of {args.samples} samples pass compositionally while a component fails")


if __name__ == "__main__":
    main()
