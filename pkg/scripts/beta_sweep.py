"""Final and cycle-averaged L_z against the polarization angle.

    python3 scripts/beta_sweep.py [--step 5] [--ramps 2] [--out DIR]

One beta_sweep.csv per ramp length; the final L_z near beta = 45 is
sensitive to how the pulse is switched off.
"""
import argparse
from pathlib import Path

import numpy as np

from nanoring.cli import cmd_sweep_beta
from nanoring.config import load_config


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--step", type=float, default=5.0)
    ap.add_argument("--ramps", default="2", help="comma-separated ramp lengths in oc")
    ap.add_argument("--out", default="out/beta_sweep")
    args = ap.parse_args()

    betas = list(np.arange(0.0, 90.0 + 1e-9, args.step))
    for ramp in (float(r) for r in args.ramps.split(",")):
        cfg = load_config(None, [f"laser.ramp_oc={ramp}"])
        out = Path(args.out) / f"ramp{ramp:g}"
        out.mkdir(parents=True, exist_ok=True)
        table = cmd_sweep_beta(cfg, betas, out)
        print(f"ramp {ramp:g} oc -> {out / 'beta_sweep.csv'}")
        for beta, final, avg in table:
            print(f"  beta {beta:5.1f}   final {final:+.4f}   avg {avg:+.4f}")


if __name__ == "__main__":
    main()
