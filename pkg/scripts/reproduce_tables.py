"""Simulate the three gate truth tables and compare them with the targets.

    python3 scripts/reproduce_tables.py [--out DIR]

Writes truth_table_{none,pos,neg}.json into DIR and prints each table next
to its target with the mismatching cells starred.
"""
import argparse
from pathlib import Path

from nanoring import export
from nanoring.logic import INPUTS, OUTPUTS, RunSettings, truth_table
from nanoring.ring import LaserPulse, RingConfig
from nanoring.targets import GATES, TABLES

NAMES = {0: "none", 1: "pos", -1: "neg"}


def show(table, pump):
    target = TABLES[pump]
    print(f"\npump {NAMES[pump]}  (reference band power {table.reference_power:.3e})")
    print("  in   " + " ".join(f"{c:>5}" for c in OUTPUTS) + "    final L_z")
    for i, want in zip(INPUTS, target):
        row = table.rows[i]
        cells = " ".join(f"{b:>4}{'*' if b != w else ' '}" for b, w in zip(row.bits, want))
        print(f"  {i.ex}{i.ey}   {cells}   {row.final_lz:+.4f}")
    got = [k.value for k in table.classifications.values()]
    want = [g.value for g in GATES[pump]]
    print("  got    " + " ".join(f"{g:>12}" for g in got))
    print("  target " + " ".join(f"{g:>12}" for g in want))


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="out/tables")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    ring, laser = RingConfig(2.7, 64), LaserPulse(1e14, 2.0)
    for pump in (0, 1, -1):
        table = truth_table(ring, laser, pump, RunSettings())
        export.write_json(out / f"truth_table_{NAMES[pump]}.json", table.to_dict())
        show(table, pump)


if __name__ == "__main__":
    main()
