"""Command-line driver.

    nanoring run CONFIG            trajectory.csv spectrum.csv scalogram.bin report.json
    nanoring sweep-beta CONFIG     beta_sweep.csv
    nanoring gate CONFIG           truth_table.json
    nanoring circuit KIND BITS...  evaluation trace (stdout, JSON)
    nanoring memory OPS...         cell state log (stdout, JSON)

Exit codes: 0 success, 2 bad configuration or arguments, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import export
from .config import ConfigError, RunConfig, load_config
from .errors import NanoringError
from .logic import (GateLibrary, MemoryCell, PUMP_CONTEXT, booleanize, full_adder,
                    half_adder, memory_write, probe_window, pump_probe_schedule, simulate,
                    toffoli, truth_table)
from .observables import GAMMA_ORBITAL, array_moment, time_avg_Lz
from .propagator import propagate
from .ring import PulseSchedule, WaveFunction
from .spectral import LINES, detect_lines, dipole_spectrum

log = logging.getLogger("nanoring")


class UsageError(Exception):
    pass


def _outdir(cfg: RunConfig, override) -> Path:
    out = Path(override or cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _schedule(cfg: RunConfig) -> PulseSchedule:
    return pump_probe_schedule(PulseSchedule.single(cfg.laser_pulse()), cfg.laser_pulse(),
                               cfg.pump)


def cmd_run(cfg: RunConfig, outdir: Path) -> dict:
    ring, settings = cfg.ring_config(), cfg.settings()
    schedule = _schedule(cfg)
    traj, scal, _ = simulate(schedule, ring, settings)
    window = (schedule.segments[0].ramp_oc,
              schedule.duration_oc - schedule.segments[-1].ramp_oc)
    report = detect_lines(scal, ring, cfg.laser.photon_energy, settings.threshold, window,
                          half_width=settings.half_width, lines=settings.lines)
    bits = booleanize(report, traj.final_lz, settings.lz_threshold, cfg.pump or 1)

    export.write_trajectory_csv(outdir / "trajectory.csv", traj)
    export.write_spectrum_csv(outdir / "spectrum.csv", dipole_spectrum(traj))
    export.write_scalogram_bin(outdir / "scalogram.bin", scal)
    payload = {
        "ring": {"radius": ring.radius, "m_max": ring.m_max},
        "laser": vars(cfg.laser),
        "pump": PUMP_CONTEXT[cfg.pump],
        "final_lz": traj.final_lz,
        "avg_lz": time_avg_Lz(traj, probe_window(schedule, traj)),
        "max_norm_deviation": float(np.max(np.abs(traj.norm - 1.0))),
        "lines": {
            name: {
                "center_eV": report.centers[name],
                "band_eV": list(report.bands[name]),
                "power": report.powers[name],
                "present": report.present[name],
            }
            for name in settings.lines
        },
        "reference_power": report.reference_power,
        "threshold": report.threshold,
        "lz_threshold": settings.lz_threshold,
        "bits": {name: b for name, b in zip(LINES + ("L_z",), bits) if b >= 0},
    }
    export.write_json(outdir / "report.json", payload)
    return payload


def cmd_sweep_beta(cfg: RunConfig, betas, outdir: Path) -> np.ndarray:
    if not betas:
        raise UsageError("beta list is empty")
    ring, settings = cfg.ring_config(), cfg.settings()

    def one(beta):
        base = cfg.laser_pulse().replace(beta=beta)
        schedule = pump_probe_schedule(PulseSchedule.single(base), base, cfg.pump)
        traj = propagate(WaveFunction.basis(0, ring.m_max), schedule, ring,
                         settings.steps_per_oc, settings.samples_per_oc)
        return traj.final_lz, time_avg_Lz(traj, probe_window(schedule, traj))

    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        results = list(pool.map(one, betas))
    table = np.array([(b, lz, avg) for b, (lz, avg) in zip(betas, results)])
    export.write_beta_sweep_csv(outdir / "beta_sweep.csv", table)
    return table


def cmd_gate(cfg: RunConfig, outdir: Path) -> dict:
    table = truth_table(cfg.ring_config(), cfg.laser_pulse(), cfg.pump, cfg.settings())
    payload = table.to_dict()
    export.write_json(outdir / "truth_table.json", payload)
    return payload


def cmd_circuit(kind: str, bits, gates: GateLibrary | None = None) -> dict:
    try:
        bits = [int(b) for b in bits]
    except ValueError:
        raise UsageError(f"bits must be 0 or 1, got {bits}") from None
    expected = {"half": 2, "full": 3, "toffoli": 3}
    if kind not in expected:
        raise UsageError(f"unknown circuit {kind!r}")
    if len(bits) != expected[kind] or any(b not in (0, 1) for b in bits):
        raise UsageError(f"{kind} needs {expected[kind]} bits")
    trace: list = []
    fn = {"half": half_adder, "full": full_adder, "toffoli": toffoli}[kind]
    out = fn(*bits, gates=gates, trace=trace)
    return {"circuit": kind, "inputs": bits, "outputs": list(out), "trace": trace}


def cmd_memory(cfg: RunConfig, ops, array_size: int = 1) -> dict:
    ring = cfg.ring_config()
    laser = cfg.laser_pulse().replace(beta=45.0)
    cell = MemoryCell(threshold=cfg.logic.lz_threshold)
    log_rows = []
    for op in ops:
        if op == "write":
            cell = memory_write(cell, 1, ring, laser, cfg.numerics.steps_per_oc)
        elif op == "erase":
            cell = memory_write(cell, -1, ring, laser, cfg.numerics.steps_per_oc)
        elif op != "read":
            raise UsageError(f"unknown memory op {op!r} (write, erase, read)")
        moment = array_moment([cell.lz_state] * array_size)
        log_rows.append({"op": op, "lz": cell.lz_state, "bit": cell.bit,
                         "array_moment": moment.value})
    return {"array_size": array_size, "gamma": GAMMA_ORBITAL, "log": log_rows}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nanoring", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config_required=True):
        if config_required:
            sp.add_argument("config", help="INI run configuration")
        else:
            sp.add_argument("--config", help="INI run configuration")
        sp.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                        help="override a configuration value (repeatable)")
        sp.add_argument("--out", help="output directory (else [output] or $NANORING_OUTPUT_DIR)")

    common(sub.add_parser("run", help="simulate one configuration and write all artifacts"))
    sp = sub.add_parser("sweep-beta", help="final and averaged L_z versus polarization angle")
    common(sp)
    sp.add_argument("--betas", required=True, help="comma-separated angles in degrees")
    sp = sub.add_parser("gate", help="truth table and gate classification")
    common(sp)
    sp.add_argument("--pump", help="none, +1 or -1 (overrides the config)")
    sp = sub.add_parser("circuit", help="evaluate half/full adder or Toffoli")
    sp.add_argument("kind", choices=["half", "full", "toffoli"])
    sp.add_argument("bits", nargs="+")
    common(sp, config_required=False)
    sp.add_argument("--simulate", action="store_true",
                    help="take gates from simulated truth tables (needs --config)")
    sp = sub.add_parser("memory", help="write/erase/read a pseudo-spin memory cell")
    sp.add_argument("ops", nargs="+", choices=["write", "erase", "read"])
    common(sp, config_required=False)
    sp.add_argument("--array", type=int, default=1, help="rings inside the laser spot")
    return p


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        overrides = list(args.set)
        if getattr(args, "pump", None) is not None:
            overrides.append(f"pump.sign={args.pump}")
        cfg = load_config(getattr(args, "config", None), overrides)

        if args.command == "run":
            cmd_run(cfg, _outdir(cfg, args.out))
        elif args.command == "sweep-beta":
            try:
                betas = [float(b) for b in args.betas.split(",") if b.strip()]
            except ValueError:
                raise UsageError(f"bad beta list {args.betas!r}") from None
            if not betas:
                raise UsageError("beta list is empty")
            cmd_sweep_beta(cfg, betas, _outdir(cfg, args.out))
        elif args.command == "gate":
            payload = cmd_gate(cfg, _outdir(cfg, args.out))
            print(json.dumps(payload["classification"]))
        elif args.command == "circuit":
            gates = None
            if args.simulate:
                if args.config is None:
                    raise UsageError("--simulate needs --config")
                table = truth_table(cfg.ring_config(), cfg.laser_pulse(), 0, cfg.settings())
                gates = GateLibrary.from_truth_table(table)
            print(json.dumps(cmd_circuit(args.kind, args.bits, gates), indent=2))
        elif args.command == "memory":
            if args.array < 1:
                raise UsageError("--array must be >= 1")
            print(json.dumps(cmd_memory(cfg, args.ops, args.array), indent=2))
    except (ConfigError, UsageError) as exc:
        print(f"nanoring: error: {exc}", file=sys.stderr)
        return 2
    except NanoringError as exc:
        print(f"nanoring: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
