"""Boolean logic read out of a driven nanoring.

Inputs are the two field components: (E_x, E_y) = (0,0) is laser off,
(1,0) x-polarized, (0,1) y-polarized and (1,1) circular.  Outputs are the
presence of the four emission lines and whether the ring is left carrying
angular momentum.
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import MissingGate
from .observables import time_avg_Lz
from .propagator import (DEFAULT_SAMPLES_PER_OC, DEFAULT_STEPS_PER_OC, propagate,
                         pump_pulse)
from .ring import LaserPulse, PulseSchedule, RingConfig, WaveFunction
from .spectral import (DETECTION_THRESHOLD, LINES, LineReport, band_powers, dipole_scalogram,
                       line_bands, report_from_powers)

LZ_THRESHOLD = 0.01  # hbar
OUTPUTS = LINES + ("L_z",)


class InputState(NamedTuple):
    ex: int
    ey: int


INPUTS = (InputState(0, 0), InputState(1, 0), InputState(0, 1), InputState(1, 1))
BETA = {InputState(1, 0): 0.0, InputState(0, 1): 90.0, InputState(1, 1): 45.0}

PUMP_CONTEXT = {0: "none", 1: "L>0", -1: "L<0"}


class GateKind(enum.Enum):
    RESET = "RESET"  # constant 0
    BUFFER = "BUFFER"  # constant 1 (naming follows the nanoring literature)
    OR = "OR"
    AND = "AND"
    XOR = "XOR"
    NOR = "NOR"
    NAND = "NAND"
    XNOR = "XNOR"
    UNCLASSIFIED = "UNCLASSIFIED"


# columns are ordered by INPUTS: 00, 10, 01, 11
_COLUMNS = {
    (0, 0, 0, 0): GateKind.RESET,
    (1, 1, 1, 1): GateKind.BUFFER,
    (0, 1, 1, 1): GateKind.OR,
    (0, 0, 0, 1): GateKind.AND,
    (0, 1, 1, 0): GateKind.XOR,
    (1, 0, 0, 0): GateKind.NOR,
    (1, 1, 1, 0): GateKind.NAND,
    (1, 0, 0, 1): GateKind.XNOR,
}

_IDEAL = {GateKind.OR: (0, 1, 1, 1), GateKind.AND: (0, 0, 0, 1), GateKind.XOR: (0, 1, 1, 0)}


def classify_column(column) -> GateKind:
    """Name a 4-bit output column.  Only the eight functions that are
    symmetric in the two inputs get a name; the rest are UNCLASSIFIED."""
    column = tuple(int(b) for b in column)
    if len(column) != 4 or any(b not in (0, 1) for b in column):
        raise ValueError(f"expected four bits, got {column}")
    return _COLUMNS.get(column, GateKind.UNCLASSIFIED)


def encode_input(bits, base: LaserPulse) -> PulseSchedule:
    """Probe pulse for an input pair; (0,0) keeps the duration at zero intensity."""
    bits = InputState(*bits)
    if bits == InputState(0, 0):
        pulse = base.replace(intensity=0.0, helicity=1)
    else:
        pulse = base.replace(beta=BETA[bits], helicity=1)
    return PulseSchedule.single(pulse)


def booleanize(report: LineReport, final_lz: float, lz_threshold: float = LZ_THRESHOLD,
               orientation: int = 1) -> tuple:
    """Five output bits (H_I, H_II, H_R1, H_R2, L_z).

    The L_z bit is set when the final angular momentum points along
    ``orientation`` (the pump's sense, +1 without a pump) by more than
    ``lz_threshold``.
    """
    return report.bits() + (int(orientation * final_lz > lz_threshold),)


@dataclass
class RowResult:
    inputs: InputState
    bits: tuple
    final_lz: float
    avg_lz: float
    report: LineReport


@dataclass
class TruthTable:
    context: str
    rows: dict  # InputState -> RowResult
    threshold: float
    lz_threshold: float
    reference_power: float

    def __post_init__(self):
        if set(self.rows) != set(INPUTS):
            raise ValueError("a truth table needs exactly the four input states")

    def bits(self, inputs) -> tuple:
        return self.rows[InputState(*inputs)].bits

    def matrix(self) -> np.ndarray:
        return np.array([self.rows[i].bits for i in INPUTS], dtype=int)

    @property
    def columns(self) -> dict:
        m = self.matrix()
        return {name: tuple(int(b) for b in m[:, j]) for j, name in enumerate(OUTPUTS)}

    @property
    def classifications(self) -> dict:
        return {name: classify_column(col) for name, col in self.columns.items()}

    def to_dict(self) -> dict:
        return {
            "context": self.context,
            "inputs": [list(i) for i in INPUTS],
            "columns": list(OUTPUTS),
            "rows": [
                {
                    "input": list(i),
                    "bits": list(self.rows[i].bits),
                    "final_lz": self.rows[i].final_lz,
                    "avg_lz": self.rows[i].avg_lz,
                    "band_power": dict(self.rows[i].report.powers),
                }
                for i in INPUTS
            ],
            "classification": {k: v.value for k, v in self.classifications.items()},
            "threshold": self.threshold,
            "lz_threshold": self.lz_threshold,
            "reference_power": self.reference_power,
        }


@dataclass
class RunSettings:
    steps_per_oc: int = DEFAULT_STEPS_PER_OC
    samples_per_oc: int = DEFAULT_SAMPLES_PER_OC
    threshold: float = DETECTION_THRESHOLD
    lz_threshold: float = LZ_THRESHOLD
    sigma0: float = 6.0
    energies: np.ndarray | None = None
    half_width: float | None = None
    lines: tuple = LINES
    workers: int | None = None


def pump_probe_schedule(probe: PulseSchedule, base: LaserPulse, pump: int) -> PulseSchedule:
    if pump == 0:
        return probe
    p = pump_pulse(base.intensity, base.photon_energy, pump, base.duration_oc, base.ramp_oc)
    return PulseSchedule((p,) + probe.segments)


def simulate(schedule: PulseSchedule, ring: RingConfig, settings: RunSettings,
             initial: WaveFunction | None = None):
    """Propagate and analyse one schedule; returns (trajectory, scalogram, powers)."""
    if initial is None:
        initial = WaveFunction.basis(0, ring.m_max)
    traj = propagate(initial, schedule, ring, settings.steps_per_oc, settings.samples_per_oc)
    scal = dipole_scalogram(traj, settings.energies, settings.sigma0)
    _, bands = line_bands(ring, schedule.photon_energy, settings.half_width, settings.lines)
    ramp = schedule.segments[0].ramp_oc
    window = (ramp, schedule.duration_oc - schedule.segments[-1].ramp_oc)
    return traj, scal, band_powers(scal, bands, window)


def probe_window(schedule: PulseSchedule, traj) -> tuple[float, float]:
    start, end = schedule.segment_bounds_oc()[-1]
    return traj.window(start, end)


def truth_table(ring: RingConfig, laser: LaserPulse, pump: int = 0,
                settings: RunSettings | None = None) -> TruthTable:
    """Run all four input states (pump segment prepended when ``pump`` is
    +1/-1) and booleanize against the strongest band in the family."""
    if pump not in PUMP_CONTEXT:
        raise ValueError("pump must be 0, +1 or -1")
    settings = settings or RunSettings()
    schedules = {i: pump_probe_schedule(encode_input(i, laser), laser, pump) for i in INPUTS}

    def run(i):
        return simulate(schedules[i], ring, settings)

    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        results = dict(zip(INPUTS, pool.map(run, INPUTS)))

    reference = max(max(p.values()) for _, _, p in results.values())
    centers, bands = line_bands(ring, laser.photon_energy, settings.half_width, settings.lines)
    orientation = pump if pump else 1
    rows = {}
    for i in INPUTS:
        traj, _, powers = results[i]
        report = report_from_powers(centers, bands, powers, reference, settings.threshold)
        final_lz = traj.final_lz
        rows[i] = RowResult(
            inputs=i,
            bits=booleanize(report, final_lz, settings.lz_threshold, orientation),
            final_lz=final_lz,
            avg_lz=time_avg_Lz(traj, probe_window(schedules[i], traj)),
            report=report,
        )
    return TruthTable(PUMP_CONTEXT[pump], rows, settings.threshold, settings.lz_threshold,
                      reference)


# --- circuits -------------------------------------------------------------

@dataclass
class GateLibrary:
    """Boolean primitives, each backed by a 4-bit column and a provenance label."""

    gates: dict = field(default_factory=dict)  # GateKind -> (label, column)

    @classmethod
    def ideal(cls) -> "GateLibrary":
        return cls({k: (f"ideal {k.value}", col) for k, col in _IDEAL.items()})

    @classmethod
    def from_truth_table(cls, table: TruthTable, label: str = "ring") -> "GateLibrary":
        gates = {}
        for name, col in table.columns.items():
            kind = classify_column(col)
            gates.setdefault(kind, (f"{label}[{table.context}].{name}", col))
        return cls(gates)

    def merged(self, other: "GateLibrary") -> "GateLibrary":
        gates = dict(other.gates)
        gates.update(self.gates)
        return GateLibrary(gates)

    def apply(self, kind: GateKind, a: int, b: int, trace: list | None = None) -> int:
        if kind not in self.gates:
            raise MissingGate(f"no configured column realizes {kind.value}")
        label, col = self.gates[kind]
        out = int(col[INPUTS.index(InputState(int(a), int(b)))])
        if trace is not None:
            trace.append({"op": kind.value, "inputs": [int(a), int(b)], "output": out,
                          "source": label})
        return out


def _bit(x) -> int:
    if x not in (0, 1, True, False):
        raise ValueError(f"not a bit: {x!r}")
    return int(x)


def half_adder(a, b, gates: GateLibrary | None = None, trace: list | None = None):
    """(sum, carry).  ``gates=None`` evaluates the boolean abstraction; pass a
    library built from a simulated truth table to use the ring's columns."""
    gates = gates or GateLibrary.ideal()
    a, b = _bit(a), _bit(b)
    return gates.apply(GateKind.XOR, a, b, trace), gates.apply(GateKind.AND, a, b, trace)


def full_adder(a, b, cin, gates: GateLibrary | None = None, trace: list | None = None):
    """(sum, carry_out) from two half adders and an OR."""
    gates = gates or GateLibrary.ideal()
    s1, c1 = half_adder(a, b, gates, trace)
    s, c2 = half_adder(s1, _bit(cin), gates, trace)
    return s, gates.apply(GateKind.OR, c1, c2, trace)


def toffoli(a, b, c, gates: GateLibrary | None = None, trace: list | None = None):
    """(a, b, c XOR (a AND b)) from one AND and one XOR primitive."""
    gates = gates or GateLibrary.ideal()
    a, b, c = _bit(a), _bit(b), _bit(c)
    return a, b, gates.apply(GateKind.XOR, c, gates.apply(GateKind.AND, a, b, trace), trace)


# --- memory ---------------------------------------------------------------

@dataclass(frozen=True)
class MemoryCell:
    """Pseudo-spin storage: bit 1 while L_z exceeds the write threshold."""

    lz_state: float = 0.0
    threshold: float = LZ_THRESHOLD
    state: WaveFunction | None = field(default=None, compare=False, repr=False)

    @property
    def bit(self) -> int:
        return int(self.lz_state > self.threshold)


def memory_write(cell: MemoryCell, helicity: int, ring: RingConfig, laser: LaserPulse,
                 steps_per_oc: int = DEFAULT_STEPS_PER_OC) -> MemoryCell:
    """Drive the cell with a circular pulse of the given helicity.

    +1 on an empty cell writes a 1; -1 on a written cell erases it.
    """
    if laser.beta != 45.0:
        raise ValueError("memory writes need a circular pulse (beta = 45)")
    if helicity not in (1, -1):
        raise ValueError("helicity must be +1 or -1")
    state = cell.state if cell.state is not None else WaveFunction.basis(0, ring.m_max)
    schedule = PulseSchedule.single(laser.replace(helicity=helicity))
    traj = propagate(state, schedule, ring, steps_per_oc=steps_per_oc)
    return MemoryCell(traj.final_lz, cell.threshold, traj.final_state())
