"""Time propagation of the driven ring.

Strang splitting: exact free phase for half a step, Crank-Nicolson for the
tridiagonal laser coupling (field taken at the step midpoint), free phase
for the second half.  Every factor is unitary, so the norm is conserved to
round-off and the cost per step is O(m_max).
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .errors import NormDrift, PumpFailed, TruncationPressure
from .observables import dipole_rows, lz_rows
from .ring import LaserPulse, PulseSchedule, RingConfig, WaveFunction, coupling

NORM_TOL = 1e-6
EDGE_TOL = 1e-8
EDGE_WIDTH = 2
PUMP_MIN_LZ = 1e-3

DEFAULT_STEPS_PER_OC = 2048
DEFAULT_SAMPLES_PER_OC = 64


@dataclass
class Trajectory:
    """Uniformly sampled record of one propagation (times in a.u.)."""

    times: np.ndarray
    states: np.ndarray  # (n_samples, 2*m_max + 1)
    dipole: np.ndarray  # (n_samples, 2)
    lz: np.ndarray
    norm: np.ndarray
    dt_sample: float
    period: float
    radius: float
    schedule: PulseSchedule | None = None

    @property
    def times_oc(self) -> np.ndarray:
        return self.times / self.period

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    @property
    def m_max(self) -> int:
        return (self.states.shape[1] - 1) // 2

    def final_state(self) -> WaveFunction:
        return WaveFunction(self.states[-1].copy(), float(self.times[-1]))

    @property
    def final_lz(self) -> float:
        return float(self.lz[-1])

    def window(self, start_oc: float, end_oc: float) -> tuple[float, float]:
        return start_oc * self.period, end_oc * self.period


@numba.njit(cache=True, nogil=True)
def _evolve(psi, energies, lower, dt, stride, out):
    """Advance ``psi`` one step per entry of ``lower``; store every ``stride``."""
    n = psi.size
    half = np.exp(-0.5j * dt * energies)
    c = 0.5j * dt
    rhs = np.empty(n, dtype=np.complex128)
    cp = np.empty(n, dtype=np.complex128)
    row = 1
    for k in range(lower.size):
        for i in range(n):
            psi[i] *= half[i]
        sub = c * lower[k]
        sup = c * np.conj(lower[k])
        # rhs = (1 - i dt/2 V) psi
        for i in range(n):
            r = psi[i]
            if i > 0:
                r -= sub * psi[i - 1]
            if i < n - 1:
                r -= sup * psi[i + 1]
            rhs[i] = r
        # Thomas solve of (1 + i dt/2 V) x = rhs
        cp[0] = sup
        psi[0] = rhs[0]
        for i in range(1, n):
            denom = 1.0 - sub * cp[i - 1]
            cp[i] = sup / denom
            psi[i] = (rhs[i] - sub * psi[i - 1]) / denom
        for i in range(n - 2, -1, -1):
            psi[i] -= cp[i] * psi[i + 1]
        for i in range(n):
            psi[i] *= half[i]
        if (k + 1) % stride == 0:
            out[row, :] = psi
            row += 1
    return psi


def midpoint_fields(schedule: PulseSchedule, steps_per_oc: int):
    """Field components at every step midpoint and the step size (a.u.)."""
    n_steps = int(round(schedule.duration_oc * steps_per_oc))
    if not np.isclose(n_steps, schedule.duration_oc * steps_per_oc):
        raise ValueError("duration_oc * steps_per_oc must be an integer")
    dt = schedule.period / steps_per_oc
    ex, ey = schedule.field((np.arange(n_steps) + 0.5) * dt)
    return ex, ey, dt


def evolve_fields(initial: np.ndarray, ring: RingConfig, ex, ey, dt: float,
                  stride: int) -> np.ndarray:
    """Low-level driver: returns the sampled states including the initial one."""
    lower = np.ascontiguousarray(coupling(ex, ey, ring), dtype=np.complex128)
    n_samples = lower.size // stride + 1
    out = np.empty((n_samples, ring.size), dtype=np.complex128)
    psi = np.array(initial, dtype=np.complex128)
    out[0] = psi
    _evolve(psi, ring.energies(), lower, dt, stride, out)
    return out


def propagate(initial: WaveFunction, schedule: PulseSchedule, ring: RingConfig,
              steps_per_oc: int = DEFAULT_STEPS_PER_OC,
              samples_per_oc: int = DEFAULT_SAMPLES_PER_OC,
              check_truncation: bool = True) -> Trajectory:
    """Integrate the TDSE over ``schedule`` starting from ``initial``.

    Raises NormDrift if a sampled norm leaves 1 +- 1e-6 and
    TruncationPressure if more than 1e-8 of the population sits within two
    states of the basis edge.  ``check_truncation=False`` is for deliberately
    tiny bases (oracle comparisons).
    """
    if steps_per_oc < 256:
        raise ValueError("steps_per_oc must be >= 256")
    if steps_per_oc % samples_per_oc:
        raise ValueError("samples_per_oc must divide steps_per_oc")
    if initial.coefficients.size != ring.size:
        raise ValueError("initial state does not match the ring truncation")
    if abs(initial.norm() - 1.0) > NORM_TOL:
        raise ValueError("initial state must be normalized")

    ex, ey, dt = midpoint_fields(schedule, steps_per_oc)
    stride = steps_per_oc // samples_per_oc
    states = evolve_fields(initial.coefficients, ring, ex, ey, dt, stride)
    times = initial.t + np.arange(states.shape[0]) * stride * dt

    norm = np.sum(np.abs(states) ** 2, axis=1)
    drift = np.max(np.abs(norm - 1.0))
    if drift > NORM_TOL:
        raise NormDrift(f"norm deviates by {drift:.3e} (> {NORM_TOL})")
    if check_truncation:
        edge = np.abs(ring.m) >= ring.m_max - EDGE_WIDTH
        pressure = np.max(np.sum(np.abs(states[:, edge]) ** 2, axis=1))
        if pressure > EDGE_TOL:
            raise TruncationPressure(
                f"edge population {pressure:.3e} > {EDGE_TOL}; increase m_max")

    return Trajectory(
        times=times,
        states=states,
        dipole=dipole_rows(states, ring.radius),
        lz=lz_rows(states),
        norm=norm,
        dt_sample=stride * dt,
        period=schedule.period,
        radius=ring.radius,
        schedule=schedule,
    )


def pump_pulse(intensity: float, photon_energy: float, sign: int,
               duration_oc: float = 32.0, ramp_oc: float = 2.0) -> LaserPulse:
    """Circular pump; ``sign = +1`` drives positive L_z."""
    return LaserPulse(intensity, photon_energy, beta=45.0, duration_oc=duration_oc,
                      ramp_oc=ramp_oc, helicity=sign)


def prepare_pump(ring: RingConfig, intensity: float, photon_energy: float, sign: int,
                 duration_oc: float = 32.0, ramp_oc: float = 2.0,
                 steps_per_oc: int = DEFAULT_STEPS_PER_OC) -> WaveFunction:
    """Ground state after a circular pump; sign(L_z) of the result equals ``sign``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if duration_oc < 2 * ramp_oc:
        raise ValueError("duration_oc must be at least 2 * ramp_oc")
    pulse = pump_pulse(intensity, photon_energy, sign, duration_oc, ramp_oc)
    traj = propagate(WaveFunction.basis(0, ring.m_max), PulseSchedule.single(pulse), ring,
                     steps_per_oc=steps_per_oc)
    lz = traj.final_lz
    if abs(lz) < PUMP_MIN_LZ or np.sign(lz) != sign:
        raise PumpFailed(f"pump left L_z = {lz:.3e}, need sign {sign:+d} and |L_z| >= {PUMP_MIN_LZ}")
    return traj.final_state()
