"""Physical configuration of a driven nanoring.

Everything inside the package works in atomic units (hbar = m_e = e = 1).
Laboratory units (eV, W/cm^2, degrees, optical cycles) are accepted on the
dataclasses below and converted once through their properties.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

HARTREE_EV = 27.211386245988
ATOMIC_INTENSITY = 3.50945e16  # W/cm^2
AU_TIME_FS = 0.02418884326585747

HBAR = 1.0
ELECTRON_MASS = 1.0
ELECTRON_CHARGE = 1.0


def ev_to_au(energy_ev):
    return energy_ev / HARTREE_EV


def au_to_ev(energy_au):
    return energy_au * HARTREE_EV


@dataclass(frozen=True)
class RingConfig:
    """Ring of ``radius`` Bohr radii in the basis m = -m_max ... +m_max."""

    radius: float = 2.7
    m_max: int = 64

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if int(self.m_max) != self.m_max or self.m_max < 1:
            raise ValueError(f"m_max must be an integer >= 1, got {self.m_max}")

    @property
    def m(self) -> np.ndarray:
        return np.arange(-self.m_max, self.m_max + 1)

    @property
    def size(self) -> int:
        return 2 * self.m_max + 1

    def index(self, m: int) -> int:
        if abs(m) > self.m_max:
            raise IndexError(f"|m| = {abs(m)} exceeds m_max = {self.m_max}")
        return m + self.m_max

    def energies(self) -> np.ndarray:
        """Free level energies for the whole basis (hartree)."""
        return level_energy(self.m, self)


def level_energy(m, ring: RingConfig):
    """Free-ring energy m^2 / (2 R^2) in hartree.  Accepts scalars or arrays."""
    m = np.asarray(m)
    if np.any(np.abs(m) > ring.m_max):
        raise IndexError(f"|m| exceeds m_max = {ring.m_max}")
    e = HBAR**2 * m.astype(float) ** 2 / (2.0 * ELECTRON_MASS * ring.radius**2)
    return float(e) if e.ndim == 0 else e


def level_energy_ev(m, ring: RingConfig):
    return au_to_ev(level_energy(m, ring))


def amplitude_from_intensity(intensity: float) -> float:
    """Peak field (a.u.) for a cycle-averaged intensity in W/cm^2."""
    if intensity < 0:
        raise ValueError("intensity must be non-negative")
    return float(np.sqrt(intensity / ATOMIC_INTENSITY))


@dataclass(frozen=True)
class LaserPulse:
    """One trapezoidal, elliptically polarized pulse segment.

    ``beta`` mixes the two linear components: 0 is x-polarized, 90 is
    y-polarized and 45 circular.  ``helicity`` multiplies the y component and
    therefore selects the rotation sense of a circular pulse.
    """

    intensity: float
    photon_energy: float
    beta: float = 45.0
    duration_oc: float = 32.0
    ramp_oc: float = 2.0
    helicity: int = 1

    def __post_init__(self):
        if self.intensity < 0:
            raise ValueError("intensity must be >= 0 (0 means laser off)")
        if not self.photon_energy > 0:
            raise ValueError("photon_energy must be positive")
        if not 0.0 <= self.beta <= 90.0:
            raise ValueError(f"beta must lie in [0, 90] degrees, got {self.beta}")
        if self.ramp_oc < 0 or 2 * self.ramp_oc > self.duration_oc:
            raise ValueError("need 0 <= 2*ramp_oc <= duration_oc")
        if self.helicity not in (1, -1):
            raise ValueError("helicity must be +1 or -1")

    @property
    def omega(self) -> float:
        return self.photon_energy / HARTREE_EV

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega

    @property
    def duration(self) -> float:
        return self.duration_oc * self.period

    @property
    def amplitude(self) -> float:
        return amplitude_from_intensity(self.intensity)

    def replace(self, **changes) -> "LaserPulse":
        return replace(self, **changes)


def envelope(t, pulse: LaserPulse):
    """Trapezoid envelope; ``t`` in a.u. measured from the pulse start.

    Returns 0 outside ``[0, duration]``.
    """
    t = np.asarray(t, dtype=float)
    t_oc = t / pulse.period
    if pulse.ramp_oc > 0:
        rise = t_oc / pulse.ramp_oc
        fall = (pulse.duration_oc - t_oc) / pulse.ramp_oc
        f = np.clip(np.minimum(np.minimum(rise, fall), 1.0), 0.0, 1.0)
    else:
        f = np.ones_like(t_oc)
    f = np.where((t_oc < 0) | (t_oc > pulse.duration_oc), 0.0, f)
    return float(f) if f.ndim == 0 else f


def field_at(t, pulse: LaserPulse):
    """Electric field (E_x, E_y) in a.u. at time(s) ``t`` from the pulse start."""
    t = np.asarray(t, dtype=float)
    amp = pulse.amplitude * envelope(t, pulse)
    b = np.radians(pulse.beta)
    phase = pulse.omega * t
    ex = amp * np.cos(b) * np.cos(phase)
    ey = pulse.helicity * amp * np.sin(b) * np.sin(phase)
    if ex.ndim == 0:
        return float(ex), float(ey)
    return ex, ey


@dataclass(frozen=True)
class PulseSchedule:
    """Back-to-back pulse segments sharing one carrier frequency."""

    segments: tuple = field(default_factory=tuple)

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ValueError("a schedule needs at least one segment")
        energies = {s.photon_energy for s in segs}
        if len(energies) != 1:
            raise ValueError("all segments must share the same photon_energy")

    @classmethod
    def single(cls, pulse: LaserPulse) -> "PulseSchedule":
        return cls((pulse,))

    @property
    def photon_energy(self) -> float:
        return self.segments[0].photon_energy

    @property
    def period(self) -> float:
        return self.segments[0].period

    @property
    def duration_oc(self) -> float:
        return float(sum(s.duration_oc for s in self.segments))

    @property
    def duration(self) -> float:
        return self.duration_oc * self.period

    def segment_bounds_oc(self):
        """[(start_oc, end_oc), ...] for each segment."""
        bounds, start = [], 0.0
        for s in self.segments:
            bounds.append((start, start + s.duration_oc))
            start += s.duration_oc
        return bounds

    def field(self, t):
        """Field (E_x, E_y) at absolute schedule time(s) ``t`` (a.u.)."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        ex = np.zeros_like(t)
        ey = np.zeros_like(t)
        for (start, end), seg in zip(self.segment_bounds_oc(), self.segments):
            t0, t1 = start * self.period, end * self.period
            inside = (t >= t0) & (t < t1) if end < self.duration_oc else (t >= t0) & (t <= t1)
            if np.any(inside):
                fx, fy = field_at(t[inside] - t0, seg)
                ex[inside] = fx
                ey[inside] = fy
        return ex, ey


@dataclass
class WaveFunction:
    """Expansion coefficients a_m, m = -m_max ... m_max, at time ``t`` (a.u.)."""

    coefficients: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=complex)
        if self.coefficients.ndim != 1 or self.coefficients.size % 2 != 1:
            raise ValueError("coefficients must be a 1-D array of odd length")

    @classmethod
    def basis(cls, m: int, m_max: int, t: float = 0.0) -> "WaveFunction":
        a = np.zeros(2 * m_max + 1, dtype=complex)
        a[m + m_max] = 1.0
        return cls(a, t)

    @classmethod
    def from_components(cls, components: dict, m_max: int) -> "WaveFunction":
        """Build from ``{m: amplitude}`` and normalize."""
        a = np.zeros(2 * m_max + 1, dtype=complex)
        for m, c in components.items():
            a[m + m_max] = c
        return cls(a / np.linalg.norm(a))

    @property
    def m_max(self) -> int:
        return (self.coefficients.size - 1) // 2

    @property
    def m(self) -> np.ndarray:
        return np.arange(-self.m_max, self.m_max + 1)

    def norm(self) -> float:
        return float(np.vdot(self.coefficients, self.coefficients).real)

    def populations(self) -> np.ndarray:
        return np.abs(self.coefficients) ** 2

    def copy(self) -> "WaveFunction":
        return WaveFunction(self.coefficients.copy(), self.t)


def coupling(ex, ey, ring: RingConfig):
    """Lower off-diagonal element <m+1|V|m> = R (E_x - i E_y) / 2.

    cos(phi) couples neighbours with 1/2; sin(phi) with -i/2 going up and
    +i/2 going down.  The upper element is the complex conjugate.
    """
    return ELECTRON_CHARGE * ring.radius * (np.asarray(ex) - 1j * np.asarray(ey)) / 2.0


def apply_hamiltonian(state: WaveFunction, t: float, ring: RingConfig,
                      schedule: PulseSchedule) -> np.ndarray:
    """Return (H psi)_m at schedule time ``t``; basis edges couple inward only."""
    a = state.coefficients
    if a.size != ring.size:
        raise ValueError("state does not match the ring truncation")
    ex, ey = schedule.field(t)
    lower = complex(coupling(ex[0], ey[0], ring))
    out = ring.energies() * a
    out[1:] += lower * a[:-1]
    out[:-1] += np.conj(lower) * a[1:]
    return out


def hamiltonian_matrix(t: float, ring: RingConfig, schedule: PulseSchedule) -> np.ndarray:
    """Dense H(t), assembled column by column from :func:`apply_hamiltonian`."""
    n = ring.size
    h = np.empty((n, n), dtype=complex)
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1.0
        h[:, j] = apply_hamiltonian(WaveFunction(e), t, ring, schedule)
    return h
