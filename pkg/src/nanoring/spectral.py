"""Harmonic spectrum, Morlet wavelet analysis and emission-line detection.

The wavelet transform follows

    w(Omega, t) = sqrt(Omega) * sum_j dt * s(t_j) * conj(M(Omega (t_j - t)))

with the admissible Morlet mother wavelet

    M(x) = (exp(-i x) - exp(-sigma0^2 / 2)) * exp(-x^2 / (2 sigma0^2)),

so a row labelled Omega responds to angular frequency Omega and the energy
axis can be read directly as hbar*Omega.  The sum is evaluated directly
(``np.convolve``) over |Omega (t_j - t)| <= 8 sigma0.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BandOverlap, WindowTooShort
from .ring import HARTREE_EV, RingConfig, level_energy_ev

SIGMA0 = 6.0
SUPPORT = 8.0  # in units of sigma0
MIN_WINDOW_OC = 8.0

LINES = ("H_I", "H_II", "H_R1", "H_R2")

# band half-width as a fraction of the photon energy (0.5 eV at 2 eV)
HALF_WIDTH_FRACTION = 0.25

# Frozen by scripts/calibrate_threshold.py against the no-pump truth table.
DETECTION_THRESHOLD = 2.1e-3


@dataclass
class Spectrum:
    energies: np.ndarray  # eV
    power_x: np.ndarray
    power_y: np.ndarray

    @property
    def power(self) -> np.ndarray:
        return self.power_x + self.power_y

    def local_maxima(self, lo: float, hi: float) -> np.ndarray:
        """Energies of strict local maxima of the total power inside [lo, hi]."""
        p = self.power
        idx = np.where((p[1:-1] > p[:-2]) & (p[1:-1] > p[2:]))[0] + 1
        e = self.energies[idx]
        return e[(e >= lo) & (e <= hi)]


@dataclass
class Scalogram:
    energies: np.ndarray  # eV
    times: np.ndarray  # optical cycles
    magnitude: np.ndarray  # (len(energies), len(times))
    sigma0: float = SIGMA0
    coefficients: np.ndarray | None = field(default=None, repr=False)

    def profile(self, window=None) -> np.ndarray:
        """Time-averaged |w|^2 per energy row over ``window`` = (t0, t1) in oc."""
        sel = _time_mask(self.times, window)
        return np.mean(self.magnitude[:, sel] ** 2, axis=1)


@dataclass
class LineReport:
    centers: dict  # eV; for H_R2 the midpoint of its interval
    bands: dict  # (lo, hi) in eV
    powers: dict
    reference_power: float
    threshold: float
    present: dict

    def bits(self) -> tuple:
        """Presence bits in LINES order; -1 marks a line that was not analysed."""
        return tuple(int(self.present[name]) if name in self.present else -1 for name in LINES)


def _time_mask(times, window):
    if window is None:
        return np.ones(times.shape, dtype=bool)
    t0, t1 = window
    return (times >= t0 - 1e-9) & (times <= t1 + 1e-9)


def dipole_spectrum(traj, window_oc=None, taper: str | None = "hann") -> Spectrum:
    """Power spectrum |FT D_x|^2 + |FT D_y|^2 on a photon-energy axis.

    ``window_oc`` = (start, end) in optical cycles; default the full record.
    A Hann taper suppresses leakage from the strong low-frequency lines.
    """
    sel = _time_mask(traj.times_oc, window_oc)
    n = int(np.count_nonzero(sel))
    span = n * traj.dt_sample / traj.period
    if span < MIN_WINDOW_OC:
        raise WindowTooShort(f"{span:.2f} oc analysed; need at least {MIN_WINDOW_OC}")
    d = traj.dipole[sel]
    w = np.hanning(n) if taper == "hann" else np.ones(n)
    fx = np.fft.rfft(d[:, 0] * w) * traj.dt_sample
    fy = np.fft.rfft(d[:, 1] * w) * traj.dt_sample
    energies = 2.0 * np.pi * np.fft.rfftfreq(n, traj.dt_sample) * HARTREE_EV
    return Spectrum(energies, np.abs(fx) ** 2, np.abs(fy) ** 2)


def morlet(x, sigma0: float = SIGMA0):
    if sigma0 <= 0:
        raise ValueError("sigma0 must be positive")
    x = np.asarray(x, dtype=float)
    return (np.exp(-1j * x) - np.exp(-0.5 * sigma0**2)) * np.exp(-0.5 * x**2 / sigma0**2)


def cwt_complex(signal, dt: float, energies_ev, sigma0: float = SIGMA0) -> np.ndarray:
    """Complex wavelet coefficients, shape (len(energies), len(signal))."""
    s = np.asarray(signal, dtype=float)
    energies_ev = np.asarray(energies_ev, dtype=float)
    if np.any(energies_ev <= 0):
        raise ValueError("analysis energies must be positive")
    out = np.empty((energies_ev.size, s.size), dtype=complex)
    for i, e in enumerate(energies_ev):
        omega = e / HARTREE_EV
        # samples beyond the record contribute nothing
        half = min(int(np.ceil(SUPPORT * sigma0 / (omega * dt))), s.size)
        kernel = np.conj(morlet(omega * dt * np.arange(-half, half + 1), sigma0))
        # correlation: sum_j s_j k(j - i) == convolve(s, k[::-1])
        full = np.convolve(s, kernel[::-1])
        out[i] = np.sqrt(omega) * dt * full[half:half + s.size]
    return out


def cwt(signal, dt: float, energies_ev, sigma0: float = SIGMA0, t0: float = 0.0,
        period: float | None = None) -> Scalogram:
    """Scalogram of a real signal sampled every ``dt`` a.u. starting at ``t0``.

    The time axis is in optical cycles when ``period`` is given, else a.u.
    """
    w = cwt_complex(signal, dt, energies_ev, sigma0)
    times = t0 + dt * np.arange(len(signal))
    if period is not None:
        times = times / period
    return Scalogram(np.asarray(energies_ev, float), times, np.abs(w), sigma0, w)


def default_energies(photon_energy: float, ring: RingConfig | None = None) -> np.ndarray:
    """Analysis grid: 0.25-12 eV in 0.02 eV steps at 2 eV photon energy,
    rescaled with the photon energy.  The lower end is extended when the
    ring's first Raman line would fall below it."""
    step = 0.01 * photon_energy
    lo = 0.125 * photon_energy
    if ring is not None:
        lo = min(lo, level_energy_ev(1, ring))
    return np.arange(lo, 6.0 * photon_energy + 1e-9, step)


def dipole_scalogram(traj, energies_ev=None, sigma0: float = SIGMA0) -> Scalogram:
    """Combined scalogram of both dipole components, |w| = sqrt(|w_x|^2 + |w_y|^2)."""
    if energies_ev is None:
        photon = 2.0 * np.pi / traj.period * HARTREE_EV
        energies_ev = default_energies(photon, RingConfig(traj.radius, traj.m_max))
    wx = cwt_complex(traj.dipole[:, 0], traj.dt_sample, energies_ev, sigma0)
    wy = cwt_complex(traj.dipole[:, 1], traj.dt_sample, energies_ev, sigma0)
    mag = np.sqrt(np.abs(wx) ** 2 + np.abs(wy) ** 2)
    return Scalogram(np.asarray(energies_ev, float), traj.times_oc, mag, sigma0)


def line_bands(ring: RingConfig, photon_energy: float, half_width: float | None = None,
               lines=LINES) -> tuple[dict, dict]:
    """Detection bands (eV) for the requested lines.

    H_I and H_II sit at 1 and 3 photon energies, H_R1 at twice the first ring
    level; H_R2 spans [E_2, E_2 + E_1].  Centred bands are narrowed so they
    stop halfway to the nearest other line; BandOverlap is raised when a line
    falls inside another line's band regardless of width.
    """
    if half_width is None:
        half_width = HALF_WIDTH_FRACTION * photon_energy
    e1 = level_energy_ev(1, ring)
    e2 = level_energy_ev(2, ring)
    cores = {
        "H_I": (photon_energy, photon_energy),
        "H_II": (3 * photon_energy, 3 * photon_energy),
        "H_R1": (2 * e1, 2 * e1),
        "H_R2": (e2, e2 + e1),
    }
    cores = {k: cores[k] for k in lines}

    def gap(a, b):
        (a0, a1), (b0, b1) = cores[a], cores[b]
        return max(b0 - a1, a0 - b1, 0.0)

    bands, centers = {}, {}
    for name, (lo, hi) in cores.items():
        others = [gap(name, o) for o in cores if o != name]
        nearest = min(others) if others else np.inf
        if nearest == 0.0:
            raise BandOverlap(f"{name} collides with another line for this ring/laser pairing")
        if lo == hi:
            # never wider than half the gap to a neighbour, nor below lo / 2
            hw = min(half_width, 0.5 * nearest, 0.5 * lo)
            bands[name] = (lo - hw, lo + hw)
        else:
            bands[name] = (lo, hi)
        centers[name] = 0.5 * (lo + hi)
    return centers, bands


def band_powers(scalogram: Scalogram, bands: dict, window=None) -> dict:
    """Energy-integrated, time-averaged |w|^2 inside each band."""
    prof = scalogram.profile(window)
    e = scalogram.energies
    out = {}
    for name, (lo, hi) in bands.items():
        sel = (e >= lo) & (e <= hi)
        if np.count_nonzero(sel) < 2:
            raise ValueError(f"band {name} = ({lo:.3g}, {hi:.3g}) eV is not resolved by the energy grid")
        out[name] = float(np.trapezoid(prof[sel], e[sel]))
    return out


def detect_lines(scalogram: Scalogram, ring: RingConfig, photon_energy: float,
                 threshold: float = DETECTION_THRESHOLD, window=None,
                 reference_power: float | None = None, half_width: float | None = None,
                 lines=LINES) -> LineReport:
    """Flag each emission line as present when its band power exceeds
    ``threshold * reference_power``.

    ``reference_power`` should be the strongest band power over a laser-on
    run family; by default the strongest band of this scalogram is used.
    """
    centers, bands = line_bands(ring, photon_energy, half_width, lines)
    powers = band_powers(scalogram, bands, window)
    ref = max(powers.values()) if reference_power is None else float(reference_power)
    return report_from_powers(centers, bands, powers, ref, threshold)


def report_from_powers(centers, bands, powers, reference_power, threshold) -> LineReport:
    present = {k: bool(reference_power > 0 and p > threshold * reference_power)
               for k, p in powers.items()}
    return LineReport(centers, bands, powers, reference_power, threshold, present)
