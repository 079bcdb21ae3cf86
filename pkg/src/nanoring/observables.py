"""Dipole moment, angular momentum and magnetic moments."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindow
from .ring import ELECTRON_CHARGE, ELECTRON_MASS, RingConfig, WaveFunction

# orbital gyromagnetic ratio -e / (2 m_e)
GAMMA_ORBITAL = -ELECTRON_CHARGE / (2.0 * ELECTRON_MASS)


def _coefficients(state):
    return state.coefficients if isinstance(state, WaveFunction) else np.asarray(state)


def dipole_rows(coefficients: np.ndarray, radius: float) -> np.ndarray:
    """Dipole (D_x, D_y) for a stack of coefficient rows, shape (..., 2).

    Carries the e*R prefactor, so |D| <= R for a normalized state.
    """
    a = np.asarray(coefficients)
    z = np.sum(np.conj(a[..., :-1]) * a[..., 1:], axis=-1)  # sum_m a*_{m-1} a_m
    scale = ELECTRON_CHARGE * radius
    return np.stack([scale * z.real, -scale * z.imag], axis=-1)


def lz_rows(coefficients: np.ndarray) -> np.ndarray:
    a = np.asarray(coefficients)
    m_max = (a.shape[-1] - 1) // 2
    m = np.arange(-m_max, m_max + 1)
    return np.sum(np.abs(a) ** 2 * m, axis=-1)


def dipole(state, ring: RingConfig) -> tuple[float, float]:
    dx, dy = dipole_rows(_coefficients(state), ring.radius)
    return float(dx), float(dy)


def angular_momentum(state) -> float:
    """<L_z> in units of hbar."""
    return float(lz_rows(_coefficients(state)))


def time_avg_Lz(traj, window=None) -> float:
    """Trapezoidal time average of L_z over ``window`` = (t0, t1) in a.u.

    Defaults to the full trajectory span.
    """
    t = traj.times
    if window is None:
        window = (t[0], t[-1])
    t0, t1 = window
    # half-sample slack so window edges that sit on the grid are kept
    eps = 0.5 * traj.dt_sample
    sel = (t >= t0 - eps) & (t <= t1 + eps)
    if np.count_nonzero(sel) < 2:
        raise EmptyWindow(f"fewer than two samples inside [{t0}, {t1}]")
    ts, lz = t[sel], traj.lz[sel]
    return float(np.trapezoid(lz, ts) / (ts[-1] - ts[0]))


@dataclass(frozen=True)
class MagneticMoment:
    value: float
    gamma: float = GAMMA_ORBITAL


def magnetic_moment(lz: float, gamma: float = GAMMA_ORBITAL) -> MagneticMoment:
    return MagneticMoment(gamma * lz, gamma)


def array_moment(lz_values, gamma: float = GAMMA_ORBITAL) -> MagneticMoment:
    """Total moment of the rings inside one laser spot: gamma * sum(L_z).

    ``math.fsum`` keeps the sum correctly rounded, so the result does not
    depend on ring order.
    """
    lz_values = [float(v) for v in lz_values]
    if not lz_values:
        raise ValueError("the laser spot must contain at least one ring")
    return MagneticMoment(gamma * math.fsum(lz_values), gamma)
