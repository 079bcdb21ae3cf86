"""Plot-ready output files and their readers.

trajectory.csv   t_oc,D_x,D_y,L_z,norm
beta_sweep.csv   beta_deg,final_lz,avg_lz
spectrum.csv     energy_eV,power
scalogram.bin    text header ``rows cols e_min e_max t_min t_max\\n`` then
                 rows*cols little-endian float64 magnitudes, row-major
                 (one row per energy)
*.json           UTF-8, two-space indent, keys in insertion order
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .spectral import Scalogram, Spectrum

FMT = "%.17g"


def _write_csv(path, header, columns):
    data = np.column_stack(columns)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in data:
            fh.write(",".join(FMT % v for v in row) + "\n")


def _read_csv(path, header):
    with open(path) as fh:
        first = fh.readline().strip().split(",")
        if first != list(header):
            raise ValueError(f"{path}: expected header {header}, got {first}")
        return np.loadtxt(fh, delimiter=",", ndmin=2)


def write_trajectory_csv(path, traj) -> None:
    _write_csv(path, ("t_oc", "D_x", "D_y", "L_z", "norm"),
               (traj.times_oc, traj.dipole[:, 0], traj.dipole[:, 1], traj.lz, traj.norm))


def read_trajectory_csv(path) -> dict:
    data = _read_csv(path, ("t_oc", "D_x", "D_y", "L_z", "norm"))
    return {k: data[:, j] for j, k in enumerate(("t_oc", "D_x", "D_y", "L_z", "norm"))}


def write_beta_sweep_csv(path, table) -> None:
    """``table`` rows are (beta_deg, final_lz, avg_lz)."""
    table = np.asarray(table, dtype=float)
    _write_csv(path, ("beta_deg", "final_lz", "avg_lz"), table.T)


def read_beta_sweep_csv(path) -> np.ndarray:
    return _read_csv(path, ("beta_deg", "final_lz", "avg_lz"))


def write_spectrum_csv(path, spectrum: Spectrum) -> None:
    _write_csv(path, ("energy_eV", "power"), (spectrum.energies, spectrum.power))


def read_spectrum_csv(path) -> tuple[np.ndarray, np.ndarray]:
    data = _read_csv(path, ("energy_eV", "power"))
    return data[:, 0], data[:, 1]


def write_scalogram_bin(path, scal: Scalogram) -> None:
    rows, cols = scal.magnitude.shape
    header = " ".join([str(rows), str(cols)] + [FMT % v for v in (
        scal.energies[0], scal.energies[-1], scal.times[0], scal.times[-1])]) + "\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(np.ascontiguousarray(scal.magnitude, dtype="<f8").tobytes())


def read_scalogram_bin(path) -> Scalogram:
    """Rebuild a Scalogram; the axes are reconstructed as uniform grids."""
    with open(path, "rb") as fh:
        header = fh.readline().decode("ascii").split()
        body = fh.read()
    rows, cols = int(header[0]), int(header[1])
    e_min, e_max, t_min, t_max = (float(v) for v in header[2:6])
    mag = np.frombuffer(body, dtype="<f8")
    if mag.size != rows * cols:
        raise ValueError(f"{path}: expected {rows * cols} values, found {mag.size}")
    return Scalogram(np.linspace(e_min, e_max, rows), np.linspace(t_min, t_max, cols),
                     mag.reshape(rows, cols).copy())


def write_json(path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())
