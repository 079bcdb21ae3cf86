"""Run configuration: INI-style sections, one file per experiment.

Example::

    [ring]
    radius = 2.7
    m_max = 64

    [laser]
    intensity = 1e14
    photon_energy = 2.0
    beta = 45
    duration_oc = 32
    ramp_oc = 2
    helicity = 1

    [pump]
    sign = none

    [numerics]
    steps_per_oc = 2048
    samples_per_oc = 64

    [spectral]
    sigma0 = 6
    threshold = 2.1e-3

    [logic]
    lz_threshold = 0.01
"""
from __future__ import annotations

import configparser
import logging
import os
from dataclasses import dataclass, field, fields

import numpy as np

from .logic import LZ_THRESHOLD, RunSettings
from .propagator import DEFAULT_SAMPLES_PER_OC, DEFAULT_STEPS_PER_OC
from .ring import LaserPulse, RingConfig
from .spectral import DETECTION_THRESHOLD, LINES, SIGMA0, default_energies

log = logging.getLogger(__name__)

OUTPUT_ENV = "NANORING_OUTPUT_DIR"

# studied parameter ranges; values outside only trigger a warning
RANGES = {
    ("laser", "intensity"): (1e10, 1e14),
    ("laser", "photon_energy"): (0.1, 2.0),
    ("ring", "radius"): (2.7, 100.0),
}


class ConfigError(ValueError):
    pass


@dataclass
class RingSection:
    radius: float = 2.7
    m_max: int = 64


@dataclass
class LaserSection:
    intensity: float = 1e14
    photon_energy: float = 2.0
    beta: float = 45.0
    duration_oc: float = 32.0
    ramp_oc: float = 2.0
    helicity: int = 1


@dataclass
class NumericsSection:
    steps_per_oc: int = DEFAULT_STEPS_PER_OC
    samples_per_oc: int = DEFAULT_SAMPLES_PER_OC
    workers: int = 0  # 0: one per CPU


@dataclass
class SpectralSection:
    sigma0: float = SIGMA0
    threshold: float = DETECTION_THRESHOLD
    e_min: float = 0.0  # 0: automatic grid
    e_max: float = 0.0
    e_step: float = 0.0
    half_width: float = 0.0  # 0: 0.25 * photon energy
    lines: str = ""  # comma-separated subset of H_I,H_II,H_R1,H_R2; empty: all


@dataclass
class LogicSection:
    lz_threshold: float = LZ_THRESHOLD


@dataclass
class RunConfig:
    ring: RingSection = field(default_factory=RingSection)
    laser: LaserSection = field(default_factory=LaserSection)
    pump: int = 0
    numerics: NumericsSection = field(default_factory=NumericsSection)
    spectral: SpectralSection = field(default_factory=SpectralSection)
    logic: LogicSection = field(default_factory=LogicSection)
    output: str = "."

    def ring_config(self) -> RingConfig:
        return RingConfig(self.ring.radius, self.ring.m_max)

    def laser_pulse(self) -> LaserPulse:
        return LaserPulse(**vars(self.laser))

    def energies(self) -> np.ndarray:
        s = self.spectral
        if s.e_min > 0 and s.e_max > s.e_min and s.e_step > 0:
            return np.arange(s.e_min, s.e_max + 1e-9, s.e_step)
        return default_energies(self.laser.photon_energy, self.ring_config())

    def lines(self) -> tuple:
        if not self.spectral.lines.strip():
            return LINES
        names = tuple(n.strip() for n in self.spectral.lines.split(",") if n.strip())
        unknown = set(names) - set(LINES)
        if unknown:
            raise ConfigError(f"unknown lines {sorted(unknown)}; choose from {LINES}")
        return tuple(n for n in LINES if n in names)

    def settings(self) -> RunSettings:
        return RunSettings(
            steps_per_oc=self.numerics.steps_per_oc,
            samples_per_oc=self.numerics.samples_per_oc,
            threshold=self.spectral.threshold,
            lz_threshold=self.logic.lz_threshold,
            sigma0=self.spectral.sigma0,
            energies=self.energies(),
            half_width=self.spectral.half_width or None,
            lines=self.lines(),
            workers=self.numerics.workers or None,
        )

    def validate(self) -> None:
        try:
            self.ring_config()
            self.laser_pulse()
            self.lines()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for (section, key), (lo, hi) in RANGES.items():
            value = getattr(getattr(self, section), key)
            if value and not lo <= value <= hi:
                log.warning("%s.%s = %g lies outside the studied range [%g, %g]",
                            section, key, value, lo, hi)


_SECTIONS = {"ring": RingSection, "laser": LaserSection, "numerics": NumericsSection,
             "spectral": SpectralSection, "logic": LogicSection}


def parse_pump(value) -> int:
    v = str(value).strip().lower()
    if v in ("", "none", "0", "off"):
        return 0
    if v in ("+1", "1", "+", "positive"):
        return 1
    if v in ("-1", "-", "negative"):
        return -1
    raise ConfigError(f"pump sign must be none, +1 or -1, got {value!r}")


def _convert(cls, key, raw):
    types = {f.name: f.type for f in fields(cls)}
    if key not in types:
        raise ConfigError(f"unknown key {key!r} in [{cls.__name__}]")
    kind = types[key]
    if kind in ("str", str):
        return raw
    try:
        if kind in ("int", int):
            f = float(raw)
            if f != int(f):
                raise ValueError
            return int(f)
        return float(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None


def apply_override(cfg: RunConfig, dotted: str, raw: str) -> None:
    """Apply ``section.key=value`` on top of a parsed config."""
    if "." not in dotted:
        raise ConfigError(f"override must look like section.key=value, got {dotted!r}")
    section, key = dotted.split(".", 1)
    if section == "pump":
        cfg.pump = parse_pump(raw)
    elif section == "output":
        cfg.output = raw
    elif section in _SECTIONS:
        obj = getattr(cfg, section)
        setattr(obj, key, _convert(_SECTIONS[section], key, raw))
    else:
        raise ConfigError(f"unknown section {section!r}")


def load_config(path=None, overrides=()) -> RunConfig:
    cfg = RunConfig()
    if path is not None:
        parser = configparser.ConfigParser()
        try:
            with open(path) as fh:
                parser.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        for section in parser.sections():
            for key, raw in parser.items(section):
                apply_override(cfg, f"{section}.{key}", raw)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must look like section.key=value, got {item!r}")
        dotted, raw = item.split("=", 1)
        apply_override(cfg, dotted.strip(), raw.strip())
    if os.environ.get(OUTPUT_ENV):
        cfg.output = os.environ[OUTPUT_ENV]
    cfg.validate()
    return cfg
