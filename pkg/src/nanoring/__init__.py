"""Driven quantum nanoring: propagation, emission lines and ring logic."""
from .errors import (BandOverlap, EmptyWindow, MissingGate, NanoringError, NormDrift,
                     PumpFailed, TruncationPressure, WindowTooShort)
from .logic import (GateKind, GateLibrary, InputState, MemoryCell, RunSettings, TruthTable,
                    booleanize, classify_column, encode_input, full_adder, half_adder,
                    memory_write, toffoli, truth_table)
from .observables import (GAMMA_ORBITAL, MagneticMoment, angular_momentum, array_moment,
                          dipole, time_avg_Lz)
from .propagator import Trajectory, prepare_pump, propagate
from .ring import (LaserPulse, PulseSchedule, RingConfig, WaveFunction,
                   amplitude_from_intensity, apply_hamiltonian, envelope, field_at,
                   level_energy, level_energy_ev)
from .spectral import (LineReport, Scalogram, Spectrum, cwt, detect_lines, dipole_scalogram,
                       dipole_spectrum, morlet)

__all__ = [name for name in dir() if not name.startswith("_")]
