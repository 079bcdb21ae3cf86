import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nanoring import propagator
from nanoring.errors import NormDrift, PumpFailed, TruncationPressure
from nanoring.propagator import (evolve_fields, midpoint_fields, prepare_pump, propagate)
from nanoring.ring import (LaserPulse, PulseSchedule, RingConfig, WaveFunction, field_at,
                           level_energy)

from oracles import dense_reference

RING = RingConfig(2.7, 64)
BASE = LaserPulse(1e14, 2.0, beta=45.0)


def off(duration_oc=8.0):
    return PulseSchedule.single(BASE.replace(intensity=0.0, duration_oc=duration_oc, ramp_oc=0.0))


def test_ground_state_is_stationary():
    traj = propagate(WaveFunction.basis(0, RING.m_max), off(), RING, 256, 16)
    assert np.allclose(np.abs(traj.states[-1]), np.abs(WaveFunction.basis(0, 64).coefficients))
    assert np.all(traj.lz == 0.0)


def test_free_phase():
    traj = propagate(WaveFunction.basis(1, RING.m_max), off(), RING, 256, 16)
    a1 = traj.states[:, RING.index(1)]
    expect = np.exp(-1j * level_energy(1, RING) * traj.times)
    assert np.max(np.abs(a1 - expect)) < 1e-12


def test_sampling_grid():
    traj = propagate(WaveFunction.basis(0, RING.m_max), off(4.0), RING, 512, 32)
    assert traj.times.size == 4 * 32 + 1
    assert np.allclose(np.diff(traj.times), traj.dt_sample, rtol=0, atol=1e-9)
    assert traj.duration == pytest.approx(4 * BASE.period)


def test_preconditions():
    psi = WaveFunction.basis(0, RING.m_max)
    with pytest.raises(ValueError):
        propagate(psi, off(), RING, 128, 16)
    with pytest.raises(ValueError):
        propagate(psi, off(), RING, 512, 48)
    with pytest.raises(ValueError):
        propagate(WaveFunction(2 * psi.coefficients), off(), RING, 512, 16)
    with pytest.raises(ValueError):
        propagate(WaveFunction.basis(0, 3), off(), RING, 512, 16)


def test_norm_drift_is_reported(monkeypatch):
    real = propagator.evolve_fields

    def leaky(*args):
        out = real(*args)
        out[-1] *= 1.001
        return out

    monkeypatch.setattr(propagator, "evolve_fields", leaky)
    with pytest.raises(NormDrift):
        propagate(WaveFunction.basis(0, RING.m_max), off(2.0), RING, 256, 16)


def test_truncation_pressure():
    with pytest.raises(TruncationPressure):
        propagate(WaveFunction.basis(0, 3), PulseSchedule.single(BASE), RingConfig(2.7, 3))


def test_small_basis_allowed_when_unchecked():
    traj = propagate(WaveFunction.basis(0, 3), PulseSchedule.single(BASE), RingConfig(2.7, 3),
                     check_truncation=False)
    assert np.max(np.abs(traj.norm - 1)) < 1e-10


@pytest.fixture(scope="module")
def circular():
    return propagate(WaveFunction.basis(0, RING.m_max), PulseSchedule.single(BASE), RING)


def test_circular_drive_leaves_positive_lz(circular):
    assert circular.final_lz > 0
    assert np.max(np.abs(circular.norm - 1)) < 1e-10


def test_helicity_reverses_lz(circular):
    flipped = propagate(WaveFunction.basis(0, RING.m_max),
                        PulseSchedule.single(BASE.replace(helicity=-1)), RING)
    assert np.allclose(flipped.lz, -circular.lz, atol=1e-12)


@pytest.mark.parametrize("beta", [0.0, 90.0])
def test_linear_drive_mirror_symmetry(beta):
    traj = propagate(WaveFunction.basis(0, RING.m_max),
                     PulseSchedule.single(BASE.replace(beta=beta)), RING)
    amp = np.abs(traj.states)
    assert np.max(np.abs(amp - amp[:, ::-1])) < 1e-10
    assert np.max(np.abs(traj.lz)) < 1e-10


def test_step_halving(circular):
    fine = propagate(WaveFunction.basis(0, RING.m_max), PulseSchedule.single(BASE), RING,
                     steps_per_oc=4096)
    deficit = 1 - abs(np.vdot(circular.states[-1], fine.states[-1])) ** 2
    assert deficit < 1e-8


@settings(max_examples=8, deadline=None)
@given(st.floats(0.0, 90.0), st.sampled_from([1, -1]))
def test_time_reversal(beta, helicity):
    # K a_m = conj(a_-m) commutes with H(t); run the reversed field back
    pulse = BASE.replace(beta=beta, helicity=helicity, duration_oc=4.0, ramp_oc=1.0)
    ex, ey, dt = midpoint_fields(PulseSchedule.single(pulse), 1024)
    psi0 = WaveFunction.basis(0, RING.m_max).coefficients
    fwd = evolve_fields(psi0, RING, ex, ey, dt, ex.size)[-1]
    back = evolve_fields(np.conj(fwd[::-1]), RING, ex[::-1], ey[::-1], dt, ex.size)[-1]
    assert 1 - abs(np.vdot(psi0, np.conj(back[::-1]))) ** 2 < 1e-5


def test_matches_dense_reference():
    pulse = LaserPulse(1e14, 2.0, beta=30.0, duration_oc=5.0, ramp_oc=1.0)
    ring = RingConfig(2.7, 2)
    times_oc, pops = dense_reference(pulse, ring, sub_steps_per_oc=4000,
                                     checkpoints_oc=np.arange(0.5, 5.01, 0.5))
    traj = propagate(WaveFunction.basis(0, 2), PulseSchedule.single(pulse), ring,
                     steps_per_oc=8192, check_truncation=False)
    idx = np.rint(times_oc * 64).astype(int)
    assert np.max(np.abs(np.abs(traj.states[idx]) ** 2 - pops)) < 2e-6


def test_schedule_field_matches_pulse():
    sched = PulseSchedule.single(BASE)
    ex, ey, dt = midpoint_fields(sched, 256)
    fx, fy = field_at((np.arange(ex.size) + 0.5) * dt, BASE)
    assert np.array_equal(ex, fx) and np.array_equal(ey, fy)


@pytest.mark.parametrize("sign", [1, -1])
def test_prepare_pump_sign(sign):
    state = prepare_pump(RING, 1e14, 2.0, sign)
    lz = float(np.sum(state.populations() * state.m))
    assert np.sign(lz) == sign


def test_prepare_pump_fails_without_light():
    with pytest.raises(PumpFailed):
        prepare_pump(RING, 0.0, 2.0, 1)
    with pytest.raises(ValueError):
        prepare_pump(RING, 1e14, 2.0, 0)
