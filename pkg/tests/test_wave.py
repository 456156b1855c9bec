import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.model.AlgebraParams import AlgebraParams
from app.model.Config import Config
from app.model.LatticeField import LatticeField
from app.model.WaveConfig import WaveConfig
from app.params import DISPERSION_TOLERANCE, WAVE_DRIFT_LIMIT
from app.utils.errors import ParameterMismatchError
from app.utils.locality import laplacian
from app.utils.wave import (dispersion_relation, energy_drift, measure_mode_frequency, periodic_laplacian,
                            random_smooth_field, shadow_energy, verlet_frequency, wave_energy, wave_evolve)

config = Config()


def _cos_mode(params, k):
    return LatticeField(params, np.cos(2 * np.pi * k * np.arange(params.n) / params.n))


def _zero(params):
    return LatticeField(params, np.zeros(params.n))


# LAPLACIEN PÉRIODIQUE
def test_periodic_laplacian_matches_neighbour_operators():
    params = AlgebraParams(9)
    f = LatticeField(params, np.random.default_rng(config.seed).standard_normal(9))
    assert_allclose(periodic_laplacian(f.values), laplacian(f).values, atol=params.tolerance)


# ÉVOLUTION
def test_zero_field_stays_at_rest():
    params = AlgebraParams(16)
    trajectory = wave_evolve(_zero(params), _zero(params), WaveConfig(alpha=1.0, dt=0.1, steps=20))
    assert trajectory.fields.shape == (21, 16)
    assert not np.any(trajectory.fields)
    assert energy_drift(trajectory)["shadow_drift"] == 0.0


def test_sampling():
    params = AlgebraParams(8)
    cfg = WaveConfig(alpha=1.0, dt=0.1, steps=10, sample_every=5)
    trajectory = wave_evolve(_cos_mode(params, 1), _zero(params), cfg)
    assert list(trajectory.steps) == [0, 5, 10]
    assert_allclose(trajectory.times, [0.0, 0.5, 1.0])
    frame = trajectory.to_frame()
    assert list(frame.columns) == ["step", "site", "re", "im"]
    assert len(frame) == 3 * 8


def test_mismatched_fields():
    with pytest.raises(ParameterMismatchError):
        wave_evolve(_zero(AlgebraParams(4)), _zero(AlgebraParams(5)), WaveConfig(alpha=1.0, dt=0.1, steps=1))


# RELATION DE DISPERSION
def test_dispersion_relation():
    assert dispersion_relation(16, 32, 1.0) == pytest.approx(2.0)
    assert dispersion_relation(8, 16, 4.0) == pytest.approx(4.0)
    assert dispersion_relation(0, 16, 1.0) == 0.0
    assert verlet_frequency(1, 32, 1.0, 1e-4) == pytest.approx(dispersion_relation(1, 32, 1.0), rel=1e-8)


@pytest.mark.parametrize("dt", [1e-8, 1e-6, 1e-4, 0.05, 0.5])
def test_verlet_frequency_without_cancellation(dt):
    omega = dispersion_relation(1, 64, 1.0)
    discrete = verlet_frequency(1, 64, 1.0, dt)
    # Omega_h - Omega = Omega^3 dt^2 / 24 + O(dt^4)
    assert discrete - omega == pytest.approx(omega ** 3 * dt ** 2 / 24, rel=0.05, abs=1e-15)
    assert np.cos(discrete * dt) == pytest.approx(1 - (omega * dt) ** 2 / 2, abs=1e-15)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_mode_frequencies(k):
    params = AlgebraParams(32)
    cfg = WaveConfig(alpha=config.alpha, dt=config.dt, steps=1000)
    trajectory = wave_evolve(_cos_mode(params, k), _zero(params), cfg)
    measured = measure_mode_frequency(trajectory, k)
    assert measured == pytest.approx(verlet_frequency(k, 32, cfg.alpha, cfg.dt), abs=1e-8)
    expected = dispersion_relation(k, 32, cfg.alpha)
    assert abs(measured - expected) / expected < DISPERSION_TOLERANCE


def test_small_step_frequency_keeps_precision():
    params = AlgebraParams(32)
    cfg = WaveConfig(alpha=1.0, dt=1e-3, steps=2000)
    measured = measure_mode_frequency(wave_evolve(_cos_mode(params, 1), _zero(params), cfg), 1)
    assert measured == pytest.approx(verlet_frequency(1, 32, 1.0, 1e-3), rel=1e-6)
    assert measured == pytest.approx(dispersion_relation(1, 32, 1.0), rel=1e-6)


def test_measure_frequency_errors():
    params = AlgebraParams(8)
    short = wave_evolve(_cos_mode(params, 1), _zero(params), WaveConfig(alpha=1.0, dt=0.1, steps=1))
    with pytest.raises(ValueError):
        measure_mode_frequency(short, 1)
    rest = wave_evolve(_zero(params), _zero(params), WaveConfig(alpha=1.0, dt=0.1, steps=5))
    with pytest.raises(ValueError):
        measure_mode_frequency(rest, 1)


# CONSERVATION DE L'ÉNERGIE
def test_energy_of_static_mode():
    params = AlgebraParams(8)
    f = _cos_mode(params, 2).values
    assert wave_energy(f, np.zeros(8), 1.0) == pytest.approx(0.5 * np.sum(np.abs(np.roll(f, -1) - f) ** 2))
    assert shadow_energy(f, np.zeros(8), 1.0, 0.0) == pytest.approx(wave_energy(f, np.zeros(8), 1.0))


def test_long_run_energy_drift():
    params = AlgebraParams(config.wave_n)
    rng = np.random.default_rng(config.seed)
    cfg = WaveConfig(alpha=config.alpha, dt=config.dt, steps=config.steps)
    trajectory = wave_evolve(random_smooth_field(params, rng), _zero(params), cfg)
    drift = energy_drift(trajectory)
    assert drift["shadow_drift"] < WAVE_DRIFT_LIMIT
    assert drift["energy_oscillation"] < 1e-2
    assert drift["initial_energy"] > 0
