import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from app.model.AlgebraParams import AlgebraParams
from app.model.LatticeField import LatticeField
from app.model.WaveConfig import WaveConfig
from app.utils.errors import ParameterMismatchError

log = logging.getLogger(__name__)


def periodic_laplacian(values: np.ndarray) -> np.ndarray:
    """psi_{j+1} - 2 psi_j + psi_{j-1} avec bords périodiques."""
    return np.roll(values, -1) - 2 * values + np.roll(values, 1)


@dataclass
class WaveTrajectory:
    """Échantillons (pas, psi, dpsi/dt) d'une intégration de l'équation d'onde."""
    params: AlgebraParams
    cfg: WaveConfig
    steps: np.ndarray = field(repr=False)
    fields: np.ndarray = field(repr=False)
    velocities: np.ndarray = field(repr=False)

    @property
    def times(self):
        return self.steps * self.cfg.dt

    def energies(self) -> np.ndarray:
        return np.array([wave_energy(f, v, self.cfg.alpha) for f, v in zip(self.fields, self.velocities)])

    def shadow_energies(self) -> np.ndarray:
        return np.array([shadow_energy(f, v, self.cfg.alpha, self.cfg.dt)
                         for f, v in zip(self.fields, self.velocities)])

    def to_frame(self) -> pd.DataFrame:
        """Format long step,site,re,im."""
        n = self.params.n
        return pd.DataFrame({
            "step": np.repeat(self.steps, n),
            "site": np.tile(np.arange(n), len(self.steps)),
            "re": self.fields.real.ravel(),
            "im": self.fields.imag.ravel(),
        })


def wave_energy(f, v, alpha: float) -> float:
    """E = sum_j |v_j|^2 / 2 + (alpha / 2) |psi_{j+1} - psi_j|^2."""
    f = np.asarray(f)
    v = np.asarray(v)
    return float(0.5 * np.sum(np.abs(v) ** 2) + 0.5 * alpha * np.sum(np.abs(np.roll(f, -1) - f) ** 2))


def shadow_energy(f, v, alpha: float, dt: float) -> float:
    """
    Forme quadratique conservée exactement par Verlet : E - (dt^2 / 8) ||K psi||^2 avec K = -alpha L.
    """
    f = np.asarray(f)
    Kf = -alpha * periodic_laplacian(f)
    return wave_energy(f, v, alpha) - dt ** 2 / 8 * float(np.sum(np.abs(Kf) ** 2))


def wave_evolve(f0: LatticeField, v0: LatticeField, cfg: WaveConfig) -> WaveTrajectory:
    """
    Intègre d2psi/dt2 = alpha (psi_{j+1} - 2 psi_j + psi_{j-1}) par Verlet en vitesse.

    Parameters:
    - f0, v0: champ et vitesse initiaux (même n)
    - cfg: WaveConfig, la borne de stabilité est vérifiée à sa construction

    Return:
    - WaveTrajectory échantillonnée tous les cfg.sample_every pas, pas 0 compris
    """
    if f0.params.n != v0.params.n:
        raise ParameterMismatchError(f0.params.n, v0.params.n)
    u = np.array(f0.values)
    ut = np.array(v0.values)
    steps, fields, velocities = [0], [u.copy()], [ut.copy()]

    acc = cfg.alpha * periodic_laplacian(u)
    for step in range(1, cfg.steps + 1):
        # Velocity Verlet
        u = u + cfg.dt * ut + 0.5 * cfg.dt ** 2 * acc
        acc_new = cfg.alpha * periodic_laplacian(u)
        ut = ut + 0.5 * cfg.dt * (acc + acc_new)
        acc = acc_new
        if step % cfg.sample_every == 0:
            steps.append(step)
            fields.append(u.copy())
            velocities.append(ut.copy())

    log.debug("Integrated %d steps at n=%d, courant %.3g", cfg.steps, f0.n, cfg.courant)
    return WaveTrajectory(f0.params, cfg, np.array(steps), np.array(fields), np.array(velocities))


def dispersion_relation(k: int, n: int, alpha: float) -> float:
    """Omega(k) = 2 sqrt(alpha) |sin(pi k / n)|."""
    return float(2 * np.sqrt(alpha) * abs(np.sin(np.pi * k / n)))


def verlet_frequency(k: int, n: int, alpha: float, dt: float) -> float:
    """
    Pulsation discrète du mode k sous Verlet : cos(Omega_h dt) = 1 - (Omega dt)^2 / 2,
    soit Omega_h = 2 arcsin(Omega dt / 2) / dt.
    """
    omega = dispersion_relation(k, n, alpha)
    return float(2 * np.arcsin(omega * dt / 2) / dt)


def measure_mode_frequency(trajectory: WaveTrajectory, k: int) -> float:
    """
    Pulsation du mode k ajustée sur toute la trajectoire par la récurrence à trois termes
    a_{t+1} + a_{t-1} = 2 cos(Omega s dt) a_t, s étant la période d'échantillonnage.
    """
    n = trajectory.params.n
    if len(trajectory.steps) < 3:
        raise ValueError("At least three samples are needed to measure a frequency")
    mode = np.exp(-2j * np.pi * k * np.arange(n) / n) / n
    a = trajectory.fields @ mode
    middle = a[1:-1]
    curvature = a[2:] - 2 * middle + a[:-2]
    norm = 2 * np.sum(np.abs(middle) ** 2)
    if norm == 0:
        raise ValueError(f"Mode {k} is absent from the trajectory")
    # 1 - cos(theta) from the second difference, sin(theta / 2) = sqrt((1 - cos theta) / 2)
    one_minus_c = -np.real(np.vdot(middle, curvature)) / norm
    theta = 2 * np.arcsin(np.sqrt(np.clip(one_minus_c / 2, 0.0, 1.0)))
    spacing = trajectory.cfg.sample_every * trajectory.cfg.dt
    return float(theta / spacing)


def random_smooth_field(params: AlgebraParams, rng: np.random.Generator, modes: int = 4) -> LatticeField:
    """Champ réel, somme des modes 1..modes à coefficients gaussiens, normalisé."""
    j = np.arange(params.n)
    values = np.zeros(params.n)
    for k in range(1, modes + 1):
        a, b = rng.standard_normal(2)
        values += a * np.cos(2 * np.pi * k * j / params.n) + b * np.sin(2 * np.pi * k * j / params.n)
    return LatticeField(params, values / np.linalg.norm(values))


def energy_drift(trajectory: WaveTrajectory) -> dict:
    """
    Dérive relative de l'énergie fantôme (conservée par Verlet) et oscillation relative de E.
    """
    shadow = trajectory.shadow_energies()
    plain = trajectory.energies()
    scale = abs(shadow[0]) if shadow[0] != 0 else 1.0
    plain_scale = abs(plain[0]) if plain[0] != 0 else 1.0
    return {
        "shadow_drift": float(np.max(np.abs(shadow - shadow[0])) / scale),
        "energy_oscillation": float(np.max(np.abs(plain - plain[0])) / plain_scale),
        "initial_energy": float(plain[0]),
    }
