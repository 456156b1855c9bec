from dataclasses import dataclass

import numpy as np

from app.params import WAVE_STABILITY_BOUND
from app.utils.errors import StabilityError


@dataclass(frozen=True)
class WaveConfig:
    """
    Paramètres de l'intégration de d2psi/dt2 = alpha (psi_{j+1} - 2 psi_j + psi_{j-1}).

    Parameters:
    - alpha: raideur (> 0)
    - dt: pas de temps (> 0), avec sqrt(alpha) dt <= WAVE_STABILITY_BOUND
    - steps: nombre de pas (>= 1)
    - sample_every: période d'échantillonnage de la trajectoire, en pas
    """
    alpha: float
    dt: float
    steps: int
    sample_every: int = 1

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be an integer >= 1, got {self.steps}")
        if int(self.sample_every) != self.sample_every or self.sample_every < 1:
            raise ValueError(f"sample_every must be an integer >= 1, got {self.sample_every}")
        if self.courant > WAVE_STABILITY_BOUND:
            raise StabilityError(self.courant, WAVE_STABILITY_BOUND)

    @property
    def courant(self):
        return float(np.sqrt(self.alpha) * self.dt)
