from dataclasses import dataclass


@dataclass(frozen=True)
class GaussianSpec:
    """
    Paquet gaussien enroulé sur le réseau périodique.

    Parameters:
    - center: centre en unités d'indice
    - width: largeur (> 0) en unités d'indice, écart-type de |psi|^2
    - momentum_shift: rampe de phase exp(2 pi i momentum_shift j / n), en cycles
    """
    center: float
    width: float
    momentum_shift: float = 0.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"Gaussian width must be > 0, got {self.width}")
