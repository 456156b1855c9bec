from dataclasses import dataclass, field

import numpy as np


@dataclass
class LocalityReport:
    """
    Localité d'un opérateur : part de la masse |M_ij|^2 dans la bande cyclique |i - j| <= band_radius.
    """
    band_energy: float
    delocalization_index: float
    spectrum: np.ndarray = field(repr=False)
    band_radius: int = 1

    def to_dict(self) -> dict:
        return {
            "band_energy": float(self.band_energy),
            "delocalization_index": float(self.delocalization_index),
            "band_radius": int(self.band_radius),
            "spectrum": [[float(z.real), float(z.imag)] for z in np.asarray(self.spectrum)],
        }
