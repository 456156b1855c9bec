from dataclasses import dataclass
from functools import cached_property

import numpy as np

from app.params import TOLERANCE_SCALE


@dataclass(frozen=True)
class AlgebraParams:
    """
    Ordre n de l'algèbre C_2^n et racine primitive omega = exp(2 pi i / n).

    Parameters:
    - n: ordre de l'algèbre (n >= 2)
    """
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"The order of the algebra must be an integer >= 2, got n={self.n}")
        object.__setattr__(self, "n", int(self.n))

    @cached_property
    def omega(self):
        return np.exp(2j * np.pi / self.n)

    @property
    def tolerance(self):
        # tau(n), absolute per coefficient / entry
        return TOLERANCE_SCALE * self.n

    def omega_power(self, k):
        """omega^k with the exponent reduced mod n, so omega^n is exactly 1."""
        return np.exp(2j * np.pi * (np.mod(k, self.n)) / self.n)
