import numpy as np

from app.model.AlgebraParams import AlgebraParams
from app.utils.errors import DimensionError, ParameterMismatchError


class LatticeField:
    """
    Valeurs discrètes psi_j d'un champ sur les n sites du réseau périodique (indices mod n).
    """

    def __init__(self, params: AlgebraParams, values) -> None:
        values = np.array(values, dtype=np.complex128)
        if values.shape != (params.n,):
            raise DimensionError(f"Expected {params.n} field values, got shape {values.shape}")
        values.setflags(write=False)
        self.params = params
        self.values = values

    @property
    def n(self):
        return self.params.n

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def _check(self, other):
        if other.params.n != self.params.n:
            raise ParameterMismatchError(self.params.n, other.params.n)

    def __add__(self, other):
        self._check(other)
        return LatticeField(self.params, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return LatticeField(self.params, self.values - other.values)

    def __mul__(self, scalar):
        return LatticeField(self.params, scalar * self.values)

    __rmul__ = __mul__

    def __repr__(self):
        return f"LatticeField(n={self.n}, norm={self.norm():.6g})"
