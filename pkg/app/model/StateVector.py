import numpy as np

from app.model.AlgebraParams import AlgebraParams
from app.utils.errors import DimensionError, NormalizationError, ParameterMismatchError

BASES = ("position", "momentum")


class StateVector:
    """
    Ket de dimension n : les coefficients d'un élément de l'idéal à gauche minimal
    sur la base I_L^(0)(i) = |i>. basis indique la base dans laquelle sont exprimées les amplitudes.
    """

    def __init__(self, params: AlgebraParams, amplitudes, basis: str = "position") -> None:
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}, got '{basis}'")
        amplitudes = np.array(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (params.n,):
            raise DimensionError(f"Expected {params.n} amplitudes, got shape {amplitudes.shape}")
        amplitudes.setflags(write=False)
        self.params = params
        self.amplitudes = amplitudes
        self.basis = basis

    @property
    def n(self):
        return self.params.n

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self):
        norm = self.norm()
        if norm == 0.0:
            raise NormalizationError(1.0)
        return StateVector(self.params, self.amplitudes / norm, self.basis)

    def check_normalized(self, tol=None):
        tol = self.params.tolerance if tol is None else tol
        deviation = abs(self.norm() ** 2 - 1.0)
        if deviation > tol:
            raise NormalizationError(deviation)

    def to_position(self):
        """Amplitudes sur les kets |x_i>, via |P_j> = (1/sqrt n) sum_i omega^{ij} |x_i>."""
        if self.basis == "position":
            return self
        return StateVector(self.params, np.sqrt(self.n) * np.fft.ifft(self.amplitudes), "position")

    def to_momentum(self):
        if self.basis == "momentum":
            return self
        return StateVector(self.params, np.fft.fft(self.amplitudes) / np.sqrt(self.n), "momentum")

    def inner(self, other) -> complex:
        """<self|other>, calculé dans la base position."""
        if other.params.n != self.params.n:
            raise ParameterMismatchError(self.params.n, other.params.n)
        return complex(np.vdot(self.to_position().amplitudes, other.to_position().amplitudes))

    def __repr__(self):
        return f"StateVector(n={self.n}, basis={self.basis}, norm={self.norm():.6g})"
