import numbers

import numpy as np

from app.model.AlgebraParams import AlgebraParams
from app.utils.errors import DimensionError, ParameterMismatchError


class AlgebraElement:
    """
    Élément A = sum_{ab} A_ab e_b^a de C_2^n, stocké comme une table n x n de coefficients.

    La ligne est l'exposant a du shift e_0^1, la colonne l'exposant b du clock e_1^0.
    Les éléments sont immuables : la table est copiée et verrouillée en écriture.
    """

    __slots__ = ("params", "coeffs")
    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, params: AlgebraParams, coeffs) -> None:
        coeffs = np.array(coeffs, dtype=np.complex128)
        if coeffs.shape != (params.n, params.n):
            raise DimensionError(f"Expected a {params.n}x{params.n} coefficient table, got shape {coeffs.shape}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @property
    def n(self):
        return self.params.n

    def _check_same(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.params.n != self.params.n:
            raise ParameterMismatchError(self.params.n, other.params.n)
        return None

    def __add__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.params, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return AlgebraElement(self.params, self.coeffs - other.coeffs)

    def __neg__(self):
        return AlgebraElement(self.params, -self.coeffs)

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        return AlgebraElement(self.params, complex(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __matmul__(self, other):
        # Algebra product
        from app.utils.algebra import multiply
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return multiply(self, other)

    def __eq__(self, other):
        """Égalité coefficient par coefficient à tau(n) près."""
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.params.n != other.params.n:
            return False
        if np.array_equal(self.coeffs, other.coeffs):
            return True
        return float(np.max(np.abs(self.coeffs - other.coeffs))) <= self.params.tolerance

    __hash__ = None

    def __repr__(self):
        nonzero = np.argwhere(np.abs(self.coeffs) > self.params.tolerance)
        terms = [f"({self.coeffs[a, b]:.4g}) e_{b}^{a}" for a, b in nonzero[:6]]
        suffix = " + ..." if len(nonzero) > 6 else ""
        return f"AlgebraElement(n={self.n}: {' + '.join(terms) or '0'}{suffix})"
