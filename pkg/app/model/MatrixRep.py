from dataclasses import dataclass, field

import numpy as np

from app.model.AlgebraParams import AlgebraParams
from app.utils.errors import DimensionError


@dataclass(frozen=True)
class MatrixRep:
    """Image n x n d'un élément sous la représentation clock/shift."""
    params: AlgebraParams
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.shape != (self.params.n, self.params.n):
            raise DimensionError(f"Expected a {self.params.n}x{self.params.n} matrix, got shape {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def n(self):
        return self.params.n

    def __matmul__(self, other):
        if isinstance(other, MatrixRep):
            return MatrixRep(self.params, self.matrix @ other.matrix)
        return self.matrix @ other
