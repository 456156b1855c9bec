class WeylError(Exception):
    """Base class of every error raised by the algebra and experiment code."""


class ParameterMismatchError(WeylError, ValueError):
    def __init__(self, n_left, n_right):
        super().__init__(f"Operands belong to different algebras (n={n_left} vs n={n_right})")
        self.n_left = n_left
        self.n_right = n_right


class IndexRangeError(WeylError, IndexError):
    def __init__(self, name, value, n):
        super().__init__(f"Index {name}={value} out of range 0 <= {name} < {n}")
        self.value = value
        self.n = n


class DimensionError(WeylError, ValueError):
    pass


class SingularElementError(WeylError, ArithmeticError):
    def __init__(self, condition, limit):
        super().__init__(f"Element is singular or ill-conditioned (cond={condition:.3e} > {limit:.1e})")
        self.condition = condition


class NotInIdealError(WeylError, ValueError):
    def __init__(self, residual):
        super().__init__(f"Element is not in the left ideal of eps_00 (residual {residual:.3e})")
        self.residual = residual


class NonHermitianError(WeylError, ValueError):
    def __init__(self, deviation):
        super().__init__(f"Operator is not hermitian (deviation {deviation:.3e})")
        self.deviation = deviation


class NonUnitaryError(WeylError, ValueError):
    def __init__(self, deviation):
        super().__init__(f"Matrix is not unitary (deviation {deviation:.3e})")
        self.deviation = deviation


class NormalizationError(WeylError, ValueError):
    def __init__(self, deviation):
        super().__init__(f"State is not normalized (|norm^2 - 1| = {deviation:.3e})")
        self.deviation = deviation


class StabilityError(WeylError, ValueError):
    def __init__(self, value, bound):
        super().__init__(f"Leapfrog unstable: sqrt(alpha)*dt = {value:.4g} exceeds the bound {bound}")
        self.value = value
        self.bound = bound


class SpectrumError(WeylError, ValueError):
    pass


class UsageError(WeylError):
    pass
