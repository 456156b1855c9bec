import numpy as np

from app.model.AlgebraParams import AlgebraParams
from app.utils.errors import ParameterMismatchError


class IdempotentSet:
    """
    Famille ordonnée eps_00 ... eps_{n-1,n-1} résolvant l'identité.
    """

    def __init__(self, params: AlgebraParams, elements) -> None:
        elements = tuple(elements)
        if len(elements) != params.n:
            raise ValueError(f"An idempotent set of C_2^{params.n} has {params.n} members, got {len(elements)}")
        for element in elements:
            if element.params.n != params.n:
                raise ParameterMismatchError(params.n, element.params.n)
        self.params = params
        self.elements = elements

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    def matrices(self):
        from app.utils.algebra import to_matrix
        return np.stack([to_matrix(element).matrix for element in self.elements])

    def check_invariants(self):
        """
        Mesure l'écart maximal à chaque invariant de la famille.

        Return:
        - dictionnaire {invariant: écart maximal}; rank est le nombre de membres de rang != 1
        """
        from app.utils.algebra import identity, linear_combine, max_deviation, multiply, trace, zero
        n = self.params.n
        tol = self.params.tolerance
        idempotency = max(max_deviation(multiply(e, e), e) for e in self.elements)
        orthogonality = 0.0
        z = zero(self.params)
        for i in range(n):
            for j in range(n):
                if i != j:
                    orthogonality = max(orthogonality,
                                        max_deviation(multiply(self.elements[i], self.elements[j]), z))
        resolution = max_deviation(linear_combine([(1.0, e) for e in self.elements]), identity(self.params))
        traces = max(abs(trace(e) - 1.0) for e in self.elements)
        singular_values = np.linalg.svd(self.matrices(), compute_uv=False)
        rank_defects = int(np.sum(np.sum(singular_values > np.sqrt(tol), axis=1) != 1))
        return {
            "idempotency": idempotency,
            "orthogonality": orthogonality,
            "resolution": resolution,
            "trace": traces,
            "rank": rank_defects,
        }

    def satisfies_invariants(self, tol=None):
        tol = self.params.tolerance if tol is None else tol
        report = self.check_invariants()
        return report["rank"] == 0 and all(report[k] <= tol for k in ("idempotency", "orthogonality",
                                                                      "resolution", "trace"))
