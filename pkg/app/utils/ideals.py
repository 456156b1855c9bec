import logging

import numpy as np
import scipy.linalg

from app.model.AlgebraElement import AlgebraElement
from app.model.AlgebraParams import AlgebraParams
from app.model.IdempotentSet import IdempotentSet
from app.params import CONDITION_LIMIT
from app.utils.algebra import from_matrix, multiply, to_matrix, trace
from app.utils.errors import IndexRangeError, SingularElementError

log = logging.getLogger(__name__)


def _check_index(params, name, value):
    if not 0 <= value < params.n:
        raise IndexRangeError(name, value, params.n)


def primitive_idempotent(params: AlgebraParams, i: int) -> AlgebraElement:
    """
    Idempotent primitif eps_ii = (1/n) sum_k omega^{-ik} e_k^0.

    Parameters:
    - params: AlgebraParams
    - i: index du point généralisé, 0 <= i < n

    Return:
    - AlgebraElement dont l'image est le projecteur de rang 1 sur le vecteur de base i
    """
    _check_index(params, "i", i)
    coeffs = np.zeros((params.n, params.n), dtype=np.complex128)
    coeffs[0, :] = params.omega_power(-i * np.arange(params.n)) / params.n
    return AlgebraElement(params, coeffs)


def matrix_unit(params: AlgebraParams, i: int, j: int) -> AlgebraElement:
    """
    Unité matricielle eps_ij = (1/n) sum_r omega^{-jr} e_r^{j-i}.
    Elle vérifie eps_ik eps_jm = delta_kj eps_im.
    """
    _check_index(params, "i", i)
    _check_index(params, "j", j)
    coeffs = np.zeros((params.n, params.n), dtype=np.complex128)
    coeffs[(j - i) % params.n, :] = params.omega_power(-j * np.arange(params.n)) / params.n
    return AlgebraElement(params, coeffs)


def left_ideal_basis(params: AlgebraParams, i: int) -> AlgebraElement:
    """I_L^(0)(i) = (1/n) sum_k e_k^{-i}, qui coïncide avec eps_i0."""
    _check_index(params, "i", i)
    coeffs = np.zeros((params.n, params.n), dtype=np.complex128)
    coeffs[(-i) % params.n, :] = 1.0 / params.n
    return AlgebraElement(params, coeffs)


def right_ideal_basis(params: AlgebraParams, j: int) -> AlgebraElement:
    """I_R^(0)(j) = (1/n) sum_k omega^{jk} e_{-k}^j, qui coïncide avec eps_0j."""
    _check_index(params, "j", j)
    n = params.n
    k = np.arange(n)
    coeffs = np.zeros((n, n), dtype=np.complex128)
    coeffs[j, (-k) % n] = params.omega_power(j * k) / n
    return AlgebraElement(params, coeffs)


def canonical_set(params: AlgebraParams) -> IdempotentSet:
    return IdempotentSet(params, [primitive_idempotent(params, i) for i in range(params.n)])


def condition_number(S: AlgebraElement) -> float:
    return float(np.linalg.cond(to_matrix(S).matrix))


def inverse(S: AlgebraElement) -> AlgebraElement:
    """
    Inverse calculé sur l'image matricielle (résolution contre l'identité).

    Raise:
    - SingularElementError si la matrice est singulière ou si cond(S) > CONDITION_LIMIT
    """
    M = to_matrix(S).matrix
    cond = float(np.linalg.cond(M))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularElementError(cond, CONDITION_LIMIT)
    if cond > 1e8:
        log.warning("Inverting an ill-conditioned element (cond=%.3e)", cond)
    return from_matrix(scipy.linalg.solve(M, np.eye(S.params.n)), S.params)


def conjugate_set(idempotents: IdempotentSet, S: AlgebraElement) -> IdempotentSet:
    """
    Automorphisme intérieur eps'_jj = S eps_jj S^{-1}.

    Parameters:
    - idempotents: IdempotentSet de départ
    - S: élément inversible de la même algèbre

    Return:
    - IdempotentSet transporté, qui garde idempotence, orthogonalité et résolution de l'identité
    """
    S_inv = inverse(S)
    log.debug("Conjugating an idempotent set of order %d (cond=%.3e)", S.params.n, condition_number(S))
    return IdempotentSet(idempotents.params,
                         [multiply(multiply(S, e), S_inv) for e in idempotents])


def overlap_matrix(new: IdempotentSet, old: IdempotentSet) -> np.ndarray:
    """
    O_jk = Re trace(eps'_jj eps_kk) ; la somme de chaque ligne et de chaque colonne vaut 1.
    """
    new_m = new.matrices()
    old_m = old.matrices()
    return np.real(np.einsum("jab,kba->jk", new_m, old_m))


def explosion_index(new: IdempotentSet, old: IdempotentSet) -> float:
    """1 - moyenne_j max_k O_jk : 0 pour une simple permutation des points."""
    overlap = overlap_matrix(new, old)
    return float(1.0 - np.mean(np.max(overlap, axis=1)))


def is_primitive(A: AlgebraElement, tol: float = None) -> bool:
    """Primitivité : trace 1 et image matricielle de rang 1."""
    tol = A.params.tolerance if tol is None else tol
    singular_values = np.linalg.svd(to_matrix(A).matrix, compute_uv=False)
    rank = int(np.sum(singular_values > np.sqrt(tol)))
    return abs(trace(A) - 1.0) <= tol and rank == 1
