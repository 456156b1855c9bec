import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment
from scipy.stats import unitary_group

from app.utils.errors import NonUnitaryError


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Matrice unitaire n x n tirée selon la mesure de Haar."""
    return unitary_group.rvs(n, random_state=rng)


def unitarity_deviation(C: np.ndarray) -> float:
    C = np.asarray(C, dtype=np.complex128)
    return float(np.max(np.abs(C.conj().T @ C - np.eye(C.shape[0]))))


def hermiticity_deviation(M: np.ndarray) -> float:
    return float(np.max(np.abs(M - M.conj().T)))


def check_unitary(C: np.ndarray, tol: float) -> np.ndarray:
    C = np.asarray(C, dtype=np.complex128)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise NonUnitaryError(float("inf"))
    deviation = unitarity_deviation(C)
    if deviation > tol:
        raise NonUnitaryError(deviation)
    return C


def canonical_spectrum(values, decimals: int = 9) -> np.ndarray:
    """
    Ordre canonique d'un spectre : croissant en partie réelle puis en partie imaginaire,
    comparées après arrondi pour que les valeurs égales à l'arrondi près gardent un ordre stable.
    """
    values = np.asarray(values, dtype=np.complex128)
    order = np.lexsort((np.round(values.imag, decimals), np.round(values.real, decimals)))
    return values[order]


def spectrum(M: np.ndarray, hermitian: bool = False) -> np.ndarray:
    if hermitian:
        return scipy.linalg.eigvalsh(M).astype(np.complex128)
    return canonical_spectrum(scipy.linalg.eigvals(M))


def spectrum_deviation(first, second) -> float:
    """Écart maximal entre deux spectres après appariement optimal des valeurs propres."""
    first = np.asarray(first, dtype=np.complex128)
    second = np.asarray(second, dtype=np.complex128)
    if first.shape != second.shape:
        return float("inf")
    cost = np.abs(first[:, None] - second[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))


def canonicalize_phase(vectors: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """
    Fixe la phase de chaque colonne : la première composante de module maximal
    (à tol près) devient réelle positive.
    """
    vectors = np.array(vectors, dtype=np.complex128)
    for col in range(vectors.shape[1]):
        magnitudes = np.abs(vectors[:, col])
        pivot = np.flatnonzero(magnitudes >= magnitudes.max() - tol)[0]
        vectors[:, col] *= np.conj(vectors[pivot, col]) / magnitudes[pivot]
    return vectors
