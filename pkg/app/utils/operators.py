import logging

import numpy as np
import scipy.linalg

from app.model.AlgebraElement import AlgebraElement
from app.model.AlgebraParams import AlgebraParams
from app.model.IdempotentSet import IdempotentSet
from app.model.StateVector import StateVector
from app.params import MOMENTUM_EXP_SIGN, POSITION_EXP_SIGN
from app.utils.algebra import basis_element, from_matrix, max_deviation, multiply, to_matrix
from app.utils.errors import NotInIdealError
from app.utils.ideals import _check_index, primitive_idempotent
from app.utils.linalg import hermiticity_deviation, spectrum as matrix_spectrum

log = logging.getLogger(__name__)


def position_operator(params: AlgebraParams) -> AlgebraElement:
    """
    X = (1/n) sum_{jk} j omega^{-jk} e_k^0, i.e. X = sum_j j eps_jj.

    Return:
    - AlgebraElement hermitien d'image diag(0, 1, ..., n-1)
    """
    coeffs = np.zeros((params.n, params.n), dtype=np.complex128)
    coeffs[0, :] = np.fft.fft(np.arange(params.n)) / params.n
    return AlgebraElement(params, coeffs)


def momentum_operator(params: AlgebraParams) -> AlgebraElement:
    """
    P = X' = (1/n) sum_{jk} j omega^{-jk} e_0^k, i.e. P = sum_j j eps'_jj.
    """
    coeffs = np.zeros((params.n, params.n), dtype=np.complex128)
    coeffs[:, 0] = np.fft.fft(np.arange(params.n)) / params.n
    return AlgebraElement(params, coeffs)


def translation_position(params: AlgebraParams, a: int = 1) -> AlgebraElement:
    """T^a = e_0^{-a} : |j> -> |j+a>."""
    return basis_element(params, -a, 0)


def translation_momentum(params: AlgebraParams, b: int = 1) -> AlgebraElement:
    """T'^b = e_b^0 : |P_j> -> |P_{j+b}>."""
    return basis_element(params, 0, b)


def dual_idempotent(params: AlgebraParams, j: int) -> AlgebraElement:
    """
    eps'_jj = e_j^0 eps'_00 e_{-j}^0 avec eps'_00 = (1/n) sum_k e_0^k.

    La conjugaison par e_j^0 multiplie e_0^k par omega^{-jk}, d'où eps'_jj = (1/n) sum_k omega^{-jk} e_0^k.
    """
    _check_index(params, "j", j)
    coeffs = np.zeros((params.n, params.n), dtype=np.complex128)
    coeffs[:, 0] = params.omega_power(-j * np.arange(params.n)) / params.n
    return AlgebraElement(params, coeffs)


def dual_set(params: AlgebraParams) -> IdempotentSet:
    return IdempotentSet(params, [dual_idempotent(params, j) for j in range(params.n)])


def dft_matrix(n: int) -> np.ndarray:
    """F_ij = omega^{ij} / sqrt(n)."""
    idx = np.arange(n)
    return np.exp(2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n)


def duality_map_dft(params: AlgebraParams) -> AlgebraElement:
    """
    Élément unitaire F d'image la TFD normalisée ; F eps_jj F^{-1} = eps'_jj.
    """
    return from_matrix(dft_matrix(params.n), params)


def dual_matrix_unit(params: AlgebraParams, j: int, m: int) -> AlgebraElement:
    """eps'_jm = F eps_jm F^{-1} = |P_j><P_m|."""
    _check_index(params, "j", j)
    _check_index(params, "m", m)
    F = dft_matrix(params.n)
    return from_matrix(np.outer(F[:, j], F[:, m].conj()), params)


def duality_map_literal(params: AlgebraParams) -> AlgebraElement:
    """Z = n^{-3/2} sum_{ijk} omega^{j(i-k)} e_k^{j-i}, évalué littéralement."""
    n = params.n
    idx = np.arange(n)
    coeffs = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        # rows a = j - i, columns k
        phases = params.omega_power(j * (idx[:, None] - idx[None, :]))  # [i, k]
        np.add.at(coeffs, (j - idx) % n, phases)
    return AlgebraElement(params, coeffs / n ** 1.5)


def _scalar_fit(target, reference):
    c = np.vdot(reference, target) / np.vdot(reference, reference)
    return complex(c), float(np.max(np.abs(target - c * reference)))


def duality_audit(params: AlgebraParams) -> dict:
    """
    Audit numérique de Z contre la TFD F.

    Return:
    - dictionnaire : écart à l'unitarité, résidu de Z eps_jj Z^{-1} = eps'_jj,
      meilleur facteur scalaire c pour Z ~ cF et Z ~ cF^{-1} (réflexion des points) avec les résidus
    """
    n = params.n
    Z = to_matrix(duality_map_literal(params)).matrix
    F = dft_matrix(n)
    cond = float(np.linalg.cond(Z))
    report = {
        "n": n,
        "unitarity_deviation": float(np.max(np.abs(Z.conj().T @ Z - np.eye(n)))),
        "condition": cond,
    }
    if np.isfinite(cond) and cond < 1e12:
        Z_inv = np.linalg.inv(Z)
        residual = 0.0
        for j in range(n):
            eps = np.zeros((n, n), dtype=np.complex128)
            eps[j, j] = 1.0
            dual = np.outer(F[:, j], F[:, j].conj())
            residual = max(residual, float(np.max(np.abs(Z @ eps @ Z_inv - dual))))
        report["conjugation_residual"] = residual
    else:
        log.warning("Literal duality element is singular at n=%d, skipping the conjugation check", n)
        report["conjugation_residual"] = None
    c_dft, r_dft = _scalar_fit(Z, F)
    c_inv, r_inv = _scalar_fit(Z, F.conj().T)
    report["dft_fit"] = {"scalar": c_dft, "residual": r_dft}
    report["inverse_dft_fit"] = {"scalar": c_inv, "residual": r_inv}
    report["matches_dft"] = bool(r_dft <= params.tolerance)
    return report


def position_ket(params: AlgebraParams, j: int) -> StateVector:
    _check_index(params, "j", j)
    amplitudes = np.zeros(params.n, dtype=np.complex128)
    amplitudes[j] = 1.0
    return StateVector(params, amplitudes, "position")


def momentum_ket_element(params: AlgebraParams, j: int) -> AlgebraElement:
    """|P_j> = n^{-3/2} sum_{ik} omega^{ij} e_k^{-i}, élément de l'idéal à gauche de eps_00."""
    _check_index(params, "j", j)
    n = params.n
    idx = np.arange(n)
    coeffs = np.zeros((n, n), dtype=np.complex128)
    coeffs[(-idx) % n, :] = params.omega_power(idx * j)[:, None] / n ** 1.5
    return AlgebraElement(params, coeffs)


def ideal_to_ket(A: AlgebraElement) -> StateVector:
    """
    Coefficients de A sur la base I_L^(0)(i) = |i>.

    Raise:
    - NotInIdealError si A eps_00 != A (résidu rapporté)
    """
    residual = max_deviation(multiply(A, primitive_idempotent(A.params, 0)), A)
    if residual > A.params.tolerance:
        raise NotInIdealError(residual)
    return StateVector(A.params, to_matrix(A).matrix[:, 0], "position")


def ket_to_ideal(psi: StateVector) -> AlgebraElement:
    """sum_i psi_i I_L^(0)(i), inverse de ideal_to_ket."""
    n = psi.params.n
    M = np.zeros((n, n), dtype=np.complex128)
    M[:, 0] = psi.to_position().amplitudes
    return from_matrix(M, psi.params)


def momentum_ket(params: AlgebraParams, j: int) -> StateVector:
    """
    Ket |P_j> exprimé dans la base position : amplitudes omega^{ij} / sqrt(n).
    """
    return ideal_to_ket(momentum_ket_element(params, j))


def spectrum(A: AlgebraElement) -> np.ndarray:
    """Spectre de l'image matricielle, en ordre canonique (croissant si A est hermitien)."""
    M = to_matrix(A).matrix
    hermitian = hermiticity_deviation(M) <= A.params.tolerance
    return matrix_spectrum(M, hermitian=hermitian)


def exp_form_report(params: AlgebraParams) -> dict:
    """
    Compare exp(+-2 pi i P / n) à e_0^1 et exp(+-2 pi i X / n) à e_1^0.

    Return:
    - dictionnaire avec les écarts pour chaque signe, le signe retenu et sa concordance avec les constantes figées
    """
    n = params.n
    X = to_matrix(position_operator(params)).matrix
    P = to_matrix(momentum_operator(params)).matrix
    shift = to_matrix(basis_element(params, 1, 0)).matrix
    clock = to_matrix(basis_element(params, 0, 1)).matrix

    def compare(operator, target):
        deviations = {}
        for sign in (1, -1):
            generated = scipy.linalg.expm(sign * 2j * np.pi * operator / n)
            deviations[sign] = float(np.max(np.abs(generated - target)))
        # ties within tolerance keep the + sign
        adopted = 1 if deviations[1] <= deviations[-1] + params.tolerance else -1
        return {"plus": deviations[1], "minus": deviations[-1], "adopted": adopted}

    momentum = compare(P, shift)
    position = compare(X, clock)
    report = {
        "n": n,
        "momentum": momentum,
        "position": position,
        "degenerate": n == 2,
        "consistent": momentum["adopted"] == MOMENTUM_EXP_SIGN and position["adopted"] == POSITION_EXP_SIGN,
    }
    if report["degenerate"]:
        log.info("At n=2 omega = omega^{-1}, both exponential signs coincide")
    return report
