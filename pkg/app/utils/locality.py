import logging

import numpy as np
import pandas as pd
import scipy.linalg

from app.model.AlgebraElement import AlgebraElement
from app.model.AlgebraParams import AlgebraParams
from app.model.GaussianSpec import GaussianSpec
from app.model.LatticeField import LatticeField
from app.model.LocalityReport import LocalityReport
from app.model.MatrixRep import MatrixRep
from app.params import BAND_RADIUS, EIGEN_TOLERANCE_SCALE, NEIGHBOUR_PLUS_POWER, TOLERANCE_SCALE
from app.utils.algebra import basis_element, to_matrix
from app.utils.errors import DimensionError, ParameterMismatchError, SpectrumError
from app.utils.ideals import _check_index
from app.utils.linalg import canonicalize_phase, check_unitary, hermiticity_deviation, spectrum
from app.utils.operators import dft_matrix, momentum_operator
from app.utils.uncertainty import expectation, gaussian_state

log = logging.getLogger(__name__)


def neighbour_plus(params: AlgebraParams) -> AlgebraElement:
    """N+ psi_j = psi_{j+1}, soit e_0^1."""
    return basis_element(params, NEIGHBOUR_PLUS_POWER, 0)


def neighbour_minus(params: AlgebraParams) -> AlgebraElement:
    """N- psi_j = psi_{j-1}, soit e_0^{-1}."""
    return basis_element(params, -NEIGHBOUR_PLUS_POWER, 0)


def basis_field(params: AlgebraParams, j: int) -> LatticeField:
    """Champ delta au site j."""
    _check_index(params, "j", j)
    values = np.zeros(params.n, dtype=np.complex128)
    values[j] = 1.0
    return LatticeField(params, values)


def fourier_mode(params: AlgebraParams, k: int) -> LatticeField:
    """f_j = omega^{kj}."""
    return LatticeField(params, params.omega_power(k * np.arange(params.n)))


def _as_matrix(M) -> np.ndarray:
    if isinstance(M, AlgebraElement):
        return np.array(to_matrix(M).matrix)
    if isinstance(M, MatrixRep):
        return np.array(M.matrix)
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {M.shape}")
    return M


def apply_element(A: AlgebraElement, f: LatticeField) -> LatticeField:
    """Action de l'image matricielle de A sur les valeurs du champ."""
    if A.params.n != f.params.n:
        raise ParameterMismatchError(A.params.n, f.params.n)
    return LatticeField(f.params, to_matrix(A).matrix @ f.values)


def central_difference(f: LatticeField) -> LatticeField:
    """(N+ - N-) f : psi_{j+1} - psi_{j-1}."""
    return apply_element(neighbour_plus(f.params), f) - apply_element(neighbour_minus(f.params), f)


def laplacian(f: LatticeField) -> LatticeField:
    """(N+ - 2 + N-) f : psi_{j+1} - 2 psi_j + psi_{j-1}."""
    plus = apply_element(neighbour_plus(f.params), f)
    minus = apply_element(neighbour_minus(f.params), f)
    return plus + minus - 2 * f


def apply_automorphism_field(f: LatticeField, C) -> LatticeField:
    """
    Transport d'un champ par l'automorphisme intérieur de matrice C : psi_j -> sum_k C*_jk psi_k.

    Raise:
    - NonUnitaryError si C n'est pas unitaire à tau(n) près
    """
    C = check_unitary(C, f.params.tolerance)
    if C.shape[0] != f.n:
        raise DimensionError(f"Expected a {f.n}x{f.n} matrix, got shape {C.shape}")
    return LatticeField(f.params, C.conj() @ f.values)


def apply_automorphism_operator(M, C) -> np.ndarray:
    """
    C^dagger M C. Pour M = N+ on retrouve les coefficients sum_j C*_jk C_{j+1,l}.

    Parameters:
    - M: matrice carrée, MatrixRep ou AlgebraElement
    - C: matrice unitaire de même taille
    """
    M = _as_matrix(M)
    n = M.shape[0]
    C = check_unitary(C, TOLERANCE_SCALE * n)
    if C.shape != M.shape:
        raise DimensionError(f"Expected a {n}x{n} matrix, got shape {C.shape}")
    return C.conj().T @ M @ C


def band_mask(n: int, band_radius: int = BAND_RADIUS) -> np.ndarray:
    idx = np.arange(n)
    d = np.abs(idx[:, None] - idx[None, :])
    return np.minimum(d, n - d) <= band_radius


def locality_report(M, band_radius: int = BAND_RADIUS) -> LocalityReport:
    """
    Part de |M_ij|^2 dans la bande cyclique |i - j| <= band_radius, indice de délocalisation et spectre.
    La matrice nulle est comptée comme locale.
    """
    M = _as_matrix(M)
    n = M.shape[0]
    mass = np.abs(M) ** 2
    total = float(mass.sum())
    band_energy = float(mass[band_mask(n, band_radius)].sum() / total) if total > 0 else 1.0
    band_energy = min(max(band_energy, 0.0), 1.0)
    hermitian = hermiticity_deviation(M) <= TOLERANCE_SCALE * n
    return LocalityReport(
        band_energy=band_energy,
        delocalization_index=1.0 - band_energy,
        spectrum=spectrum(M, hermitian=hermitian),
        band_radius=band_radius,
    )


def recover_canonical_basis(Np) -> np.ndarray:
    """
    Retrouve une base dans laquelle Np prend la forme canonique (superdiagonale cyclique).

    Np doit être unitaire de spectre les n racines n-ièmes de l'unité, toutes simples.
    Les vecteurs propres sont rangés par phase de valeur propre, la phase de chacun est fixée
    par canonicalize_phase.

    Return:
    - V unitaire avec V^dagger Np V = image de N+
    """
    Np = _as_matrix(Np)
    n = Np.shape[0]
    tol = EIGEN_TOLERANCE_SCALE * n
    T, W = scipy.linalg.schur(Np, output="complex")
    off_diagonal = float(np.max(np.abs(np.triu(T, 1)))) if n > 1 else 0.0
    eigenvalues = np.diag(T)
    if off_diagonal > tol or np.max(np.abs(np.abs(eigenvalues) - 1.0)) > tol:
        raise SpectrumError("Not an exploded neighbourhood operator: matrix is not unitary")
    q = np.angle(eigenvalues) * n / (2 * np.pi)
    labels = np.mod(np.rint(q), n).astype(int)
    if np.max(np.abs(q - np.rint(q))) * 2 * np.pi / n > tol:
        raise SpectrumError("Not an exploded neighbourhood operator: eigenvalues are not n-th roots of unity")
    if len(set(labels.tolist())) != n:
        raise SpectrumError("Not an exploded neighbourhood operator: degenerate spectrum")
    W_sorted = np.empty_like(W)
    W_sorted[:, labels] = W
    W_sorted = canonicalize_phase(W_sorted)
    return W_sorted @ dft_matrix(n).conj().T


def family_band_reducible(family, band_radius: int = BAND_RADIUS, tol: float = 1e-9) -> dict:
    """
    Diagnostic : une même unitaire ramène-t-elle toute la famille {N_i} dans la bande ?

    Condition suffisante testée : famille normale et commutative (diagonalisable simultanément),
    ou base canonique du premier membre qui rend tous les membres locaux.
    """
    matrices = [_as_matrix(M) for M in family]
    if not matrices:
        raise ValueError("family must not be empty")
    normal = all(np.max(np.abs(M @ M.conj().T - M.conj().T @ M)) <= tol for M in matrices)
    max_commutator = 0.0
    for i, A in enumerate(matrices):
        for B in matrices[i + 1:]:
            max_commutator = max(max_commutator, float(np.max(np.abs(A @ B - B @ A))))
    report = {
        "size": len(matrices),
        "normal": bool(normal),
        "max_commutator": max_commutator,
        "commuting": bool(max_commutator <= tol),
        "band_energies": None,
    }
    try:
        V = recover_canonical_basis(matrices[0])
        energies = [locality_report(V.conj().T @ M @ V, band_radius).band_energy for M in matrices]
        report["band_energies"] = energies
        canonical = all(e >= 1.0 - tol for e in energies)
    except SpectrumError:
        canonical = False
    report["reducible"] = bool((normal and report["commuting"]) or canonical)
    return report


def momentum_link_study(n_list, momentum_shift: float = 8, width_fraction: float = 1 / 12) -> pd.DataFrame:
    """
    Compare <(n / 4 pi i)(N+ - N-)> à <P> sur des gaussiennes de faible impulsion centrées en n/2.

    (N+ - N-) / 2i = sin(2 pi P / n) exactement ; le résidu de cette identité est rapporté.

    Return:
    - DataFrame n, neighbour, momentum, relative_error, identity_residual
    """
    rows = []
    for n in n_list:
        params = AlgebraParams(int(n))
        plus = neighbour_plus(params)
        minus = neighbour_minus(params)
        difference = (plus - minus) * (n / (4j * np.pi))
        psi = gaussian_state(params, GaussianSpec(center=n / 2, width=width_fraction * n,
                                                  momentum_shift=momentum_shift))
        neighbour = expectation(difference, psi).real
        momentum = expectation(momentum_operator(params), psi).real
        P = to_matrix(momentum_operator(params)).matrix
        sine = (to_matrix(plus).matrix - to_matrix(minus).matrix) / 2j
        residual = float(np.max(np.abs(sine - scipy.linalg.sinm(2 * np.pi * P / n))))
        rows.append({
            "n": int(n),
            "neighbour": float(neighbour),
            "momentum": float(momentum),
            "relative_error": float(abs(neighbour - momentum) / abs(momentum)),
            "identity_residual": residual,
        })
        log.info("n=%d link %.6g vs <P> %.6g", n, neighbour, momentum)
    return pd.DataFrame(rows)
