import logging

import numpy as np

from app.model.AlgebraElement import AlgebraElement
from app.model.AlgebraParams import AlgebraParams
from app.model.ConvergenceReport import ConvergenceReport
from app.model.GaussianSpec import GaussianSpec
from app.model.StateVector import StateVector
from app.params import LIMIT_MIN_N, LIMIT_ROUNDING_FLOOR, WITNESS_THRESHOLD
from app.utils.algebra import commutator, identity, linear_combine, to_matrix
from app.utils.errors import NonHermitianError, ParameterMismatchError
from app.utils.linalg import hermiticity_deviation
from app.utils.operators import momentum_operator, position_ket, position_operator

log = logging.getLogger(__name__)


def commutator_xp(params: AlgebraParams) -> AlgebraElement:
    """[X, P] : anti-hermitien, de trace nulle."""
    return commutator(position_operator(params), momentum_operator(params))


def scaled_observables(params: AlgebraParams):
    """
    X~ = s (X - c), P~ = s (P - c) avec s = sqrt(2 pi / n) et c = (n - 1) / 2.

    Return:
    - (X~, P~), avec [X~, P~] = (2 pi / n) [X, P]
    """
    s = np.sqrt(2 * np.pi / params.n)
    c = (params.n - 1) / 2
    one = identity(params)
    X_scaled = linear_combine([(s, position_operator(params)), (-s * c, one)])
    P_scaled = linear_combine([(s, momentum_operator(params)), (-s * c, one)])
    return X_scaled, P_scaled


def expectation(op: AlgebraElement, psi: StateVector) -> complex:
    """
    <psi| op |psi> sur l'image matricielle de op.

    Raise:
    - NormalizationError si | ||psi||^2 - 1 | > tau(n)
    """
    if op.params.n != psi.params.n:
        raise ParameterMismatchError(op.params.n, psi.params.n)
    psi.check_normalized()
    amplitudes = psi.to_position().amplitudes
    return complex(np.vdot(amplitudes, to_matrix(op).matrix @ amplitudes))


def _hermitian_matrix(A: AlgebraElement) -> np.ndarray:
    M = to_matrix(A).matrix
    deviation = hermiticity_deviation(M)
    if deviation > A.params.tolerance:
        raise NonHermitianError(deviation)
    return M


def robertson_check(psi: StateVector, A: AlgebraElement, B: AlgebraElement) -> dict:
    """
    Vérifie Delta A Delta B >= 1/2 |<[A, B]>| sur psi.

    Parameters:
    - psi: état normalisé
    - A, B: éléments hermitiens (à tau(n) près)

    Return:
    - dictionnaire {delta_a, delta_b, product, bound, holds}
    """
    M_a = _hermitian_matrix(A)
    M_b = _hermitian_matrix(B)
    psi.check_normalized()
    v = psi.to_position().amplitudes
    mean_a = np.vdot(v, M_a @ v).real
    mean_b = np.vdot(v, M_b @ v).real
    delta_a = np.sqrt(max(np.vdot(M_a @ v, M_a @ v).real - mean_a ** 2, 0.0))
    delta_b = np.sqrt(max(np.vdot(M_b @ v, M_b @ v).real - mean_b ** 2, 0.0))
    bound = 0.5 * abs(np.vdot(v, (M_a @ M_b - M_b @ M_a) @ v))
    product = delta_a * delta_b
    return {
        "delta_a": float(delta_a),
        "delta_b": float(delta_b),
        "product": float(product),
        "bound": float(bound),
        "holds": bool(product >= bound - psi.params.tolerance),
    }


def random_state(params: AlgebraParams, rng: np.random.Generator) -> StateVector:
    """Vecteur de gaussiennes complexes indépendantes normalisé (uniforme sur la sphère)."""
    v = rng.standard_normal(params.n) + 1j * rng.standard_normal(params.n)
    return StateVector(params, v / np.linalg.norm(v), "position")


def spectral_witness(params: AlgebraParams):
    """
    Maximiseur exact de 1/2 |<[X, P]>| : vecteur propre dominant de -i [X, P].

    Return:
    - (borne, StateVector)
    """
    K = to_matrix(commutator_xp(params)).matrix
    H = -1j * K
    H = 0.5 * (H + H.conj().T)
    values, vectors = np.linalg.eigh(H)
    top = int(np.argmax(np.abs(values)))
    return 0.5 * float(abs(values[top])), StateVector(params, vectors[:, top], "position")


def uncertainty_exists(params: AlgebraParams, trials: int, seed: int) -> dict:
    """
    Cherche un état témoin d'une borne d'incertitude non triviale 1/2 |<[X, P]>| > WITNESS_THRESHOLD.

    Parameters:
    - params: AlgebraParams
    - trials: nombre d'états aléatoires (>= 1)
    - seed: graine du générateur

    Return:
    - dictionnaire : meilleure borne, état témoin, nombre de violations de Robertson, témoin spectral
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    X = to_matrix(position_operator(params)).matrix
    P = to_matrix(momentum_operator(params)).matrix
    K = X @ P - P @ X
    states = rng.standard_normal((trials, params.n)) + 1j * rng.standard_normal((trials, params.n))
    states /= np.linalg.norm(states, axis=1, keepdims=True)

    def moments(M):
        applied = states @ M.T
        mean = np.einsum("ti,ti->t", states.conj(), applied).real
        second = np.einsum("ti,ti->t", applied.conj(), applied).real
        return mean, np.sqrt(np.maximum(second - mean ** 2, 0.0))

    _, delta_x = moments(X)
    _, delta_p = moments(P)
    bounds = 0.5 * np.abs(np.einsum("ti,ti->t", states.conj(), states @ K.T))
    violations = int(np.sum(delta_x * delta_p < bounds - params.tolerance))
    best = int(np.argmax(bounds))
    spectral_bound, spectral_state = spectral_witness(params)
    found = bool(bounds[best] > WITNESS_THRESHOLD)
    if not found:
        log.warning("No witness above %.3g among %d samples at n=%d", WITNESS_THRESHOLD, trials, params.n)
    return {
        "n": params.n,
        "trials": trials,
        "seed": seed,
        "best_bound": float(bounds[best]),
        "witness": StateVector(params, states[best], "position"),
        "found": found,
        "robertson_violations": violations,
        "spectral_bound": spectral_bound,
        "spectral_witness": spectral_state,
    }


def gaussian_state(params: AlgebraParams, spec: GaussianSpec) -> StateVector:
    """
    Gaussienne enroulée psi_j ~ exp(-d(j, center)^2 / (4 width^2)) exp(2 pi i momentum_shift j / n),
    d étant la distance cyclique ; normalisée.
    """
    n = params.n
    j = np.arange(n)
    d = np.mod(j - spec.center + n / 2, n) - n / 2
    psi = np.exp(-d ** 2 / (4 * spec.width ** 2)) * np.exp(2j * np.pi * spec.momentum_shift * j / n)
    return StateVector(params, psi / np.linalg.norm(psi), "position")


def width_for(n: int, width_rule="balanced") -> float:
    """
    Largeur du paquet : "balanced" -> sqrt(n / (4 pi)) (dispersions égales en position et en impulsion),
    un nombre kappa -> kappa sqrt(n).
    """
    if width_rule == "balanced":
        return float(np.sqrt(n / (4 * np.pi)))
    kappa = float(width_rule)
    if kappa <= 0:
        raise ValueError(f"Width factor must be > 0, got {kappa}")
    return kappa * float(np.sqrt(n))


def errors_monotone(errors) -> bool:
    """Erreurs non croissantes ; deux erreurs successives sous LIMIT_ROUNDING_FLOOR sont à égalité."""
    return all(b <= a or max(a, b) <= LIMIT_ROUNDING_FLOOR for a, b in zip(errors, errors[1:]))


def continuum_limit_study(n_list, width_rule="balanced", momentum_shift=None) -> ConvergenceReport:
    """
    Étude de <psi|[X~, P~]|psi> -> i sur des gaussiennes centrées en n/2.

    Parameters:
    - n_list: ordres croissants, chacun >= LIMIT_MIN_N
    - width_rule: "balanced" ou facteur kappa (largeur kappa sqrt(n)) ; avec "balanced" l'erreur
      atteint l'arrondi dès n = 32, un kappa plus petit (0.07) garde le repliement en impulsion mesurable
    - momentum_shift: rampe en cycles ; par défaut n/2, milieu du spectre de P

    Return:
    - ConvergenceReport (lignes, drapeau de monotonie, contrôle négatif)
    """
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("n_list must not be empty")
    if any(n < LIMIT_MIN_N for n in n_list):
        raise ValueError(f"Every n must be >= {LIMIT_MIN_N} (got {n_list})")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"n_list must be strictly ascending (got {n_list})")

    report = ConvergenceReport(width_rule=str(width_rule))
    for n in n_list:
        params = AlgebraParams(n)
        X_scaled, P_scaled = scaled_observables(params)
        K = commutator(X_scaled, P_scaled)
        shift = n / 2 if momentum_shift is None else momentum_shift
        psi = gaussian_state(params, GaussianSpec(center=n / 2, width=width_for(n, width_rule),
                                                  momentum_shift=shift))
        value = expectation(K, psi)
        error = abs(value - 1j)
        report.rows.append((n, value, float(error)))
        report.negative_control.append((n, expectation(K, position_ket(params, n // 2))))
        log.info("n=%d <[X~,P~]> = %.6g%+.6gi, error %.3e", n, value.real, value.imag, error)

    errors = [row[2] for row in report.rows]
    report.monotone_flag = errors_monotone(errors)
    if not report.monotone_flag:
        log.warning("Continuum study errors are not monotone: %s", errors)
    return report
