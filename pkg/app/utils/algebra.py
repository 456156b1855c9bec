import logging

import numpy as np

from app.model.AlgebraElement import AlgebraElement
from app.model.AlgebraParams import AlgebraParams
from app.model.MatrixRep import MatrixRep
from app.utils.errors import DimensionError, ParameterMismatchError

log = logging.getLogger(__name__)


def _same_params(*elements):
    n = elements[0].params.n
    for element in elements[1:]:
        if element.params.n != n:
            raise ParameterMismatchError(n, element.params.n)
    return elements[0].params


def _phase_table(params, sign=1):
    """Table omega^{sign * a b} indexée par (a, b), exposant réduit mod n."""
    idx = np.arange(params.n)
    return params.omega_power(sign * np.outer(idx, idx))


def zero(params: AlgebraParams) -> AlgebraElement:
    return AlgebraElement(params, np.zeros((params.n, params.n)))


def identity(params: AlgebraParams) -> AlgebraElement:
    """
    Élément unité 1 = e_0^0 de l'algèbre.

    Parameters:
    - params: AlgebraParams

    Return:
    - AlgebraElement avec A_00 = 1 et tous les autres coefficients nuls
    """
    return basis_element(params, 0, 0)


def basis_element(params: AlgebraParams, a: int, b: int) -> AlgebraElement:
    """
    Élément de base e_b^a = e_0^a e_b^0 (a: puissance du shift, b: puissance du clock).
    Les indices sont réduits mod n.
    """
    coeffs = np.zeros((params.n, params.n), dtype=np.complex128)
    coeffs[a % params.n, b % params.n] = 1.0
    return AlgebraElement(params, coeffs)


def generator_shift(params: AlgebraParams) -> AlgebraElement:
    return basis_element(params, 1, 0)


def generator_clock(params: AlgebraParams) -> AlgebraElement:
    return basis_element(params, 0, 1)


def _multiply_direct(params, A, B):
    # Literal product rule: e_b^a e_d^c = omega^{-bc} e_{b+d}^{a+c}
    n = params.n
    idx = np.arange(n)
    fold = (idx[:, None] + idx[None, :]) % n
    out = np.zeros((n, n), dtype=np.complex128)
    for a in range(n):
        for c in range(n):
            block = np.outer(A[a] * params.omega_power(-idx * c), B[c])
            np.add.at(out[(a + c) % n], fold, block)
    return out


def _multiply_fft(params, A, B):
    # For fixed a, row c of the result block is a cyclic convolution over the clock index.
    # Leading axes of A and B broadcast.
    n = params.n
    twist = _phase_table(params, -1).T  # [c, b] -> omega^{-bc}
    B_hat = np.fft.fft(B, axis=-1)
    out = np.zeros(np.broadcast_shapes(A.shape, B.shape), dtype=np.complex128)
    for a in range(n):
        row = A[..., a, None, :]
        if not row.any():
            continue
        conv = np.fft.ifft(np.fft.fft(row * twist, axis=-1) * B_hat, axis=-1)
        out += np.roll(conv, a, axis=-2)
    return out


def multiply_tables(params: AlgebraParams, A, B) -> np.ndarray:
    """
    Produit sur des piles de tables de coefficients : A[..., a, b] et B[..., c, d],
    les axes de tête sont diffusés. Même noyau que multiply(method="fft").
    """
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape[-2:] != (params.n, params.n) or B.shape[-2:] != (params.n, params.n):
        raise DimensionError(f"Expected stacks of {params.n}x{params.n} tables, got {A.shape} and {B.shape}")
    return _multiply_fft(params, A, B)


def multiply(A: AlgebraElement, B: AlgebraElement, method: str = "fft") -> AlgebraElement:
    """
    Produit de l'algèbre, extension bilinéaire de e_b^a e_d^c = omega^{-bc} e_{b+d}^{a+c}.

    Parameters:
    - A, B: éléments de la même algèbre
    - method: "fft" (convolution tordue accélérée) ou "direct" (double boucle littérale)

    Return:
    - AlgebraElement AB
    """
    params = _same_params(A, B)
    if method == "fft":
        coeffs = _multiply_fft(params, A.coeffs, B.coeffs)
    elif method == "direct":
        coeffs = _multiply_direct(params, A.coeffs, B.coeffs)
    else:
        raise ValueError(f"Unknown multiplication method '{method}'")
    return AlgebraElement(params, coeffs)


def linear_combine(terms) -> AlgebraElement:
    """
    Somme pondérée sum_k c_k A_k.

    Parameters:
    - terms: liste de couples (coefficient complexe, AlgebraElement)
    """
    terms = list(terms)
    if not terms:
        raise ValueError("linear_combine needs at least one term")
    params = _same_params(*[element for _, element in terms])
    coeffs = np.zeros((params.n, params.n), dtype=np.complex128)
    for weight, element in terms:
        coeffs += complex(weight) * element.coeffs
    return AlgebraElement(params, coeffs)


def adjoint(A: AlgebraElement) -> AlgebraElement:
    """
    Involution définie comme le pullback de la transposée conjuguée :
    (e_b^a)^dagger = omega^{-ab} e_{-b}^{-a}, étendue de façon antilinéaire.
    """
    params = A.params
    neg = (-np.arange(params.n)) % params.n
    reflected = np.conj(A.coeffs[np.ix_(neg, neg)])
    return AlgebraElement(params, reflected * _phase_table(params, -1))


def commutator(A: AlgebraElement, B: AlgebraElement) -> AlgebraElement:
    """[A, B] = AB - BA."""
    _same_params(A, B)
    return multiply(A, B) - multiply(B, A)


def power(A: AlgebraElement, k: int) -> AlgebraElement:
    """A^k par exponentiation rapide ; k < 0 passe par l'inverse."""
    if k < 0:
        from app.utils.ideals import inverse
        return power(inverse(A), -k)
    result = identity(A.params)
    base = A
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def to_matrix(A: AlgebraElement) -> MatrixRep:
    """
    Image matricielle : e_1^0 -> clock diag(omega^j), e_0^1 -> shift avec e_0^1 |j> = |j-1>.

    e_b^a |j> = omega^{bj} |j-a>, donc M[j-a, j] = sum_b A_ab omega^{bj}.
    """
    return MatrixRep(A.params, matrix_images(A.params, A.coeffs))


def matrix_images(params: AlgebraParams, coeffs) -> np.ndarray:
    """Images matricielles d'une pile de tables de coefficients [..., a, b] -> [..., i, j]."""
    n = params.n
    G = n * np.fft.ifft(np.asarray(coeffs, dtype=np.complex128), axis=-1)  # [..., a, j]
    idx = np.arange(n)
    rows = (idx[None, :] - idx[:, None]) % n
    cols = np.broadcast_to(idx[None, :], (n, n))
    M = np.zeros(G.shape, dtype=np.complex128)
    M[..., rows, cols] = G
    return M


def basis_matrix(params: AlgebraParams, a: int, b: int) -> np.ndarray:
    return to_matrix(basis_element(params, a, b)).matrix


def _trace_pairing(params, M):
    # A_ab = (1/n) trace(M . to_matrix(e_b^a)^{-1}), the inverse being the adjoint
    n = params.n
    coeffs = np.zeros((n, n), dtype=np.complex128)
    for a in range(n):
        for b in range(n):
            coeffs[a, b] = np.trace(M @ basis_matrix(params, a, b).conj().T) / n
    return coeffs


def from_matrix(M, params: AlgebraParams = None, method: str = "fft") -> AlgebraElement:
    """
    Inverse exact de to_matrix.

    Parameters:
    - M: MatrixRep, ou ndarray n x n accompagné de params
    - method: "fft" ou "trace" (appariement par la trace, littéral)
    """
    if isinstance(M, MatrixRep):
        if params is not None and params.n != M.params.n:
            raise DimensionError(f"Matrix of size {M.params.n} given for an algebra of order {params.n}")
        params, M = M.params, M.matrix
    if params is None:
        raise ValueError("from_matrix needs AlgebraParams when given a bare array")
    M = np.asarray(M, dtype=np.complex128)
    n = params.n
    if M.shape != (n, n):
        raise DimensionError(f"Expected a {n}x{n} matrix, got shape {M.shape}")
    if method == "trace":
        return AlgebraElement(params, _trace_pairing(params, M))
    if method != "fft":
        raise ValueError(f"Unknown inversion method '{method}'")
    idx = np.arange(n)
    G = M[(idx[None, :] - idx[:, None]) % n, idx[None, :]]  # [a, j]
    return AlgebraElement(params, np.fft.fft(G, axis=1) / n)


def trace(A: AlgebraElement) -> complex:
    """Trace de l'image matricielle, égale à n A_00."""
    return complex(A.params.n * A.coeffs[0, 0])


def max_deviation(A: AlgebraElement, B: AlgebraElement) -> float:
    _same_params(A, B)
    return float(np.max(np.abs(A.coeffs - B.coeffs)))


def allclose(A: AlgebraElement, B: AlgebraElement, tol: float = None) -> bool:
    """Égalité coefficient par coefficient à tau(n) près."""
    tol = A.params.tolerance if tol is None else tol
    return max_deviation(A, B) <= tol


def random_element(params: AlgebraParams, rng: np.random.Generator) -> AlgebraElement:
    """Coefficients gaussiens complexes indépendants."""
    shape = (params.n, params.n)
    return AlgebraElement(params, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
