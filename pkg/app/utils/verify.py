import itertools
import logging

import numpy as np
import pandas as pd

from app.model.AlgebraParams import AlgebraParams
from app.params import EIGEN_TOLERANCE_SCALE, EXHAUSTIVE_PRODUCT_LIMIT, SAMPLED_PRODUCTS
from app.utils.algebra import (adjoint, basis_element, basis_matrix, from_matrix, generator_clock,
                               generator_shift, identity, matrix_images, max_deviation, multiply,
                               multiply_tables, power, random_element, to_matrix, trace)
from app.utils.ideals import (canonical_set, left_ideal_basis, matrix_unit, primitive_idempotent,
                              right_ideal_basis)
from app.utils.linalg import hermiticity_deviation
from app.utils.operators import (dft_matrix, dual_idempotent, dual_matrix_unit, exp_form_report, ket_to_ideal,
                                 momentum_ket, momentum_operator, position_ket, position_operator,
                                 translation_position)
from app.utils.uncertainty import commutator_xp

log = logging.getLogger(__name__)

COLUMNS = ["identity", "group", "max_deviation", "tolerance", "passed", "mode"]


def _row(identity, group, deviation, tolerance, mode="exhaustive"):
    return {
        "identity": identity,
        "group": group,
        "max_deviation": float(deviation),
        "tolerance": float(tolerance),
        "passed": bool(deviation <= tolerance),
        "mode": mode,
    }


def index_tuples(n: int, arity: int, rng: np.random.Generator):
    """
    Tous les arity-uplets d'indices si leur nombre reste sous EXHAUSTIVE_PRODUCT_LIMIT,
    sinon SAMPLED_PRODUCTS tirages.

    Return:
    - (liste de tuples, "exhaustive" ou "sampled")
    """
    if n ** arity <= EXHAUSTIVE_PRODUCT_LIMIT:
        return list(itertools.product(range(n), repeat=arity)), "exhaustive"
    draws = rng.integers(0, n, size=(SAMPLED_PRODUCTS, arity))
    return [tuple(int(x) for x in row) for row in draws], "sampled"


def _dev(A, B):
    return float(np.max(np.abs(np.asarray(A) - np.asarray(B))))


def _matrix_unit_images(params):
    def unit(i, j):
        return to_matrix(matrix_unit(params, i, j)).matrix
    return unit


def _dual_unit_images(params):
    def unit(j, m):
        return to_matrix(dual_matrix_unit(params, j, m)).matrix
    return unit


def _unit_random(params, rng):
    """Élément aléatoire de norme de Frobenius 1."""
    A = random_element(params, rng)
    return A * (1 / np.linalg.norm(A.coeffs))


def _basis_stack(params, first, second):
    """Tables de e_b^a empilées pour des suites d'indices a, b."""
    tables = np.zeros((len(first), params.n, params.n), dtype=np.complex128)
    tables[np.arange(len(first)), first, second] = 1.0
    return tables


def _homomorphism_deviation(params, quadruples, mode):
    """max |to_matrix(e_b^a e_d^c) - to_matrix(e_b^a) to_matrix(e_d^c)| sur les uplets (a, b, c, d)."""
    n = params.n
    if mode == "sampled":
        a, b, c, d = np.asarray(quadruples).T
        left, right = _basis_stack(params, a, b), _basis_stack(params, c, d)
        products = multiply_tables(params, left, right)
        expected = matrix_images(params, left) @ matrix_images(params, right)
        return _dev(matrix_images(params, products), expected)
    tables = np.eye(n * n, dtype=np.complex128).reshape(n, n, n, n)  # [a, b] -> table of e_b^a
    images = matrix_images(params, tables)
    flat_tables = tables.reshape(n * n, n, n)
    flat_images = images.reshape(n * n, n, n)
    worst = 0.0
    for a in range(n):
        # every e_b^a against every basis element: [b, (c, d), i, j]
        products = multiply_tables(params, tables[a][:, None], flat_tables[None])
        expected = images[a][:, None] @ flat_images[None]
        worst = max(worst, _dev(matrix_images(params, products), expected))
    return worst


def _unit_stack(params, first, second):
    """Images de eps_ik empilées pour des suites d'indices i, k."""
    tables = np.array([matrix_unit(params, int(i), int(k)).coeffs for i, k in zip(first, second)])
    return matrix_images(params, tables)


def _matrix_unit_deviation(params, quadruples, mode):
    """max |eps_ik eps_jm - delta_kj eps_im| sur les uplets (i, k, j, m)."""
    n = params.n
    if mode == "sampled":
        i, k, j, m = np.asarray(quadruples).T
        expected = np.where((k == j)[:, None, None], _unit_stack(params, i, m), 0)
        return _dev(_unit_stack(params, i, k) @ _unit_stack(params, j, m), expected)
    first, second = np.divmod(np.arange(n * n), n)
    units = _unit_stack(params, first, second).reshape(n, n, n, n)  # [i, k, r, s]
    delta = np.eye(n)[:, :, None, None, None]
    worst = 0.0
    for i in range(n):
        # [k, j, m, r, t]
        products = units[i][:, None, None] @ units[None]
        worst = max(worst, _dev(products, delta * units[i][None]))
    return worst


def core_suite(params: AlgebraParams, rng: np.random.Generator, triples: int = 20):
    n = params.n
    tol = params.tolerance
    one = identity(params)
    shift = generator_shift(params)
    clock = generator_clock(params)
    rows = [
        _row("shift^n = 1", "generators", max_deviation(power(shift, n), one), tol),
        _row("clock^n = 1", "generators", max_deviation(power(clock, n), one), tol),
        _row("shift clock = omega clock shift", "generators",
             max_deviation(multiply(shift, clock), params.omega * multiply(clock, shift)), tol),
    ]

    associativity = 0.0
    for _ in range(triples):
        A, B, C = (_unit_random(params, rng) for _ in range(3))
        associativity = max(associativity, max_deviation(multiply(multiply(A, B), C), multiply(A, multiply(B, C))))
    rows.append(_row("(AB)C = A(BC)", "product", associativity, tol, "sampled"))

    quadruples, mode = index_tuples(n, 4, rng)
    homomorphism = _homomorphism_deviation(params, quadruples, mode)
    rows.append(_row("to_matrix(AB) = to_matrix(A) to_matrix(B)", "product", homomorphism, tol, mode))

    adjoint_dev = 0.0
    round_trip = 0.0
    for a, b in itertools.product(range(n), repeat=2):
        e = basis_element(params, a, b)
        M = basis_matrix(params, a, b)
        adjoint_dev = max(adjoint_dev, _dev(to_matrix(adjoint(e)).matrix, M.conj().T))
        round_trip = max(round_trip, max_deviation(from_matrix(M, params), e))
    rows.append(_row("to_matrix(A^dagger) = to_matrix(A)^H", "adjoint", adjoint_dev, tol))
    rows.append(_row("from_matrix(to_matrix(e_b^a)) = e_b^a", "representation", round_trip, tol))

    A = random_element(params, rng)
    rows.append(_row("trace = n A_00", "trace", abs(trace(A) - np.trace(to_matrix(A).matrix)), tol * n, "sampled"))
    return rows


def ideals_suite(params: AlgebraParams, rng: np.random.Generator):
    n = params.n
    tol = params.tolerance
    E = canonical_set(params).matrices()
    unit = _matrix_unit_images(params)
    eye = np.eye(n)

    rows = [_row("eps_ii^2 = eps_ii", "idempotents", max(_dev(E[i] @ E[i], E[i]) for i in range(n)), tol)]
    orthogonality = max((_dev(E[i] @ E[j], 0) for i in range(n) for j in range(n) if i != j), default=0.0)
    rows.append(_row("eps_ii eps_jj = 0 (i != j)", "idempotents", orthogonality, tol))
    rows.append(_row("sum_i eps_ii = 1", "idempotents", _dev(E.sum(axis=0), eye), tol))
    rows.append(_row("trace eps_ii = 1", "idempotents",
                     max(abs(trace(primitive_idempotent(params, i)) - 1) for i in range(n)), tol))
    ranks = np.sum(np.linalg.svd(E, compute_uv=False) > np.sqrt(tol), axis=1)
    rows.append(_row("rank eps_ii = 1", "idempotents", float(np.max(np.abs(ranks - 1))), 0.0))

    quadruples, mode = index_tuples(n, 4, rng)
    matrix_units = _matrix_unit_deviation(params, quadruples, mode)
    rows.append(_row("eps_ik eps_jm = delta_kj eps_im", "matrix-units", matrix_units, tol, mode))
    rows.append(_row("eps_ii = primitive idempotent", "idempotents",
                     max(_dev(unit(i, i), E[i]) for i in range(n)), tol))

    left = np.array([to_matrix(left_ideal_basis(params, i)).matrix for i in range(n)])
    right = np.array([to_matrix(right_ideal_basis(params, j)).matrix for j in range(n)])
    pairs, mode = index_tuples(n, 2, rng)
    eq14 = max(_dev(left[i] @ right[j], unit(i, j)) for i, j in pairs)
    eq15 = max(_dev(right[i] @ left[j], E[0] if i == j else 0) for i, j in pairs)
    rows.append(_row("I_L(i) I_R(j) = eps_ij", "ideals", eq14, tol, mode))
    rows.append(_row("I_R(i) I_L(j) = delta_ij eps_00", "ideals", eq15, tol, mode))
    return rows


def operators_suite(params: AlgebraParams, rng: np.random.Generator):
    n = params.n
    tol = params.tolerance
    X = to_matrix(position_operator(params)).matrix
    P = to_matrix(momentum_operator(params)).matrix
    F = dft_matrix(n)
    E = canonical_set(params).matrices()
    dual = np.array([to_matrix(dual_idempotent(params, j)).matrix for j in range(n)])
    T = to_matrix(translation_position(params, 1)).matrix

    rows = [
        _row("X hermitian", "position", hermiticity_deviation(X), tol),
        _row("P hermitian", "momentum", hermiticity_deviation(P), tol),
        _row("X eps_jj = j eps_jj", "position", max(_dev(X @ E[j], j * E[j]) for j in range(n)), tol),
    ]
    pairs, mode = index_tuples(n, 2, rng)
    unit = _matrix_unit_images(params)
    rows.append(_row("X eps_jm = j eps_jm", "position",
                     max(_dev(X @ unit(j, m), j * unit(j, m)) for j, m in pairs), tol, mode))
    rows.append(_row("T eps_jj T^-1 = eps_{j+1,j+1}", "translation",
                     max(_dev(T @ E[j] @ T.conj().T, E[(j + 1) % n]) for j in range(n)), tol))
    shift = to_matrix(generator_shift(params)).matrix
    rows.append(_row("eps_jj = e_0^-j eps_00 e_0^j", "translation",
                     max(_dev(np.linalg.matrix_power(shift.conj().T, j) @ E[0] @ np.linalg.matrix_power(shift, j),
                              E[j]) for j in range(n)), tol))
    rows.append(_row("P eps'_jj = j eps'_jj", "momentum", max(_dev(P @ dual[j], j * dual[j]) for j in range(n)), tol))
    dual_unit = _dual_unit_images(params)
    rows.append(_row("P eps'_jm = j eps'_jm", "momentum",
                     max(_dev(P @ dual_unit(j, m), j * dual_unit(j, m)) for j, m in pairs), tol, mode))
    rows.append(_row("F eps_jj F^-1 = eps'_jj", "duality",
                     max(_dev(F @ E[j] @ F.conj().T, dual[j]) for j in range(n)), tol))

    exp_report = exp_form_report(params)
    rows.append(_row("e_0^1 = exp(2 pi i P / n)", "exp-forms", exp_report["momentum"]["plus"], tol))
    rows.append(_row("e_1^0 = exp(2 pi i X / n)", "exp-forms", exp_report["position"]["plus"], tol))

    eps00 = to_matrix(primitive_idempotent(params, 0)).matrix
    inner = 0.0
    for i, j in pairs:
        bra = to_matrix(adjoint(ket_to_ideal(position_ket(params, i)))).matrix
        ket = to_matrix(ket_to_ideal(position_ket(params, j))).matrix
        inner = max(inner, _dev(bra @ ket, (1.0 if i == j else 0.0) * eps00))
    rows.append(_row("<i|j> eps_00 from ideal elements", "inner-product", inner, tol, mode))

    kets = np.column_stack([momentum_ket(params, j).amplitudes for j in range(n)])
    rows.append(_row("momentum kets = DFT columns", "momentum-kets", _dev(kets, F), tol))
    rows.append(_row("momentum kets unitary", "momentum-kets", _dev(kets.conj().T @ kets, np.eye(n)), tol))

    eigen_tol = EIGEN_TOLERANCE_SCALE * n
    rows.append(_row("spectrum X = {0..n-1}", "position", _dev(np.linalg.eigvalsh(X), np.arange(n)), eigen_tol))
    rows.append(_row("spectrum P = {0..n-1}", "momentum", _dev(np.linalg.eigvalsh(P), np.arange(n)), eigen_tol))
    return rows


def commutator_suite(params: AlgebraParams):
    tol = params.tolerance
    K = to_matrix(commutator_xp(params)).matrix
    norm = float(np.linalg.norm(K, 2))
    return [
        _row("[X,P] anti-hermitian", "commutator", _dev(K, -K.conj().T), tol),
        _row("trace [X,P] = 0", "commutator", abs(np.trace(K)), tol * params.n),
        # 0 when the commutator does not vanish, inf otherwise
        _row("[X,P] != 0", "commutator", 0.0 if norm > tol else float("inf"), 0.0),
    ]


def run_suites(params: AlgebraParams, seed: int = 0) -> pd.DataFrame:
    """
    Exécute toutes les suites d'identités à l'ordre n.

    Return:
    - DataFrame, une ligne par identité (identity, group, max_deviation, tolerance, passed, mode)
    """
    rng = np.random.default_rng(seed)
    rows = []
    for name, suite in (("core", lambda: core_suite(params, rng)),
                        ("ideals", lambda: ideals_suite(params, rng)),
                        ("operators", lambda: operators_suite(params, rng)),
                        ("commutator", lambda: commutator_suite(params))):
        suite_rows = suite()
        failed = [row["identity"] for row in suite_rows if not row["passed"]]
        if failed:
            log.warning("Suite %s failed at n=%d: %s", name, params.n, failed)
        else:
            log.info("Suite %s passed at n=%d", name, params.n)
        rows.extend(suite_rows)
    return pd.DataFrame(rows, columns=COLUMNS)
