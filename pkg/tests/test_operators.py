import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.model.AlgebraParams import AlgebraParams
from app.model.Config import Config
from app.model.StateVector import StateVector
from app.params import MOMENTUM_EXP_SIGN, POSITION_EXP_SIGN
from app.utils.algebra import (adjoint, allclose, basis_element, generator_clock, identity, linear_combine,
                               multiply, to_matrix)
from app.utils.errors import IndexRangeError, NotInIdealError
from app.utils.ideals import inverse, matrix_unit, primitive_idempotent
from app.utils.operators import (dft_matrix, dual_idempotent, dual_matrix_unit, dual_set, duality_audit,
                                 duality_map_dft, duality_map_literal, exp_form_report, ideal_to_ket,
                                 ket_to_ideal, momentum_ket, momentum_ket_element, momentum_operator,
                                 position_ket, position_operator, spectrum, translation_momentum,
                                 translation_position)

config = Config()


# OPÉRATEUR POSITION
def test_position_operator_image():
    params = AlgebraParams(4)
    assert_allclose(to_matrix(position_operator(params)).matrix, np.diag([0, 1, 2, 3]), atol=params.tolerance)


def test_position_eigen_relations():
    params = AlgebraParams(6)
    X = position_operator(params)
    for j in range(6):
        eps = primitive_idempotent(params, j)
        assert allclose(multiply(X, eps), j * eps)
        for m in range(6):
            unit = matrix_unit(params, j, m)
            assert allclose(multiply(X, unit), j * unit)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 16])
def test_spectra_are_labels(n):
    params = AlgebraParams(n)
    assert_allclose(spectrum(position_operator(params)).real, np.arange(n), atol=1e-10 * n)
    assert_allclose(spectrum(momentum_operator(params)).real, np.arange(n), atol=1e-10 * n)


# OPÉRATEUR IMPULSION ET DUALITÉ
def test_momentum_eigen_relations():
    params = AlgebraParams(5)
    P = momentum_operator(params)
    assert allclose(adjoint(P), P)
    for j in range(5):
        dual = dual_idempotent(params, j)
        assert allclose(multiply(P, dual), j * dual)
        for m in range(5):
            unit = dual_matrix_unit(params, j, m)
            assert allclose(multiply(P, unit), j * unit)


def test_dual_idempotent_at_origin():
    params = AlgebraParams(4)
    expected = linear_combine([(0.25, basis_element(params, k, 0)) for k in range(4)])
    assert allclose(dual_idempotent(params, 0), expected)
    assert dual_set(params).satisfies_invariants()


@pytest.mark.parametrize("n", [2, 3, 4, 8, 16])
def test_fourier_map_exchanges_points(n):
    params = AlgebraParams(n)
    F = duality_map_dft(params)
    F_inv = inverse(F)
    for j in range(n):
        moved = multiply(multiply(F, primitive_idempotent(params, j)), F_inv)
        assert allclose(moved, dual_idempotent(params, j))


def test_momentum_is_fourier_conjugate_of_position():
    params = AlgebraParams(7)
    F = dft_matrix(7)
    X = to_matrix(position_operator(params)).matrix
    assert_allclose(to_matrix(momentum_operator(params)).matrix, F @ X @ F.conj().T, atol=params.tolerance)


# TRANSLATIONS
def test_translation_advances_position_kets():
    params = AlgebraParams(5)
    T = to_matrix(translation_position(params, 1)).matrix
    for j in range(5):
        assert_allclose(T @ position_ket(params, j).amplitudes, position_ket(params, (j + 1) % 5).amplitudes)
    assert translation_position(params, 2) == basis_element(params, -2, 0)


def test_translation_momentum_advances_momentum_kets():
    params = AlgebraParams(6)
    T = to_matrix(translation_momentum(params, 1)).matrix
    for j in range(6):
        assert_allclose(T @ momentum_ket(params, j).amplitudes, momentum_ket(params, (j + 1) % 6).amplitudes,
                        atol=params.tolerance)


def test_clock_conjugation_permutes_dual_points():
    params = AlgebraParams(5)
    C = to_matrix(generator_clock(params)).matrix
    duals = dual_set(params).matrices()
    for j in range(5):
        assert_allclose(C @ duals[j] @ C.conj().T, duals[(j + 1) % 5], atol=params.tolerance)


# KETS
def test_momentum_kets_are_dft_columns():
    params = AlgebraParams(4)
    kets = np.column_stack([momentum_ket(params, j).amplitudes for j in range(4)])
    assert_allclose(kets, dft_matrix(4), atol=params.tolerance)
    assert_allclose(kets.conj().T @ kets, np.eye(4), atol=params.tolerance)


def test_ideal_ket_round_trip():
    params = AlgebraParams(4)
    psi = StateVector(params, [0.5, 0.5j, -0.5, 0.5])
    element = ket_to_ideal(psi)
    assert_allclose(ideal_to_ket(element).amplitudes, psi.amplitudes, atol=params.tolerance)
    assert allclose(ket_to_ideal(momentum_ket(params, 1)), momentum_ket_element(params, 1))
    with pytest.raises(NotInIdealError):
        ideal_to_ket(identity(params))


def test_inner_product_contract():
    params = AlgebraParams(3)
    phi = StateVector(params, [1, 1j, 0]).normalized()
    psi = StateVector(params, [0, 1, 1]).normalized()
    product = multiply(adjoint(ket_to_ideal(phi)), ket_to_ideal(psi))
    assert allclose(product, phi.inner(psi) * primitive_idempotent(params, 0))
    for i in range(3):
        for j in range(3):
            product = multiply(adjoint(ket_to_ideal(position_ket(params, i))), ket_to_ideal(position_ket(params, j)))
            assert allclose(product, (1.0 if i == j else 0.0) * primitive_idempotent(params, 0))


def test_position_ket_index_range():
    with pytest.raises(IndexRangeError):
        position_ket(AlgebraParams(3), 3)


# FORMES EXPONENTIELLES
@pytest.mark.parametrize("n", range(3, 17))
def test_exponential_signs(n):
    report = exp_form_report(AlgebraParams(n))
    assert report["momentum"]["adopted"] == MOMENTUM_EXP_SIGN
    assert report["position"]["adopted"] == POSITION_EXP_SIGN
    params = AlgebraParams(n)
    assert report["momentum"]["plus"] < params.tolerance
    assert report["position"]["plus"] < params.tolerance
    assert report["position"]["minus"] > 0.1
    assert report["consistent"]
    assert not report["degenerate"]


def test_exponential_signs_coincide_at_n2():
    report = exp_form_report(AlgebraParams(2))
    assert report["degenerate"]
    assert report["consistent"]
    assert report["momentum"]["minus"] < AlgebraParams(2).tolerance


# AUDIT DE LA TRANSFORMATION DE DUALITÉ
@pytest.mark.parametrize("n", range(2, 9))
def test_duality_audit(n):
    params = AlgebraParams(n)
    report = duality_audit(params)
    assert report["matches_dft"]
    assert report["unitarity_deviation"] < params.tolerance
    assert report["conjugation_residual"] < params.tolerance
    assert_allclose(report["dft_fit"]["scalar"], 1.0, atol=params.tolerance)
    assert report == duality_audit(params)


def test_literal_duality_map_is_dft():
    params = AlgebraParams(5)
    assert allclose(duality_map_literal(params), duality_map_dft(params))
