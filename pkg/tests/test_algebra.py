import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.model.AlgebraParams import AlgebraParams
from app.model.Config import Config
from app.utils.algebra import (adjoint, allclose, basis_element, commutator, from_matrix, generator_clock,
                               generator_shift, identity, linear_combine, matrix_images, max_deviation, multiply,
                               multiply_tables, power, random_element, to_matrix, trace, zero)
from app.utils.errors import DimensionError, ParameterMismatchError
from app.utils.ideals import primitive_idempotent
from app.utils.operators import position_operator

config = Config()
rng = np.random.default_rng(config.seed)


# IDENTITY ET ÉLÉMENTS DE BASE
def test_identity_coefficients():
    params = AlgebraParams(2)
    expected = np.zeros((2, 2))
    expected[0, 0] = 1
    assert_allclose(identity(params).coeffs, expected)
    assert_allclose(to_matrix(identity(AlgebraParams(4))).matrix, np.eye(4))


def test_identity_is_unit():
    params = AlgebraParams(3)
    e11 = basis_element(params, 1, 1)
    assert multiply(identity(params), e11) == e11
    assert multiply(e11, identity(params)) == e11


def test_basis_indices_reduce_mod_n():
    params = AlgebraParams(4)
    assert basis_element(params, 5, -1) == basis_element(params, 1, 3)
    assert basis_element(params, 0, 0) == identity(params)


# PRODUIT TORDU
@pytest.mark.parametrize("n", [2, 3, 5, 7, 16, 64])
def test_generator_relations(n):
    params = AlgebraParams(n)
    shift = generator_shift(params)
    clock = generator_clock(params)
    assert allclose(power(shift, n), identity(params))
    assert allclose(power(clock, n), identity(params))
    assert allclose(multiply(shift, clock), params.omega * multiply(clock, shift))


def test_product_rule_by_hand():
    params = AlgebraParams(4)
    e11 = basis_element(params, 1, 1)
    product = multiply(e11, e11)
    expected = np.zeros((4, 4), dtype=complex)
    expected[2, 2] = -1j
    assert_allclose(product.coeffs, expected, atol=params.tolerance)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_fft_and_direct_products_agree(n):
    params = AlgebraParams(n)
    A = random_element(params, rng)
    B = random_element(params, rng)
    fast = multiply(A, B, method="fft")
    slow = multiply(A, B, method="direct")
    assert max_deviation(fast, slow) < params.tolerance


def test_associativity_on_random_triples():
    params = AlgebraParams(8)
    worst = 0.0
    for _ in range(200):
        A, B, C = (random_element(params, rng) for _ in range(3))
        left = multiply(multiply(A, B), C)
        worst = max(worst, max_deviation(left, multiply(A, multiply(B, C))))
    assert worst < params.tolerance


def test_stacked_products_match_multiply():
    params = AlgebraParams(5)
    left = [random_element(params, rng) for _ in range(3)]
    right = [random_element(params, rng) for _ in range(3)]
    stacked = multiply_tables(params, np.array([A.coeffs for A in left]), np.array([B.coeffs for B in right]))
    images = matrix_images(params, stacked)
    for k in range(3):
        product = multiply(left[k], right[k])
        assert_allclose(stacked[k], product.coeffs, atol=params.tolerance)
        assert_allclose(images[k], to_matrix(product).matrix, atol=params.tolerance)
    # one table against a stack broadcasts
    shift = generator_shift(params)
    row = multiply_tables(params, shift.coeffs, np.array([B.coeffs for B in right]))
    assert_allclose(row[1], multiply(shift, right[1]).coeffs, atol=params.tolerance)
    with pytest.raises(DimensionError):
        multiply_tables(params, np.zeros((3, 3)), np.zeros((5, 5)))


def test_multiply_rejects_mismatched_orders():
    with pytest.raises(ParameterMismatchError):
        multiply(identity(AlgebraParams(2)), identity(AlgebraParams(3)))
    with pytest.raises(ValueError):
        multiply(identity(AlgebraParams(2)), identity(AlgebraParams(2)), method="naive")


# COMBINAISONS LINÉAIRES
def test_linear_combine():
    params = AlgebraParams(2)
    A = basis_element(params, 1, 0)
    B = basis_element(params, 0, 1)
    assert linear_combine([(1, A), (0, B)]) == A
    assert linear_combine([(1, A), (-1, A)]) == zero(params)
    half = linear_combine([(0.5, identity(params)), (0.5, B)])
    assert allclose(half, primitive_idempotent(params, 0))
    with pytest.raises(ValueError):
        linear_combine([])


# ADJOINT
def test_adjoint_closed_form():
    params = AlgebraParams(4)
    assert adjoint(identity(params)) == identity(params)
    # (e_b^a)^dagger = omega^{-ab} e_{-b}^{-a}
    assert allclose(adjoint(basis_element(params, 1, 1)), -1j * basis_element(params, 3, 3))


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_adjoint_matches_conjugate_transpose(n):
    params = AlgebraParams(n)
    for a in range(n):
        for b in range(n):
            M = to_matrix(basis_element(params, a, b)).matrix
            assert_allclose(to_matrix(adjoint(basis_element(params, a, b))).matrix, M.conj().T,
                            atol=params.tolerance)


def test_adjoint_involution_and_antihomomorphism():
    params = AlgebraParams(6)
    A = random_element(params, rng)
    B = random_element(params, rng)
    assert allclose(adjoint(adjoint(A)), A)
    assert max_deviation(adjoint(multiply(A, B)), multiply(adjoint(B), adjoint(A))) < params.tolerance


def test_position_operator_is_self_adjoint():
    params = AlgebraParams(5)
    X = position_operator(params)
    assert allclose(adjoint(X), X)


# COMMUTATEUR
def test_commutator():
    params = AlgebraParams(3)
    A = random_element(params, rng)
    assert allclose(commutator(A, A), zero(params))
    expected = (1 - params.omega ** -1) * basis_element(params, 1, 1)
    assert allclose(commutator(generator_shift(params), generator_clock(params)), expected)


def test_commutator_is_traceless():
    params = AlgebraParams(6)
    K = commutator(random_element(params, rng), random_element(params, rng))
    assert abs(trace(K)) < params.tolerance * 100


# REPRÉSENTATION
def test_clock_and_shift_images():
    params = AlgebraParams(2)
    assert_allclose(to_matrix(generator_clock(params)).matrix, np.diag([1, -1]), atol=1e-15)
    params = AlgebraParams(5)
    shift = to_matrix(generator_shift(params)).matrix
    psi = np.arange(5, dtype=complex)
    # (e_0^1 psi)_j = psi_{j+1}
    assert_allclose(shift @ psi, np.roll(psi, -1), atol=1e-14)


def test_representation_is_homomorphism():
    params = AlgebraParams(8)
    for _ in range(100):
        A = random_element(params, rng)
        B = random_element(params, rng)
        product = to_matrix(multiply(A, B)).matrix
        expected = to_matrix(A).matrix @ to_matrix(B).matrix
        assert np.max(np.abs(product - expected)) < params.tolerance


@pytest.mark.parametrize("method", ["fft", "trace"])
def test_from_matrix_round_trip(method):
    params = AlgebraParams(5)
    for a in range(5):
        for b in range(5):
            e = basis_element(params, a, b)
            assert allclose(from_matrix(to_matrix(e), method=method), e)
    assert allclose(from_matrix(np.eye(3), AlgebraParams(3), method=method), identity(AlgebraParams(3)))
    assert allclose(from_matrix(np.diag([1, -1]), AlgebraParams(2), method=method),
                    generator_clock(AlgebraParams(2)))


def test_from_matrix_rejects_bad_shape():
    with pytest.raises(DimensionError):
        from_matrix(np.eye(3), AlgebraParams(4))
    with pytest.raises(ValueError):
        from_matrix(np.eye(3))


# TRACE
def test_trace():
    assert trace(identity(AlgebraParams(4))) == 4
    params = AlgebraParams(5)
    for a in range(5):
        for b in range(5):
            if (a, b) != (0, 0):
                assert abs(trace(basis_element(params, a, b))) == 0
                assert abs(np.trace(to_matrix(basis_element(params, a, b)).matrix)) < params.tolerance
    params = AlgebraParams(6)
    for i in range(6):
        assert_allclose(trace(primitive_idempotent(params, i)), 1.0, atol=params.tolerance)
    A = random_element(params, rng)
    assert_allclose(trace(A), np.trace(to_matrix(A).matrix), atol=params.tolerance * 10)


def test_power_with_negative_exponent():
    params = AlgebraParams(5)
    shift = generator_shift(params)
    assert allclose(power(shift, -1), basis_element(params, -1, 0))
    assert allclose(multiply(power(shift, -2), power(shift, 2)), identity(params))
