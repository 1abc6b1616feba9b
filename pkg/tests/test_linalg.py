"""Tests for the dense bipartite linear-algebra core."""
import numpy as np
import pytest

from schmidtnum.distill import example_state
from schmidtnum.errors import ValidationError
from schmidtnum.linalg import (
    BipartiteOperator,
    hermitian_eigensystem,
    is_psd,
    kron,
    partial_trace,
    partial_transpose,
)


def random_hermitian(rng, n):
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (G + G.conj().T) / 2


def hand_maxent_projector(d):
    """P+ built entry-by-entry, independent of the states module."""
    P = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            P[i * d + i, j * d + j] = 1.0 / d
    return P


# ------------------------------------------------------------ operator type

def test_operator_rejects_non_hermitian():
    M = np.zeros((4, 4), dtype=complex)
    M[0, 1] = 1.0  # no conjugate partner
    with pytest.raises(ValidationError):
        BipartiteOperator(M, 2)


def test_operator_rejects_dimension_mismatch():
    with pytest.raises(ValidationError):
        BipartiteOperator(np.eye(4), 3)
    with pytest.raises(ValidationError):
        BipartiteOperator(np.eye(6), 2)


def test_operator_rejects_non_square():
    with pytest.raises(ValidationError):
        BipartiteOperator(np.ones((4, 2)), 2)


def test_from_matrix_infers_local_dim_and_flag():
    op = BipartiteOperator.from_matrix(np.eye(9) / 9)
    assert op.local_dim == 3
    assert op.normalized
    op = BipartiteOperator.from_matrix(np.eye(9))
    assert not op.normalized
    with pytest.raises(ValidationError):
        BipartiteOperator.from_matrix(np.eye(5))  # 5 is not d^2


# -------------------------------------------------------------------- kron

def test_kron_identities():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    out = kron(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    assert np.array_equal(out, np.diag([0.0, 1.0, 0.0, 0.0]))


def test_kron_bit_flip_pair_maps_00_to_11():
    X = np.array([[0.0, 1.0], [1.0, 0.0]])
    v00 = np.array([1.0, 0.0, 0.0, 0.0])
    v11 = np.array([0.0, 0.0, 0.0, 1.0])
    assert np.allclose(kron(X, X) @ v00, v11)


def test_kron_spectrum_is_pairwise_products():
    rng = np.random.default_rng(7)
    A = random_hermitian(rng, 2)
    B = random_hermitian(rng, 3)
    got = np.sort(np.linalg.eigvalsh(kron(A, B)))
    expected = np.sort(np.outer(np.linalg.eigvalsh(A),
                                np.linalg.eigvalsh(B)).ravel())
    assert np.allclose(got, expected, atol=1e-9)


def test_kron_rejects_non_square():
    with pytest.raises(ValidationError):
        kron(np.ones((2, 3)), np.eye(2))


# -------------------------------------------------------- partial transpose

def test_partial_transpose_of_product():
    rng = np.random.default_rng(11)
    A = random_hermitian(rng, 3)
    B = random_hermitian(rng, 3)
    op = BipartiteOperator.from_matrix(np.kron(A, B))
    assert np.allclose(partial_transpose(op).matrix, np.kron(A, B.T), atol=1e-12)


def test_partial_transpose_maxent_d2_is_half_swap():
    op = BipartiteOperator.from_matrix(hand_maxent_projector(2))
    half_swap = 0.5 * np.array([
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ], dtype=complex)
    pt = partial_transpose(op)
    assert np.allclose(pt.matrix, half_swap, atol=1e-12)
    assert np.allclose(np.linalg.eigvalsh(pt.matrix),
                       [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_partial_transpose_is_trace_preserving_involution():
    rng = np.random.default_rng(3)
    op = BipartiteOperator.from_matrix(random_hermitian(rng, 9))
    pt = partial_transpose(op)
    assert np.allclose(pt.trace, op.trace, atol=1e-12)
    assert np.allclose(partial_transpose(pt).matrix, op.matrix, atol=1e-14)


def test_partial_transpose_keeps_a_marginal():
    rng = np.random.default_rng(5)
    op = BipartiteOperator.from_matrix(random_hermitian(rng, 16))
    assert np.allclose(
        partial_trace(partial_transpose(op), "B"),
        partial_trace(op, "B"),
        atol=1e-12,
    )


# ------------------------------------------------------------ partial trace

def test_partial_trace_of_product():
    rng = np.random.default_rng(13)
    A = random_hermitian(rng, 3)
    B = random_hermitian(rng, 3)
    op = BipartiteOperator.from_matrix(np.kron(A, B))
    assert np.allclose(partial_trace(op, "B"), A * np.trace(B), atol=1e-12)
    assert np.allclose(partial_trace(op, "A"), B * np.trace(A), atol=1e-12)


def test_partial_trace_of_maxent_is_maximally_mixed():
    op = BipartiteOperator.from_matrix(hand_maxent_projector(3))
    assert np.allclose(partial_trace(op, "B"), np.eye(3) / 3, atol=1e-12)


def test_partial_trace_of_schmidt_form_state():
    a = np.array([0.8, 0.6, 0.0])
    v = np.zeros(9)
    v[[0, 4, 8]] = a
    op = BipartiteOperator.from_matrix(np.outer(v, v))
    assert np.allclose(partial_trace(op, "B"), np.diag(a**2), atol=1e-12)
    assert np.allclose(partial_trace(op, "A"), np.diag(a**2), atol=1e-12)


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(17)
    op = BipartiteOperator.from_matrix(random_hermitian(rng, 9))
    assert np.isclose(np.trace(partial_trace(op, "B")).real, op.trace)


def test_partial_trace_rejects_bad_selector():
    op = BipartiteOperator.from_matrix(np.eye(4))
    with pytest.raises(ValidationError):
        partial_trace(op, "C")


# ------------------------------------------------------------- eigensystem

def test_eigensystem_sorted_ascending():
    w, _ = hermitian_eigensystem(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1.0, 2.0, 3.0])


def test_eigensystem_reconstructs_and_satisfies_eigenequations():
    rng = np.random.default_rng(19)
    M = random_hermitian(rng, 8)
    w, V = hermitian_eigensystem(M)
    assert np.max(np.abs(V @ np.diag(w) @ V.conj().T - M)) <= 1e-8
    for i in range(8):
        assert np.linalg.norm(M @ V[:, i] - w[i] * V[:, i]) <= 1e-8
    assert abs(np.sum(w) - np.trace(M).real) <= 1e-9


def test_eigensystem_on_transposed_example_state():
    pt = partial_transpose(example_state())
    w, _ = hermitian_eigensystem(pt.matrix)
    assert abs(w[0] + 0.125) <= 1e-12


def test_eigensystem_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        hermitian_eigensystem(np.array([[0.0, 1.0], [0.0, 0.0]]))


# -------------------------------------------------------------------- psd

def test_is_psd_basic_cases():
    assert is_psd(np.eye(4), tol=1e-10)
    assert not is_psd(np.diag([1.0, -0.5]), tol=1e-10)


def test_is_psd_isotropic_boundary():
    # 1 - P+ is a projector complement: spectrum {0, 1}, PSD with a kernel.
    M = np.eye(9) - hand_maxent_projector(3)
    assert is_psd(M, tol=1e-10)
    assert np.isclose(np.linalg.eigvalsh(M)[0], 0.0, atol=1e-12)
