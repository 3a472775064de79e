import numpy as np
import pytest
from conftest import (
    oracle_partial_trace,
    oracle_partial_transpose,
    random_density_matrix,
    random_product_state,
    random_unitary,
)

import dqc1lab as d
from dqc1lab.dqc1 import PAULI_X, PAULI_Z

I2 = np.eye(2)
I4 = np.eye(4)


def charpoly_coefficients(a: np.ndarray) -> np.ndarray:
    """Faddeev-LeVerrier characteristic polynomial, leading coefficient 1."""
    n = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        if k > 1:
            m = a @ m + coeffs[-1] * np.eye(n)
        ck = -np.trace(a @ m) / k
        coeffs.append(ck)
    return np.array(coeffs)


# --------------------------------------------------------------------------
# kron
# --------------------------------------------------------------------------

def test_kron_identity_case():
    assert np.array_equal(d.kron(I2, I2), I4)


def test_kron_z_z_diagonal():
    assert np.allclose(d.kron(PAULI_Z, PAULI_Z), np.diag([1, -1, -1, 1]))


def test_kron_against_elementwise_oracle():
    u2 = d.build_un(d.canonical_blocks(), 2)
    got = d.kron(PAULI_X, u2)
    expected = np.zeros((8, 8), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(4):
                for l in range(4):
                    expected[i * 4 + k, j * 4 + l] = PAULI_X[i, j] * u2[k, l]
    assert np.array_equal(got, expected)
    assert got[0, 7] == 1


def test_kron_dimension_guard():
    big = np.eye(128)
    with pytest.raises(ValueError, match="exceeds maximum"):
        d.kron(big, np.eye(64))


# --------------------------------------------------------------------------
# hermitian eigenvalues
# --------------------------------------------------------------------------

def test_eigenvalues_of_pauli_z():
    assert np.allclose(d.hermitian_eigenvalues(PAULI_Z), [1, -1])


def test_eigenvalues_descending_and_trace_consistent():
    rng = np.random.default_rng(11)
    for _ in range(20):
        m = random_density_matrix(rng, 3).matrix
        w = d.hermitian_eigenvalues(m)
        assert np.all(np.diff(w) <= 1e-14)
        assert abs(w.sum() - np.trace(m).real) < 1e-10


def test_pt_spectrum_of_rho3_alpha_one():
    pt = d.partial_transpose(d.rho3(1.0).state, d.RHO3_ENTANGLING_CUT)
    got = np.sort(d.hermitian_eigenvalues(pt))
    expected = np.sort([3 / 8] + [1 / 8] * 6 + [-1 / 8])
    assert np.allclose(got, expected, atol=1e-12)


def test_eigenvalues_match_characteristic_polynomial_roots():
    rng = np.random.default_rng(7)
    for _ in range(25):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = (g + g.conj().T) / 2
        roots = np.sort(np.roots(charpoly_coefficients(h)).real)
        got = np.sort(d.hermitian_eigenvalues(h))
        assert np.allclose(got, roots, atol=1e-8)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(ValueError, match="not Hermitian"):
        d.hermitian_eigenvalues(np.array([[0, 1], [0, 0]], dtype=complex))


def test_eigensystem_reconstruction_residual():
    rng = np.random.default_rng(13)
    for _ in range(100):
        dim = int(rng.integers(2, 65))
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = (g + g.conj().T) / 2
        w, v = d.hermitian_eigensystem(h)
        assert np.abs((v * w) @ v.conj().T - h).max() <= 1e-9


# --------------------------------------------------------------------------
# partial transpose
# --------------------------------------------------------------------------

def test_partial_transpose_is_involution():
    rng = np.random.default_rng(3)
    for _ in range(100):
        nq = int(rng.integers(2, 5))
        rho = random_density_matrix(rng, nq)
        size = int(rng.integers(1, nq))
        cut = tuple(sorted(rng.choice(nq, size=size, replace=False)))
        once = d.partial_transpose(rho, cut)
        twice = d.partial_transpose_matrix(once, nq, cut)
        assert np.abs(twice - rho.matrix).max() < 1e-15


def test_transposing_every_qubit_is_full_transpose():
    rng = np.random.default_rng(4)
    rho = random_density_matrix(rng, 3)
    got = d.partial_transpose_matrix(rho.matrix, 3, (0, 1, 2))
    assert np.allclose(got, rho.matrix.T, atol=0)


def test_partial_transpose_matches_index_oracle():
    rng = np.random.default_rng(5)
    rho = random_density_matrix(rng, 3)
    for cut in ((0,), (1,), (2,), (0, 2)):
        got = d.partial_transpose(rho, cut)
        assert np.allclose(got, oracle_partial_transpose(rho.matrix, 3, cut), atol=0)


def test_rho3_cut_identification():
    # only the two register cuts reproduce the split spectrum; the
    # clean-qubit cut keeps the state PPT at every alpha
    alpha = 0.5
    expected = np.sort([0.25] + [0.125] * 6 + [0.0])
    rho = d.rho3(alpha).state
    matching = []
    for cut in ((0,), (1,), (2,)):
        spectrum = np.sort(d.hermitian_eigenvalues(d.partial_transpose(rho, cut)))
        if np.allclose(spectrum, expected, atol=1e-12):
            matching.append(cut)
    assert matching == [(1,), (2,)]
    assert d.RHO3_ENTANGLING_CUT in matching


def test_partial_transpose_rejects_bad_cut():
    rho = d.maximally_mixed(2)
    with pytest.raises(ValueError):
        d.partial_transpose(rho, (5,))
    with pytest.raises(ValueError):
        d.partial_transpose(rho, ())
    # entanglement cuts must leave something on the other side
    with pytest.raises(ValueError):
        d.negativity(rho, (0, 1))


# --------------------------------------------------------------------------
# partial trace
# --------------------------------------------------------------------------

def test_partial_trace_of_product_state():
    rng = np.random.default_rng(6)
    a = random_density_matrix(rng, 1)
    b = random_density_matrix(rng, 2)
    joint = d.DensityMatrix(np.kron(a.matrix, b.matrix), 3)
    assert np.abs(d.partial_trace(joint, (0,)).matrix - a.matrix).max() < 1e-14
    assert np.abs(d.partial_trace(joint, (1, 2)).matrix - b.matrix).max() < 1e-14


def test_register_marginal_stays_maximally_mixed():
    for n in (2, 3):
        u = d.build_un(d.canonical_blocks(), n)
        for alpha in (0.0, 0.5, 1.0):
            s = d.build_dqc1_state(u, alpha)
            reduced = d.partial_trace(s.state, tuple(range(1, n + 1)))
            assert np.abs(reduced.matrix - np.eye(2**n) / 2**n).max() < 1e-14


def test_clean_qubit_marginal_of_rho3():
    # tracing the register out of the three-qubit state leaves I/2 plus
    # an X polarization of alpha/4 inherited from the unitary's trace
    for alpha in (0.0, 0.5, 1.0):
        reduced = d.partial_trace(d.rho3(alpha).state, (0,))
        expected = np.eye(2) / 2 + alpha * PAULI_X / 4
        assert np.abs(reduced.matrix - expected).max() < 1e-14


def test_partial_trace_matches_index_oracle():
    rng = np.random.default_rng(8)
    rho = random_density_matrix(rng, 3)
    for keep in ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2)):
        got = d.partial_trace(rho, keep).matrix
        assert np.abs(got - oracle_partial_trace(rho.matrix, 3, keep)).max() < 1e-14


def test_partial_trace_commutes_over_complements():
    rng = np.random.default_rng(9)
    for _ in range(20):
        rho = random_density_matrix(rng, 4)
        stepwise = d.partial_trace(d.partial_trace(rho, (0, 1, 3)), (0, 1))
        direct = d.partial_trace(rho, (0, 1))
        assert np.abs(stepwise.matrix - direct.matrix).max() < 1e-12


def test_partial_trace_requires_kept_qubit():
    with pytest.raises(ValueError, match="at least one"):
        d.partial_trace(d.maximally_mixed(2), ())


# --------------------------------------------------------------------------
# trace norm
# --------------------------------------------------------------------------

def test_trace_norm_of_states_is_one():
    rng = np.random.default_rng(10)
    for _ in range(10):
        rho = random_density_matrix(rng, 2)
        assert abs(d.trace_norm(rho.matrix) - 1.0) < 1e-12


def test_trace_norm_of_transposed_rho3_peak():
    pt = d.partial_transpose(d.rho3(1.0).state, d.RHO3_ENTANGLING_CUT)
    assert abs(d.trace_norm(pt) - 1.25) < 1e-12


def test_trace_norm_of_pauli_z():
    assert abs(d.trace_norm(PAULI_Z) - 2.0) < 1e-15


# --------------------------------------------------------------------------
# entropies
# --------------------------------------------------------------------------

def test_entropy_of_pure_state_is_zero():
    v = np.array([1, 1j, 0, 0], dtype=complex) / np.sqrt(2)
    rho = d.DensityMatrix(np.outer(v, v.conj()), 2)
    assert abs(d.von_neumann_entropy(rho)) < 1e-12


def test_entropy_of_maximally_mixed_state():
    for n in (1, 2, 3):
        assert abs(d.von_neumann_entropy(d.maximally_mixed(n)) - n) < 1e-12


def test_entropy_of_rho3_at_full_polarization():
    # spectral oracle: the coupling matrix has eigenvalues +1 and -1,
    # four each, so the state spectrum at alpha=1 is {1/4 x4, 0 x4}
    spectrum = np.sort(d.hermitian_eigenvalues(d.rho3(1.0).state.matrix))
    assert np.allclose(spectrum, [0] * 4 + [0.25] * 4, atol=1e-12)
    assert abs(d.von_neumann_entropy(d.rho3(1.0).state) - 2.0) < 1e-12


def test_entropy_invariant_under_conjugation():
    rng = np.random.default_rng(12)
    for _ in range(100):
        nq = int(rng.integers(1, 4))
        rho = random_density_matrix(rng, nq)
        u = random_unitary(rng, 2**nq)
        rotated = d.DensityMatrix(u @ rho.matrix @ u.conj().T, nq)
        assert abs(d.von_neumann_entropy(rotated) - d.von_neumann_entropy(rho)) < 1e-10
        assert 0 <= d.von_neumann_entropy(rho) <= nq + 1e-12


# --------------------------------------------------------------------------
# relative entropy
# --------------------------------------------------------------------------

def test_relative_entropy_of_state_with_itself():
    rng = np.random.default_rng(14)
    rho = random_density_matrix(rng, 2)
    assert abs(d.relative_entropy(rho, rho)) < 1e-12


def test_relative_entropy_to_maximally_mixed():
    rng = np.random.default_rng(15)
    for nq in (1, 2, 3):
        rho = random_density_matrix(rng, nq)
        expected = nq - d.von_neumann_entropy(rho)
        assert abs(d.relative_entropy(rho, d.maximally_mixed(nq)) - expected) < 1e-10


def test_relative_entropy_diagonal_case():
    pure = d.DensityMatrix(np.diag([1.0, 0.0]).astype(complex), 1)
    mixed = d.maximally_mixed(1)
    assert abs(d.relative_entropy(pure, mixed) - 1.0) < 1e-12


def test_relative_entropy_support_violation_is_infinite():
    zero = d.DensityMatrix(np.diag([1.0, 0.0]).astype(complex), 1)
    one = d.DensityMatrix(np.diag([0.0, 1.0]).astype(complex), 1)
    assert d.relative_entropy(one, zero) == float("inf")


def test_relative_entropy_nonnegative_with_equality_iff_equal():
    rng = np.random.default_rng(16)
    for _ in range(100):
        nq = int(rng.integers(1, 4))
        x = random_density_matrix(rng, nq)
        y = random_density_matrix(rng, nq)
        value = d.relative_entropy(x, y)
        assert value >= -1e-12
        if np.abs(x.matrix - y.matrix).max() > 1e-6:
            assert value > 0


# --------------------------------------------------------------------------
# DensityMatrix admission
# --------------------------------------------------------------------------

def test_density_matrix_rejects_non_hermitian():
    m = np.eye(2, dtype=complex) / 2
    m[0, 1] = 1e-6
    with pytest.raises(ValueError, match="Hermitian"):
        d.DensityMatrix(m, 1)


def test_density_matrix_rejects_bad_trace():
    with pytest.raises(ValueError, match="trace"):
        d.DensityMatrix(np.eye(2, dtype=complex), 1)


def test_density_matrix_rejects_negative_eigenvalue():
    with pytest.raises(ValueError, match="eigenvalue"):
        d.DensityMatrix(np.diag([1.5, -0.5]).astype(complex), 1)


def test_density_matrix_accepts_product_states():
    rng = np.random.default_rng(17)
    state = random_product_state(rng, 3)
    assert state.num_qubits == 3
