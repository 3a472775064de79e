"""Shared helpers for the test suite: seeded random states and
independent brute-force oracles kept deliberately separate from the
library implementations they check."""

import numpy as np

from dqc1lab import DensityMatrix


def random_density_matrix(rng: np.random.Generator, num_qubits: int) -> DensityMatrix:
    d = 2**num_qubits
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityMatrix((m + m.conj().T) / 2, num_qubits)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_product_state(rng: np.random.Generator, num_qubits: int) -> DensityMatrix:
    m = np.array([[1.0 + 0j]])
    for _ in range(num_qubits):
        m = np.kron(m, random_density_matrix(rng, 1).matrix)
    return DensityMatrix(m, num_qubits)


def oracle_partial_transpose(m: np.ndarray, num_qubits: int, cut) -> np.ndarray:
    """Index-arithmetic partial transpose, independent of axis swapping."""
    dim = 2**num_qubits
    out = np.zeros_like(m)
    masks = [1 << (num_qubits - 1 - q) for q in cut]
    for i in range(dim):
        for j in range(dim):
            ti, tj = i, j
            for mask in masks:
                bi, bj = ti & mask, tj & mask
                ti = (ti & ~mask) | bj
                tj = (tj & ~mask) | bi
            out[ti, tj] = m[i, j]
    return out


def oracle_partial_trace(m: np.ndarray, num_qubits: int, keep) -> np.ndarray:
    """Index-arithmetic partial trace, independent of tensor reshaping."""
    keep = sorted(keep)
    traced = [q for q in range(num_qubits) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)

    def embed(sub_index, env_index):
        full = 0
        for pos, q in enumerate(keep):
            bit = (sub_index >> (len(keep) - 1 - pos)) & 1
            full |= bit << (num_qubits - 1 - q)
        for pos, q in enumerate(traced):
            bit = (env_index >> (len(traced) - 1 - pos)) & 1
            full |= bit << (num_qubits - 1 - q)
        return full

    for i in range(dk):
        for j in range(dk):
            for e in range(2 ** len(traced)):
                out[i, j] += m[embed(i, e), embed(j, e)]
    return out
