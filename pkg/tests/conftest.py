"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from unitalqubit.linalg import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, dagger

PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_hermitian4(gen: np.random.Generator) -> np.ndarray:
    a = gen.standard_normal((4, 4)) + 1j * gen.standard_normal((4, 4))
    return (a + dagger(a)) / 2.0


def random_density(gen: np.random.Generator) -> np.ndarray:
    g = gen.standard_normal((2, 2)) + 1j * gen.standard_normal((2, 2))
    rho = g @ dagger(g)
    return rho / np.trace(rho)


def random_su2(gen: np.random.Generator) -> np.ndarray:
    w, x, y, z = gen.standard_normal(4)
    n = np.sqrt(w * w + x * x + y * y + z * z)
    w, x, y, z = w / n, x / n, y / n, z / n
    return np.array([[complex(w, -z), complex(-y, -x)], [complex(y, -x), complex(w, z)]])


def random_rotation(gen: np.random.Generator) -> np.ndarray:
    """Proper rotation built by QR, independent of the quaternion machinery."""
    q, r = np.linalg.qr(gen.standard_normal((3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 2] = -q[:, 2]
    return q


def adjoint_rotation(u: np.ndarray) -> np.ndarray:
    """Bloch rotation of conjugation by ``u`` in the row-vector convention."""
    out = np.empty((3, 3))
    for i, si in enumerate(PAULIS[1:]):
        img = u @ si @ dagger(u)
        for j, sj in enumerate(PAULIS[1:]):
            out[i, j] = np.trace(sj @ img).real / 2.0
    return out


def pauli_mix_bruteforce(coefficients, rho: np.ndarray) -> np.ndarray:
    """Direct matrix-arithmetic oracle for a Pauli conjugation mixture."""
    mi, mx, my, mz = coefficients
    return (
        mi * rho
        + mx * PAULI_X @ rho @ PAULI_X
        + my * PAULI_Y @ rho @ PAULI_Y
        + mz * PAULI_Z @ rho @ PAULI_Z
    )


@pytest.fixture
def philox():
    return rng
