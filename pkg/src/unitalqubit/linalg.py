"""Dense complex matrix kernel for 2x2 and 4x4 problems.

Everything downstream (channel representations, canonical forms, unitary
mixtures, Bloch geometry) is built on the handful of routines in this module:
the Pauli matrices, a cyclic Jacobi eigensolver for 4x4 Hermitian matrices,
a closed-form diagonalization of 2x2 unitaries, and the quaternion lift from
SO(3) rotations to SU(2).

All functions are pure; matrices are numpy arrays treated as immutable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergenceError, NotHermitianError, NotRotationError, NotUnitaryError

#: Default tolerance used by every operation that takes a ``tol`` argument.
DEFAULT_TOL = 1e-9

_JACOBI_SWEEPS = 64
_JACOBI_OFFDIAG_FACTOR = 1e-14

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# Self-inverse unitaries whose conjugation permutes the Pauli axes:
# HADAMARD_XZ exchanges X and Z (negating Y), HADAMARD_XY exchanges X and Y
# (negating Z).  Together with Z itself they generate every coefficient
# permutation used by the canonicalization module.
HADAMARD_XZ = (PAULI_X + PAULI_Z) / math.sqrt(2.0)
HADAMARD_XY = (PAULI_X + PAULI_Y) / math.sqrt(2.0)


def pauli_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return fresh copies of (I, X, Y, Z)."""
    return PAULI_I.copy(), PAULI_X.copy(), PAULI_Y.copy(), PAULI_Z.copy()


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(a)).T


def frobenius(a: np.ndarray) -> float:
    """Frobenius norm as a plain float."""
    return float(np.linalg.norm(np.asarray(a)))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with block order: entry (i, j) of ``a`` scales block (i, j)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


@dataclass
class HermitianEigen4:
    """Eigendecomposition of a 4x4 Hermitian matrix.

    ``eigenvalues`` are descending; ``eigenvectors`` holds the matching
    orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eigen4(a: np.ndarray, tol: float = DEFAULT_TOL) -> HermitianEigen4:
    """Diagonalize a 4x4 Hermitian matrix with cyclic Jacobi rotations.

    The input must satisfy ``||a - a*||_F <= tol * ||a||_F``; otherwise
    NotHermitianError is raised.  Convergence is declared when every
    off-diagonal magnitude falls below ``1e-14 * ||a||_F``; the sweep budget
    is 64 and NoConvergenceError is raised if it is exhausted.
    """
    a = np.asarray(a, dtype=complex)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    fro = frobenius(a)
    herm_defect = frobenius(a - dagger(a))
    if herm_defect > tol * fro:
        raise NotHermitianError(
            f"matrix is not Hermitian: defect {herm_defect:.3e} exceeds {tol:.1e} * norm"
        )

    # Plain Python complex arithmetic is markedly faster than numpy scalars
    # at this size; work on nested lists and convert back at the end.
    h = ((a + dagger(a)) / 2.0).tolist()
    q = [[1.0 + 0.0j if i == j else 0.0j for j in range(4)] for i in range(4)]
    thresh = _JACOBI_OFFDIAG_FACTOR * fro

    converged = False
    for _ in range(_JACOBI_SWEEPS):
        off = max(
            abs(h[0][1]), abs(h[0][2]), abs(h[0][3]),
            abs(h[1][2]), abs(h[1][3]), abs(h[2][3]),
        )
        if off <= thresh:
            converged = True
            break
        for p, r_ in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
            apq = h[p][r_]
            mag = abs(apq)
            if mag <= thresh:
                continue
            app = h[p][p].real
            aqq = h[r_][r_].real
            phase = apq / mag
            tau = (aqq - app) / (2.0 * mag)
            if tau >= 0.0:
                t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
            cp = c * phase
            sp = s * phase
            cpb = c * phase.conjugate()
            spb = s * phase.conjugate()
            for i in range(4):
                hip = h[i][p]
                hiq = h[i][r_]
                h[i][p] = cp * hip - s * hiq
                h[i][r_] = sp * hip + c * hiq
            for j in range(4):
                hpj = h[p][j]
                hqj = h[r_][j]
                h[p][j] = cpb * hpj - s * hqj
                h[r_][j] = spb * hpj + c * hqj
            # Analytic updates keep the pivot block exactly diagonal.
            h[p][p] = complex(app - t * mag, 0.0)
            h[r_][r_] = complex(aqq + t * mag, 0.0)
            h[p][r_] = 0.0j
            h[r_][p] = 0.0j
            for i in range(4):
                qip = q[i][p]
                qiq = q[i][r_]
                q[i][p] = cp * qip - s * qiq
                q[i][r_] = sp * qip + c * qiq
    if not converged:
        raise NoConvergenceError(f"Jacobi sweeps exhausted ({_JACOBI_SWEEPS})")

    values = np.array([h[i][i].real for i in range(4)])
    vectors = np.array(q, dtype=complex)
    order = np.argsort(-values, kind="stable")
    return HermitianEigen4(values[order], vectors[:, order])


def diagonalize_unitary2(
    u: np.ndarray, tol: float = DEFAULT_TOL
) -> tuple[complex, np.ndarray, float]:
    """Factor a 2x2 unitary as ``phase * w @ diag(1, exp(i*theta)) @ w*``.

    Returns ``(phase, w, theta)`` with ``|phase| = 1``, ``w`` unitary and
    ``theta`` in [0, 2*pi).  Raises NotUnitaryError when ``u`` fails the
    unitarity check at ``tol``.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {u.shape}")
    defect = frobenius(dagger(u) @ u - PAULI_I)
    if not defect <= tol:
        raise NotUnitaryError(f"matrix is not unitary: defect {defect:.3e}")

    tr = u[0, 0] + u[1, 1]
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    disc = cmath.sqrt(tr * tr - 4.0 * det)
    mu1 = (tr + disc) / 2.0
    mu2 = (tr - disc) / 2.0

    # Columns of (u - mu2*I) span the mu1 eigenspace; take the larger one.
    cand_a = np.array([u[0, 1], mu1 - u[0, 0]])
    cand_b = np.array([mu1 - u[1, 1], u[1, 0]])
    na, nb = np.linalg.norm(cand_a), np.linalg.norm(cand_b)
    if max(na, nb) <= 1e-15:
        # Scalar matrix: any basis diagonalizes it.
        w = PAULI_I.copy()
    else:
        vec = cand_a / na if na >= nb else cand_b / nb
        w = np.array([[vec[0], -np.conj(vec[1])], [vec[1], np.conj(vec[0])]])

    phase = mu1 / abs(mu1)
    theta = cmath.phase(mu2 / mu1) % (2.0 * math.pi)
    return phase, w, theta


def _su2_from_quaternion(w: float, x: float, y: float, z: float) -> np.ndarray:
    """Unit quaternion -> SU(2) matrix whose conjugation rotates the Bloch axes."""
    return np.array(
        [[complex(w, -z), complex(-y, -x)], [complex(y, -x), complex(w, z)]]
    )


def su2_from_so3(r: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Lift a proper rotation to SU(2) (determinant one, sign arbitrary).

    The returned ``u`` reproduces ``r`` through its adjoint action on the
    Pauli axes: ``tr(sigma_i @ u @ sigma_j @ u*) / 2 == r[j, i]``, i.e. the
    channel ``A -> u A u*`` has ``r`` as its Bloch-vector matrix in the
    row-vector convention used throughout this package.  Both ``u`` and
    ``-u`` are valid lifts; callers must not rely on the sign.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {r.shape}")
    orth_defect = frobenius(r.T @ r - np.eye(3))
    if not orth_defect <= tol:
        raise NotRotationError(f"matrix is not orthogonal: defect {orth_defect:.3e}")
    if np.linalg.det(r) < 0.0:
        raise NotRotationError("matrix is a reflection (determinant -1)")

    m = r.T  # column-vector rotation convention for the quaternion extraction
    t0 = 1.0 + m[0, 0] + m[1, 1] + m[2, 2]
    t1 = 1.0 + m[0, 0] - m[1, 1] - m[2, 2]
    t2 = 1.0 - m[0, 0] + m[1, 1] - m[2, 2]
    t3 = 1.0 - m[0, 0] - m[1, 1] + m[2, 2]
    pivot = max(range(4), key=lambda k: (t0, t1, t2, t3)[k])
    if pivot == 0:
        s = 2.0 * math.sqrt(max(t0, 0.0))
        quat = (s / 4.0, (m[2, 1] - m[1, 2]) / s, (m[0, 2] - m[2, 0]) / s, (m[1, 0] - m[0, 1]) / s)
    elif pivot == 1:
        s = 2.0 * math.sqrt(max(t1, 0.0))
        quat = ((m[2, 1] - m[1, 2]) / s, s / 4.0, (m[0, 1] + m[1, 0]) / s, (m[0, 2] + m[2, 0]) / s)
    elif pivot == 2:
        s = 2.0 * math.sqrt(max(t2, 0.0))
        quat = ((m[0, 2] - m[2, 0]) / s, (m[0, 1] + m[1, 0]) / s, s / 4.0, (m[1, 2] + m[2, 1]) / s)
    else:
        s = 2.0 * math.sqrt(max(t3, 0.0))
        quat = ((m[1, 0] - m[0, 1]) / s, (m[0, 2] + m[2, 0]) / s, (m[1, 2] + m[2, 1]) / s, s / 4.0)
    norm = math.sqrt(sum(component * component for component in quat))
    w, x, y, z = (component / norm for component in quat)
    return _su2_from_quaternion(w, x, y, z)
