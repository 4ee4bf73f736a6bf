"""Qubit channel model: four interchangeable representations plus conversions.

A channel can be stored as Kraus operators, Pauli-mixing coefficients, a Choi
matrix, or a Bloch affine map.  Conventions, fixed once here and relied on
everywhere else:

* Choi matrix: ``C = sum_ij E_ij (x) Phi(E_ij)`` so block (i, j) of the 4x4
  matrix is ``Phi(E_ij)``.  For Kraus operators this equals
  ``sum_k vec(F_k) vec(F_k)*`` with column-stacking ``vec``.
* Pauli mixing coefficients are ordered (I, X, Y, Z):
  ``Phi(A) = mu_I A + mu_X XAX + mu_Y YAY + mu_Z ZAZ``.
* Bloch form follows the row-vector convention: a state with Bloch row
  vector ``b`` maps to ``b @ linear + offset``, i.e.
  ``linear[i, j] = tr(sigma_j Phi(sigma_i)) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotPSDError
from .linalg import (
    DEFAULT_TOL,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    _su2_from_quaternion,
    dagger,
    frobenius,
    hermitian_eigen4,
    kron,
)

_E00 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
_E01 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_E10 = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
_E11 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
_MATRIX_UNITS = ((_E00, _E01), (_E10, _E11))

# Conjugation order realizing the canonical mixing form: the k-th largest
# Choi eigenvalue weighs conjugation by _CANONICAL_PAULIS[k].
_CANONICAL_PAULIS = (PAULI_I, PAULI_Z, PAULI_X, PAULI_Y)


@dataclass
class KrausForm:
    """Operator-sum representation ``Phi(A) = sum_j F_j A F_j*``."""

    operators: list[np.ndarray]

    def __post_init__(self):
        ops = [np.asarray(op, dtype=complex) for op in self.operators]
        if not 1 <= len(ops) <= 16:
            raise ValueError(f"expected 1..16 Kraus operators, got {len(ops)}")
        for op in ops:
            if op.shape != (2, 2):
                raise ValueError(f"Kraus operators must be 2x2, got shape {op.shape}")
        self.operators = ops


@dataclass
class PauliMixingForm:
    """Coefficients (mu_I, mu_X, mu_Y, mu_Z) of a Pauli conjugation mixture."""

    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.shape != (4,):
            raise ValueError(f"expected 4 mixing coefficients, got shape {coeffs.shape}")
        self.coefficients = coeffs


@dataclass
class ChoiForm:
    """The 4x4 Choi matrix ``sum_ij E_ij (x) Phi(E_ij)``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"Choi matrix must be 4x4, got shape {m.shape}")
        self.matrix = m


@dataclass
class BlochAffineForm:
    """Affine action on Bloch row vectors: ``b -> b @ linear + offset``."""

    linear: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        lin = np.asarray(self.linear, dtype=float)
        off = np.asarray(self.offset, dtype=float)
        if lin.shape != (3, 3):
            raise ValueError(f"Bloch linear part must be 3x3, got shape {lin.shape}")
        if off.shape != (3,):
            raise ValueError(f"Bloch offset must have 3 entries, got shape {off.shape}")
        self.linear = lin
        self.offset = off


Representation = KrausForm | PauliMixingForm | ChoiForm | BlochAffineForm

_KIND_BY_TYPE = {
    KrausForm: "kraus",
    PauliMixingForm: "pauli",
    ChoiForm: "choi",
    BlochAffineForm: "bloch",
}


@dataclass
class QubitChannel:
    """A qubit channel in one tagged representation."""

    representation: Representation

    @property
    def kind(self) -> str:
        return _KIND_BY_TYPE[type(self.representation)]


def kraus_channel(operators) -> QubitChannel:
    return QubitChannel(KrausForm(list(operators)))


def pauli_mixing_channel(coefficients) -> QubitChannel:
    return QubitChannel(PauliMixingForm(np.asarray(coefficients, dtype=float)))


def choi_channel(matrix) -> QubitChannel:
    return QubitChannel(ChoiForm(np.asarray(matrix, dtype=complex)))


def bloch_channel(linear, offset=None) -> QubitChannel:
    if offset is None:
        offset = np.zeros(3)
    return QubitChannel(BlochAffineForm(np.asarray(linear, dtype=float), np.asarray(offset, dtype=float)))


def identity_channel() -> QubitChannel:
    return pauli_mixing_channel([1.0, 0.0, 0.0, 0.0])


def depolarizing_channel() -> QubitChannel:
    """The fully depolarizing channel ``A -> tr(A)/2 * I``."""
    return pauli_mixing_channel([0.25, 0.25, 0.25, 0.25])


def _vec(matrix: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(matrix, dtype=complex).T.reshape(-1)


def _unvec(vector: np.ndarray) -> np.ndarray:
    return np.asarray(vector, dtype=complex).reshape(2, 2).T


def apply(ch: QubitChannel, rho: np.ndarray) -> np.ndarray:
    """Apply the channel to a 2x2 matrix in whatever representation is stored."""
    rho = np.asarray(rho, dtype=complex)
    rep = ch.representation
    if isinstance(rep, KrausForm):
        out = np.zeros((2, 2), dtype=complex)
        for op in rep.operators:
            out += op @ rho @ dagger(op)
        return out
    if isinstance(rep, PauliMixingForm):
        mi, mx, my, mz = rep.coefficients
        a, b = rho[0, 0], rho[0, 1]
        c, d = rho[1, 0], rho[1, 1]
        return np.array(
            [
                [(mi + mz) * a + (mx + my) * d, (mi - mz) * b + (mx - my) * c],
                [(mi - mz) * c + (mx - my) * b, (mi + mz) * d + (mx + my) * a],
            ]
        )
    if isinstance(rep, ChoiForm):
        blocks = rep.matrix.reshape(2, 2, 2, 2)  # [i, k, j, l] = Phi(E_ij)[k, l]
        return np.einsum("ij,ikjl->kl", rho, blocks)
    if isinstance(rep, BlochAffineForm):
        c0 = (rho[0, 0] + rho[1, 1]) / 2.0
        bvec = np.array(
            [
                (rho[1, 0] + rho[0, 1]) / 2.0,
                (rho[0, 1] - rho[1, 0]) * 0.5j,
                (rho[0, 0] - rho[1, 1]) / 2.0,
            ]
        )
        out = bvec @ rep.linear.astype(complex) + c0 * rep.offset
        return np.array(
            [
                [c0 + out[2], out[0] - 1j * out[1]],
                [out[0] + 1j * out[1], c0 - out[2]],
            ]
        )
    raise TypeError(f"unsupported representation {type(rep)!r}")


def to_choi(ch: QubitChannel) -> ChoiForm:
    """Choi matrix of the channel; block (i, j) is the image of E_ij."""
    rep = ch.representation
    if isinstance(rep, ChoiForm):
        return ChoiForm(rep.matrix.copy())
    if isinstance(rep, KrausForm):
        c = np.zeros((4, 4), dtype=complex)
        for op in rep.operators:
            v = _vec(op)
            c += np.outer(v, np.conj(v))
        return ChoiForm(c)
    c = np.empty((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            c[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = apply(ch, _MATRIX_UNITS[i][j])
    return ChoiForm(c)


def from_choi(c: ChoiForm | np.ndarray, tol: float = DEFAULT_TOL) -> KrausForm:
    """Extract Kraus operators from a PSD Choi matrix.

    Eigenvalues in [-tol, 0] are clamped to zero; anything below -tol raises
    NotPSDError carrying the most negative eigenvalue.  The number of
    operators equals the rank of the matrix at threshold ``tol``.
    """
    matrix = c.matrix if isinstance(c, ChoiForm) else np.asarray(c, dtype=complex)
    eig = hermitian_eigen4(matrix, tol)
    min_eig = float(eig.eigenvalues[-1])
    if min_eig < -tol:
        raise NotPSDError(
            f"Choi matrix is not PSD: most negative eigenvalue {min_eig:.6g}", min_eig
        )
    ops = []
    for lam, vec in zip(eig.eigenvalues, eig.eigenvectors.T):
        if lam > tol:
            ops.append(_unvec(math.sqrt(lam) * vec))
    if not ops:
        ops.append(np.zeros((2, 2), dtype=complex))
    return KrausForm(ops)


@dataclass
class ValidationReport:
    """Channel-validity flags plus the witnesses behind each decision."""

    hermitian_preserving: bool
    trace_preserving: bool
    unital: bool
    completely_positive: bool
    hermitian_defect: float
    trace_defect: float
    unital_defect: float
    min_choi_eigenvalue: float

    @property
    def valid_channel(self) -> bool:
        return (
            self.hermitian_preserving
            and self.trace_preserving
            and self.unital
            and self.completely_positive
        )


def validate(ch: QubitChannel, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check Hermitian preservation, trace preservation, unitality and CP."""
    c = to_choi(ch).matrix
    herm_defect = frobenius(c - dagger(c))
    hermitian_preserving = herm_defect <= tol * max(1.0, frobenius(c))

    trace_defect = 0.0
    for i in range(2):
        for j in range(2):
            block_trace = c[2 * i, 2 * j] + c[2 * i + 1, 2 * j + 1]
            trace_defect = max(trace_defect, abs(block_trace - (1.0 if i == j else 0.0)))
    trace_preserving = trace_defect <= tol

    unital_defect = frobenius(c[0:2, 0:2] + c[2:4, 2:4] - PAULI_I)
    unital = unital_defect <= tol

    sym = (c + dagger(c)) / 2.0
    min_eig = float(hermitian_eigen4(sym, tol).eigenvalues[-1])
    completely_positive = hermitian_preserving and min_eig >= -tol

    return ValidationReport(
        hermitian_preserving=hermitian_preserving,
        trace_preserving=trace_preserving,
        unital=unital,
        completely_positive=completely_positive,
        hermitian_defect=herm_defect,
        trace_defect=float(trace_defect),
        unital_defect=unital_defect,
        min_choi_eigenvalue=min_eig,
    )


def choi_spectrum(ch: QubitChannel, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Descending Choi eigenvalues; sums to 2 for trace-preserving channels."""
    return hermitian_eigen4(to_choi(ch).matrix, tol).eigenvalues


def to_bloch(ch: QubitChannel) -> BlochAffineForm:
    """Extract the Bloch affine action via trace inner products."""
    paulis = (PAULI_X, PAULI_Y, PAULI_Z)
    linear = np.empty((3, 3))
    for i, sigma_in in enumerate(paulis):
        image = apply(ch, sigma_in)
        for j, sigma_out in enumerate(paulis):
            linear[i, j] = np.trace(sigma_out @ image).real / 2.0
    image_id = apply(ch, PAULI_I)
    offset = np.array([np.trace(sigma @ image_id).real / 2.0 for sigma in paulis])
    return BlochAffineForm(linear, offset)


def conjugate_channel(ch: QubitChannel, u: np.ndarray, v: np.ndarray) -> QubitChannel:
    """The channel ``A -> v Phi(u A u*) v*``, built through its Choi matrix.

    Conjugating the input by ``u`` and the output by ``v`` conjugates the
    Choi matrix by ``u^t (x) v``, which is exact for every representation.
    """
    k = kron(np.asarray(u, dtype=complex).T, np.asarray(v, dtype=complex))
    return choi_channel(k @ to_choi(ch).matrix @ dagger(k))


def _rng(seed: int) -> np.random.Generator:
    # Philox is counter-based, so seeded streams are reproducible and
    # independent across parallel sweeps.
    return np.random.Generator(np.random.Philox(seed))


def _haar_su2(gen: np.random.Generator) -> np.ndarray:
    while True:
        w, x, y, z = gen.standard_normal(4)
        norm = math.sqrt(w * w + x * x + y * y + z * z)
        if norm > 1e-12:
            return _su2_from_quaternion(w / norm, x / norm, y / norm, z / norm)


def random_unitary(seed: int) -> np.ndarray:
    """Haar-random SU(2) element via a normalized Gaussian quaternion."""
    return _haar_su2(_rng(seed))


def random_unital_channel(seed: int) -> QubitChannel:
    """A random unital qubit channel, deterministic per seed.

    The Choi spectrum is drawn uniformly from the simplex summing to two
    (normalized exponentials); the canonical mixture it defines is then
    conjugated on both sides by independent Haar-random unitaries.
    """
    gen = _rng(seed)
    exps = gen.standard_exponential(4)
    lam = np.sort(2.0 * exps / exps.sum())[::-1]
    u = _haar_su2(gen)
    v = _haar_su2(gen)
    ops = [
        math.sqrt(lam[k] / 2.0) * (v @ pauli @ u)
        for k, pauli in enumerate(_CANONICAL_PAULIS)
        if lam[k] > 0.0
    ]
    return QubitChannel(KrausForm(ops))
