"""Canonical mixing form of unital trace-preserving maps, with explicit witnesses.

Every unital trace-preserving Hermitian-preserving map on 2x2 matrices can be
conjugated by local unitaries into a mixture of Pauli conjugations whose
weights are half the Choi eigenvalues, with the k-th largest eigenvalue
attached to conjugation by I, Z, X, Y in that order.  The reduction here is
fully constructive: extract the Bloch matrix, take a signed SVD, lift the two
rotations to SU(2), and sort the resulting weights with conjugation gadgets
built from the two axis-swapping Hadamard-like unitaries and Z.  The output
is verified against the closed-form canonical Choi matrix and the reduction
fails loudly if the residual exceeds tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import spectrum_from_scaling
from .channel import (
    PauliMixingForm,
    QubitChannel,
    apply,
    to_bloch,
    to_choi,
)
from .errors import (
    CanonicalizationError,
    NotHermitianPreservingError,
    NotTracePreservingError,
    NotUnitalError,
)
from .linalg import (
    DEFAULT_TOL,
    HADAMARD_XY,
    HADAMARD_XZ,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    dagger,
    frobenius,
    su2_from_so3,
)

#: Absolute per-entry tolerance for spectra comparisons in equivalence tests.
#: Looser than the arithmetic default because each spectrum passes through an
#: eigensolver.
SPECTRUM_MATCH_TOL = 1e-7

_PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)

# Coefficient-permutation generators.  Each entry is (lookup, gadget_in,
# gadget_out): conjugating the input by gadget_in and the output by
# gadget_out permutes the (I, X, Y, Z) mixing coefficients so that slot k of
# the result holds slot lookup[k] of the original.  The three lookups are
# adjacent transpositions of the chain I-Z-X-Y, so they generate all 24
# permutations.
_GENERATORS = (
    ((3, 1, 2, 0), HADAMARD_XY, PAULI_Z @ HADAMARD_XY),  # swap I and Z slots
    ((0, 3, 2, 1), HADAMARD_XZ, HADAMARD_XZ),            # swap X and Z slots
    ((0, 2, 1, 3), HADAMARD_XY, HADAMARD_XY),            # swap X and Y slots
)

_IDENTITY_PERM = (0, 1, 2, 3)


def _gadget_words() -> dict[tuple[int, int, int, int], tuple[int, ...]]:
    """Breadth-first shortest generator words for all 24 slot permutations."""
    words: dict[tuple[int, int, int, int], tuple[int, ...]] = {_IDENTITY_PERM: ()}
    frontier = [_IDENTITY_PERM]
    while frontier:
        nxt = []
        for perm in frontier:
            word = words[perm]
            for gen_index, (lookup, _, _) in enumerate(_GENERATORS):
                child = tuple(perm[lookup[k]] for k in range(4))
                if child not in words:
                    words[child] = word + (gen_index,)
                    nxt.append(child)
        frontier = nxt
    return words


_WORDS = _gadget_words()


def pauli_permute(
    ch: QubitChannel, perm
) -> tuple[np.ndarray, np.ndarray, QubitChannel]:
    """Permute Pauli-mixing coefficients by conjugation gadgets.

    Returns ``(gadget_in, gadget_out, result)`` where the result channel has
    ``coefficients[k] = ch.coefficients[perm[k]]`` and equals
    ``A -> gadget_out @ ch(gadget_in @ A @ gadget_in*) @ gadget_out*``.
    """
    rep = ch.representation
    if not isinstance(rep, PauliMixingForm):
        raise TypeError("pauli_permute requires a channel in Pauli mixing form")
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != [0, 1, 2, 3]:
        raise ValueError(f"not a permutation of (0, 1, 2, 3): {perm}")

    gadget_in = PAULI_I.copy()
    gadget_out = PAULI_I.copy()
    for gen_index in _WORDS[perm]:
        _, gin, gout = _GENERATORS[gen_index]
        gadget_in = gadget_in @ gin
        gadget_out = gout @ gadget_out
    result = QubitChannel(PauliMixingForm(rep.coefficients[list(perm)]))
    return gadget_in, gadget_out, result


def canonical_choi_matrix(spectrum) -> np.ndarray:
    """Closed-form Choi matrix of the canonical channel with this spectrum."""
    l1, l2, l3, l4 = np.asarray(spectrum, dtype=float)
    return 0.5 * np.array(
        [
            [l1 + l2, 0.0, 0.0, l1 - l2],
            [0.0, l3 + l4, l3 - l4, 0.0],
            [0.0, l3 - l4, l3 + l4, 0.0],
            [l1 - l2, 0.0, 0.0, l1 + l2],
        ],
        dtype=complex,
    )


def canonical_mixing_channel(spectrum) -> QubitChannel:
    """Canonical mixture: weights spectrum/2 on conjugation by I, Z, X, Y."""
    l1, l2, l3, l4 = np.asarray(spectrum, dtype=float)
    return QubitChannel(PauliMixingForm(np.array([l1, l3, l4, l2]) / 2.0))


@dataclass
class Canonicalization:
    """Local-unitary reduction of a channel to its canonical mixture.

    ``A -> v @ ch(u @ A @ u*) @ v*`` agrees with ``canonical`` on the Pauli
    basis to within ``residual``; ``spectrum`` holds the descending Choi
    eigenvalues that parameterize the form.
    """

    u: np.ndarray
    v: np.ndarray
    spectrum: np.ndarray
    canonical: QubitChannel
    residual: float


def _conjugation_residual(
    ch: QubitChannel, u: np.ndarray, v: np.ndarray, reference: QubitChannel
) -> float:
    vh = dagger(v)
    uh = dagger(u)
    residual = 0.0
    for sigma in _PAULIS:
        lhs = v @ apply(ch, u @ sigma @ uh) @ vh
        residual = max(residual, frobenius(lhs - apply(reference, sigma)))
    return residual


def canonicalize(ch: QubitChannel, tol: float = DEFAULT_TOL) -> Canonicalization:
    """Reduce a unital trace-preserving Hermitian-preserving map to canonical form.

    Complete positivity is not required.  Raises NotUnitalError,
    NotTracePreservingError or NotHermitianPreservingError when the
    preconditions fail, and CanonicalizationError if the verified residual
    exceeds ``tol``.
    """
    c = to_choi(ch).matrix
    herm_defect = frobenius(c - dagger(c))
    if herm_defect > tol * max(1.0, frobenius(c)):
        raise NotHermitianPreservingError(f"Choi matrix is not Hermitian: defect {herm_defect:.3e}")
    trace_defect = max(
        abs(c[2 * i, 2 * j] + c[2 * i + 1, 2 * j + 1] - (1.0 if i == j else 0.0))
        for i in range(2)
        for j in range(2)
    )
    if trace_defect > tol:
        raise NotTracePreservingError(f"map is not trace preserving: defect {trace_defect:.3e}")
    unital_defect = frobenius(c[0:2, 0:2] + c[2:4, 2:4] - PAULI_I)
    if unital_defect > tol:
        raise NotUnitalError(f"map is not unital: defect {unital_defect:.3e}")

    rep = ch.representation
    if isinstance(rep, PauliMixingForm):
        mi, mx, my, mz = rep.coefficients
        if mi >= mz >= mx >= my:
            # Already in canonical order: the identity witnesses it.
            lam = 2.0 * np.array([mi, mz, mx, my])
            canonical = QubitChannel(PauliMixingForm(rep.coefficients.copy()))
            return Canonicalization(
                u=PAULI_I.copy(),
                v=PAULI_I.copy(),
                spectrum=lam,
                canonical=canonical,
                residual=0.0,
            )

    t = to_bloch(ch).linear
    if frobenius(t) <= tol:
        # Fully depolarizing: every frame is equally canonical.
        u0 = PAULI_I.copy()
        v0 = PAULI_I.copy()
        d = np.zeros(3)
    else:
        left, sing, right_t = np.linalg.svd(t)
        sign_left = float(np.sign(np.linalg.det(left)))
        sign_right = float(np.sign(np.linalg.det(right_t)))
        rot1 = left @ np.diag([1.0, 1.0, sign_left])
        rot2 = right_t.T @ np.diag([1.0, 1.0, sign_right])
        # Both factors are now rotations; any net reflection sign sits on the
        # smallest singular value.
        d = np.array([sing[0], sing[1], sing[2] * sign_left * sign_right])
        u0 = su2_from_so3(rot1.T, tol)
        v0 = su2_from_so3(rot2, tol)

    coeffs = spectrum_from_scaling(d) / 2.0
    lam = np.sort(2.0 * coeffs)[::-1]
    target = np.array([lam[0], lam[2], lam[3], lam[1]]) / 2.0

    # Exact value matching is safe here: the target entries are the sorted
    # coefficients themselves.
    used = [False] * 4
    perm = []
    for value in target:
        for j in range(4):
            if not used[j] and coeffs[j] == value:
                used[j] = True
                perm.append(j)
                break
        else:
            raise CanonicalizationError("internal: coefficient matching failed")

    diag_channel = QubitChannel(PauliMixingForm(coeffs))
    gadget_in, gadget_out, canonical = pauli_permute(diag_channel, perm)
    u = u0 @ gadget_in
    v = gadget_out @ v0

    residual = _conjugation_residual(ch, u, v, canonical)
    template_defect = frobenius(to_choi(canonical).matrix - canonical_choi_matrix(lam))
    if residual > tol or template_defect > tol:
        raise CanonicalizationError(
            f"canonical reduction failed: residual {residual:.3e}, template defect {template_defect:.3e}"
        )
    return Canonicalization(u=u, v=v, spectrum=lam, canonical=canonical, residual=residual)


@dataclass
class EquivalenceResult:
    """Decision of a local-unitary equivalence test.

    On acceptance ``u``, ``v`` witness ``b(A) = v @ a(u A u*) @ v*`` with the
    stated residual; on rejection they are None and ``gap`` reports the
    largest entrywise spectra difference.
    """

    equivalent: bool
    spectrum_a: np.ndarray
    spectrum_b: np.ndarray
    gap: float
    u: np.ndarray | None = None
    v: np.ndarray | None = None
    residual: float | None = None


def unitarily_equivalent(
    a: QubitChannel, b: QubitChannel, tol: float = SPECTRUM_MATCH_TOL
) -> EquivalenceResult:
    """Decide local-unitary equivalence of two unital channels.

    Equivalence holds exactly when the Choi spectra agree (entrywise, after
    sorting, at absolute tolerance ``tol``); witnesses are composed from the
    two canonical reductions.
    """
    ca = canonicalize(a)
    cb = canonicalize(b)
    gap = float(np.max(np.abs(ca.spectrum - cb.spectrum)))
    if gap > tol:
        return EquivalenceResult(
            equivalent=False, spectrum_a=ca.spectrum, spectrum_b=cb.spectrum, gap=gap
        )
    u = ca.u @ dagger(cb.u)
    v = dagger(cb.v) @ ca.v
    residual = _conjugation_residual(a, u, v, b)
    return EquivalenceResult(
        equivalent=True,
        spectrum_a=ca.spectrum,
        spectrum_b=cb.spectrum,
        gap=gap,
        u=u,
        v=v,
        residual=residual,
    )
