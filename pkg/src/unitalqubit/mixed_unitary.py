"""Mixed-unitary decompositions of unital qubit channels.

A unital qubit channel with Choi eigenvalues ``lam`` can be written as
``sum_j w_j U_j A U_j*`` for a probability vector ``w`` exactly when ``w`` is
majorized by ``lam / 2``.  This module provides the majorization test, the
two-term weight rebalancing built on phase interpolation, pinching chains
connecting majorized weight vectors, the explicit four-unitary average, the
general decomposition routine, and an independent residual checker.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .canonical import canonicalize
from .channel import QubitChannel, apply, validate
from .errors import (
    CanonicalizationError,
    NotChannelError,
    NotMajorizedError,
    PreconditionViolatedError,
    SumMismatchError,
)
from .linalg import (
    DEFAULT_TOL,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    dagger,
    diagonalize_unitary2,
    frobenius,
)

_PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)
_CANONICAL_ORDER = (PAULI_I, PAULI_Z, PAULI_X, PAULI_Y)

# Entries closer than this are treated as already matched when building a
# pinching chain; weight vectors live on the unit simplex so an absolute
# threshold is appropriate.
_MATCH_EPS = 1e-13


@dataclass
class UnitaryDecomposition:
    """Weights plus unitaries realizing a channel as a unitary mixture."""

    weights: np.ndarray
    unitaries: list[np.ndarray]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        ops = [np.asarray(op, dtype=complex) for op in self.unitaries]
        if w.ndim != 1 or len(ops) != w.shape[0]:
            raise ValueError("weights and unitaries must have matching lengths")
        self.weights = w
        self.unitaries = ops


@dataclass(frozen=True)
class PinchStep:
    """Move ``delta`` of weight from position ``index_pair[0]`` to ``index_pair[1]``.

    Positions index the full descending working vector; every position
    strictly between the pair is already matched with the target, so the
    pair is adjacent once matched entries are deleted.
    """

    index_pair: tuple[int, int]
    delta: float


@dataclass
class MajorizationResult:
    majorized: bool
    violated_prefix: int | None = None


def majorizes(u, v, tol: float = DEFAULT_TOL) -> MajorizationResult:
    """Test ``u majorized-by v`` after zero-padding to a common length.

    Both vectors are sorted descending; the decision compares prefix sums
    with equality required for the full sum (SumMismatchError otherwise).
    On failure the result carries the first violated prefix, 1-based.
    """
    u = np.asarray(u, dtype=float).ravel()
    v = np.asarray(v, dtype=float).ravel()
    m = max(u.size, v.size)
    up = np.zeros(m)
    vp = np.zeros(m)
    up[: u.size] = np.sort(u)[::-1]
    vp[: v.size] = np.sort(v)[::-1]
    total_gap = abs(up.sum() - vp.sum())
    if total_gap > tol:
        raise SumMismatchError(f"vector totals differ by {total_gap:.3e}")
    prefix_u = np.cumsum(up)
    prefix_v = np.cumsum(vp)
    for k in range(m):
        if prefix_u[k] > prefix_v[k] + tol:
            return MajorizationResult(False, violated_prefix=k + 1)
    return MajorizationResult(True)


def solve_phases(
    eta1: float, eta2: float, nu1: float, nu2: float, theta: float, tol: float = DEFAULT_TOL
) -> tuple[float, float]:
    """Phases with ``nu1 e^{i th1} + nu2 e^{i th2} = eta1 + eta2 e^{i theta}``.

    Requires the interlacing ``eta1 >= nu1 >= nu2 >= eta2 >= 0`` and equal
    sums, which make the target length reachable.  The cosine is clamped to
    [-1, 1] to absorb roundoff at the interlacing boundaries, and the
    argument of a vanishing target is taken to be zero.
    """
    if min(eta1, eta2, nu1, nu2) < -tol:
        raise PreconditionViolatedError("weights must be nonnegative")
    if not (eta1 >= nu1 - tol and nu1 >= nu2 - tol and nu2 >= eta2 - tol):
        raise PreconditionViolatedError(
            f"interlacing eta1 >= nu1 >= nu2 >= eta2 violated: ({eta1}, {nu1}, {nu2}, {eta2})"
        )
    if abs((eta1 + eta2) - (nu1 + nu2)) > tol:
        raise PreconditionViolatedError("weight pairs must have equal sums")

    target = eta1 + eta2 * cmath.exp(1j * theta)
    r = abs(target)
    product = 2.0 * nu1 * nu2
    if product <= 0.0:
        phi = 0.0
    else:
        cos_phi = (r * r - nu1 * nu1 - nu2 * nu2) / product
        phi = math.acos(min(1.0, max(-1.0, cos_phi)))
    base = nu1 + nu2 * cmath.exp(1j * phi)
    target_arg = cmath.phase(target) if abs(target) > 0.0 else 0.0
    base_arg = cmath.phase(base) if abs(base) > 0.0 else 0.0
    two_pi = 2.0 * math.pi
    theta1 = (target_arg - base_arg) % two_pi
    theta2 = (phi + theta1) % two_pi
    return theta1, theta2


def rebalance_pair(
    two_term: UnitaryDecomposition, nu1: float, nu2: float, tol: float = DEFAULT_TOL
) -> UnitaryDecomposition:
    """Rewrite ``eta1 V1 A V1* + eta2 V2 A V2*`` with weights (nu1, nu2).

    Valid whenever ``eta1 >= nu1 >= nu2 >= eta2`` with equal sums: factor
    ``V1* V2`` as a conjugated diagonal, split its phase between the two new
    unitaries, and conjugate back.
    """
    if two_term.weights.shape[0] != 2:
        raise ValueError("rebalance_pair expects exactly two terms")
    eta1, eta2 = (float(w) for w in two_term.weights)
    v1, v2 = two_term.unitaries
    _, w, theta = diagonalize_unitary2(dagger(v1) @ v2, tol)
    theta1, theta2 = solve_phases(eta1, eta2, nu1, nu2, theta, tol)
    wh = dagger(w)
    u1 = v1 @ w @ np.diag([1.0, cmath.exp(1j * theta1)]) @ wh
    u2 = v1 @ w @ np.diag([1.0, cmath.exp(1j * theta2)]) @ wh
    return UnitaryDecomposition(np.array([nu1, nu2]), [u1, u2])


def pinch_chain(u, v, tol: float = DEFAULT_TOL) -> list[PinchStep]:
    """Pinching steps that turn ``v`` into ``u`` (both descending, u majorized by v).

    Each step moves ``delta = min(v_j - u_j, u_k - v_k)`` between the first
    adjacent crossing pair of the working vector with matched entries
    deleted, so after the step one more coordinate agrees with the target;
    at most ``len(v) - 1`` steps are emitted.
    """
    u = np.asarray(u, dtype=float).ravel()
    v = np.asarray(v, dtype=float).ravel()
    m = max(u.size, v.size)
    target = np.zeros(m)
    work = np.zeros(m)
    target[: u.size] = np.sort(u)[::-1]
    work[: v.size] = np.sort(v)[::-1]

    result = majorizes(target, work, tol)
    if not result.majorized:
        raise NotMajorizedError(
            f"target is not majorized (prefix {result.violated_prefix})",
            result.violated_prefix,
        )

    steps: list[PinchStep] = []
    for _ in range(m - 1):
        active = [i for i in range(m) if abs(work[i] - target[i]) > _MATCH_EPS]
        if not active:
            break
        crossing = None
        for pos, idx in enumerate(active):
            if work[idx] < target[idx]:
                crossing = pos
                break
        if crossing is None or crossing == 0:
            # Residual disagreement is pure roundoff once no crossing exists.
            break
        p = active[crossing - 1]
        q = active[crossing]
        give = work[p] - target[p]
        take = target[q] - work[q]
        delta = min(give, take)
        if delta <= 0.0:
            break
        steps.append(PinchStep((p, q), float(delta)))
        # Assign the matched endpoint exactly so it stays matched.
        if give <= take:
            work[p] = target[p]
            work[q] += delta
        else:
            work[q] = target[q]
            work[p] -= delta
    return steps


def apply_pinch_steps(v, steps: list[PinchStep]) -> np.ndarray:
    """Replay pinching steps on a (descending) weight vector."""
    work = np.asarray(v, dtype=float).copy()
    for step in steps:
        p, q = step.index_pair
        work[p] -= step.delta
        work[q] += step.delta
    return work


@dataclass
class DecompositionCheck:
    """Residual and sanity defects of a proposed unitary mixture."""

    residual: float
    unitary_defect: float
    weight_sum_defect: float
    min_weight: float

    def ok(self, tol: float = DEFAULT_TOL) -> bool:
        return (
            self.residual <= tol
            and self.unitary_defect <= tol
            and self.weight_sum_defect <= tol
            and self.min_weight >= -tol
        )


def verify(
    dec: UnitaryDecomposition, ch: QubitChannel, tol: float = DEFAULT_TOL
) -> DecompositionCheck:
    """Compare the mixture with the channel over the full Pauli basis.

    The residual is the worst Frobenius distance over the four basis inputs;
    the report also carries the largest unitarity defect and whether the
    weights form a probability distribution.
    """
    residual = 0.0
    for sigma in _PAULIS:
        mix = np.zeros((2, 2), dtype=complex)
        for weight, op in zip(dec.weights, dec.unitaries):
            mix += weight * (op @ sigma @ dagger(op))
        residual = max(residual, frobenius(mix - apply(ch, sigma)))
    unitary_defect = max(
        (frobenius(dagger(op) @ op - PAULI_I) for op in dec.unitaries), default=0.0
    )
    return DecompositionCheck(
        residual=residual,
        unitary_defect=unitary_defect,
        weight_sum_defect=abs(float(dec.weights.sum()) - 1.0),
        min_weight=float(dec.weights.min()) if dec.weights.size else 0.0,
    )


def _base_decomposition(ch: QubitChannel, tol: float, slots: int):
    """Canonical mixture conjugated back into the original frame, zero-padded."""
    cano = canonicalize(ch, tol)
    lam = np.clip(cano.spectrum, 0.0, None)
    weights = np.zeros(slots)
    weights[:4] = lam / 2.0
    uh = dagger(cano.u)
    vh = dagger(cano.v)
    unitaries = [vh @ pauli @ uh for pauli in _CANONICAL_ORDER]
    unitaries.extend(PAULI_I.copy() for _ in range(slots - 4))
    return cano, weights, unitaries


def average_of_four(ch: QubitChannel, tol: float = DEFAULT_TOL) -> UnitaryDecomposition:
    """Write a unital qubit channel as the average of four unitary conjugations.

    In the canonical frame the four unitaries are assembled from
    ``alpha = (sqrt(l1) + i sqrt(l2)) / sqrt(2)`` and
    ``beta = (sqrt(l4) + i sqrt(l3)) / sqrt(2)`` and then conjugated back
    through the canonicalization witnesses.
    """
    report = validate(ch, tol)
    if not report.valid_channel:
        raise NotChannelError("average_of_four requires a CP trace-preserving unital channel")
    cano = canonicalize(ch, tol)
    l1, l2, l3, l4 = np.clip(cano.spectrum, 0.0, None)
    alpha = (math.sqrt(l1) + 1j * math.sqrt(l2)) / math.sqrt(2.0)
    beta = (math.sqrt(l4) + 1j * math.sqrt(l3)) / math.sqrt(2.0)
    ac, bc = np.conj(alpha), np.conj(beta)
    frame = [
        np.array([[alpha, bc], [-beta, ac]]),
        np.array([[alpha, -bc], [beta, ac]]),
        np.array([[ac, beta], [-bc, alpha]]),
        np.array([[ac, -beta], [bc, alpha]]),
    ]
    uh = dagger(cano.u)
    vh = dagger(cano.v)
    dec = UnitaryDecomposition(np.full(4, 0.25), [vh @ vj @ uh for vj in frame])
    check = verify(dec, ch, tol)
    if check.residual > tol:
        raise CanonicalizationError(f"four-unitary average residual {check.residual:.3e}")
    return dec


def decompose(
    ch: QubitChannel, target, tol: float = DEFAULT_TOL
) -> UnitaryDecomposition:
    """Realize the channel as a unitary mixture with the given weights.

    Succeeds exactly when the (descending, zero-padded) target is majorized
    by half the Choi spectrum; otherwise NotMajorizedError reports the first
    violated prefix.  The construction starts from the canonical mixture and
    realizes each pinching step of the chain by a two-term rebalance.
    """
    report = validate(ch, tol)
    if not report.valid_channel:
        raise NotChannelError("decompose requires a CP trace-preserving unital channel")
    target = np.asarray(target, dtype=float).ravel()
    if target.size == 0:
        raise ValueError("target weight vector is empty")
    requested = target.size
    slots = max(requested, 4)
    goal = np.zeros(slots)
    goal[:requested] = np.sort(np.clip(target, 0.0, None))[::-1]

    cano, weights, unitaries = _base_decomposition(ch, tol, slots)
    result = majorizes(goal, weights, tol)
    if not result.majorized:
        raise NotMajorizedError(
            f"target weights are not majorized by half the Choi spectrum "
            f"(prefix {result.violated_prefix})",
            result.violated_prefix,
        )

    for step in pinch_chain(goal, weights, tol):
        p, q = step.index_pair
        eta1, eta2 = weights[p], weights[q]
        nu1, nu2 = eta1 - step.delta, eta2 + step.delta
        pair = rebalance_pair(
            UnitaryDecomposition(np.array([eta1, eta2]), [unitaries[p], unitaries[q]]),
            nu1,
            nu2,
            tol,
        )
        weights[p], weights[q] = nu1, nu2
        unitaries[p], unitaries[q] = pair.unitaries

    # The replayed weights match the goal to accumulated roundoff; snap them.
    return UnitaryDecomposition(goal[:requested].copy(), unitaries[:requested])
