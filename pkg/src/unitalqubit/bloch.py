"""Bloch-sphere geometry of unital qubit channels.

A channel in canonical mixing form scales the Bloch axes by a signed triple
``d = (d1, d2, d3)``; the sphere maps onto the ellipsoid with those
semi-axes.  The triples realizable by actual channels form the regular
tetrahedron with vertices (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1), and this
module provides the spectrum/scaling correspondence, membership tests,
barycentric coordinates, the ordered-cone reduction with its explicit convex
decomposition, and the scaling-equivalence predicate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import PauliMixingForm, QubitChannel
from .errors import NotInConeError, NotInTetrahedronError, OrderingViolatedError
from .linalg import DEFAULT_TOL

#: Vertices of the admissible tetrahedron; each is a unitary conjugation.
TETRA_VERTICES = np.array(
    [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
)

#: Generators of the ordered cone and the mixing channels realizing them.
ORDERED_CONE_GENERATORS = np.array(
    [[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [1.0, 0.0, 0.0], [1.0 / 3.0, 1.0 / 3.0, -1.0 / 3.0]]
)
_ORDERED_CONE_MIXINGS = (
    (0.25, 0.25, 0.25, 0.25),
    (1.0, 0.0, 0.0, 0.0),
    (0.5, 0.5, 0.0, 0.0),
    (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0),
)


def scaling_from_spectrum(spectrum) -> np.ndarray:
    """Axis scalings of the canonical channel with the given Choi spectrum."""
    l1, l2, l3, l4 = np.asarray(spectrum, dtype=float)
    return np.array(
        [(l1 + l2 - l3 - l4) / 2.0, (l1 - l2 + l3 - l4) / 2.0, (l1 - l2 - l3 + l4) / 2.0]
    )


def spectrum_from_scaling(d) -> np.ndarray:
    """Choi eigenvalues (unsorted) of the diagonal channel scaling by ``d``.

    Inverse of :func:`scaling_from_spectrum`: composing the two maps in
    either order is the positional identity.
    """
    d1, d2, d3 = np.asarray(d, dtype=float)
    return np.array(
        [
            (1.0 + d1 + d2 + d3) / 2.0,
            (1.0 + d1 - d2 - d3) / 2.0,
            (1.0 - d1 + d2 - d3) / 2.0,
            (1.0 - d1 - d2 + d3) / 2.0,
        ]
    )


def channel_from_scaling(d) -> QubitChannel:
    """The diagonal Bloch map as a Pauli mixture (not necessarily CP)."""
    return QubitChannel(PauliMixingForm(spectrum_from_scaling(d) / 2.0))


@dataclass
class ScalingTest:
    """Membership decision plus the four linear witnesses behind it."""

    accepted: bool
    witnesses: np.ndarray


def is_channel_scaling(d, tol: float = DEFAULT_TOL) -> ScalingTest:
    """Whether the scaling triple is realized by a unital qubit channel."""
    d1, d2, d3 = np.asarray(d, dtype=float)
    witnesses = np.array(
        [
            1.0 + d1 + d2 + d3,
            1.0 + d1 - d2 - d3,
            1.0 - d1 + d2 - d3,
            1.0 - d1 - d2 + d3,
        ]
    )
    return ScalingTest(bool(np.all(witnesses >= -tol)), witnesses)


def tetra_coordinates(d, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Barycentric coordinates of ``d`` relative to the tetrahedron vertices."""
    test = is_channel_scaling(d, tol)
    if not test.accepted:
        raise NotInTetrahedronError(
            f"scaling {np.asarray(d, dtype=float).tolist()} is outside the tetrahedron"
        )
    return test.witnesses / 4.0


def ordered_cone_test(d, tol: float = DEFAULT_TOL) -> bool:
    """Channel test on the ordered domain d1 >= d2 >= |d3|."""
    d1, d2, d3 = np.asarray(d, dtype=float)
    if d1 < d2 - tol or d2 < abs(d3) - tol:
        raise OrderingViolatedError(f"scaling ({d1}, {d2}, {d3}) violates d1 >= d2 >= |d3|")
    return bool(1.0 + d3 >= d1 + d2 - tol)


@dataclass
class OrderedConeDecomposition:
    """Convex weights over the four ordered-cone generators."""

    coefficients: np.ndarray
    channels: list[PauliMixingForm]


def ordered_cone_decomposition(d, tol: float = DEFAULT_TOL) -> OrderedConeDecomposition:
    """Write an ordered scaling as a convex mix of the cone generators.

    The generators are the origin, (1,1,1), (1,0,0) and (1,1,-1)/3; the
    matching channels are the fully depolarizing map, the identity, the
    equal mix of identity and X conjugation, and the equal mix of identity,
    X and Y conjugations.
    """
    d1, d2, d3 = np.asarray(d, dtype=float)
    if not ordered_cone_test((d1, d2, d3), tol):
        raise NotInConeError(f"scaling ({d1}, {d2}, {d3}) is outside the ordered cone")
    coeffs = np.array(
        [
            1.0 + d3 - d1 - d2,          # origin
            (d2 + d3) / 2.0,             # (1, 1, 1)
            d1 - d2,                     # (1, 0, 0)
            1.5 * (d2 - d3),             # (1, 1, -1)/3
        ]
    )
    if np.any(coeffs < -tol):
        raise NotInConeError(f"scaling ({d1}, {d2}, {d3}) is outside the ordered cone")
    coeffs = np.clip(coeffs, 0.0, None)
    coeffs /= coeffs.sum()
    channels = [PauliMixingForm(np.array(m)) for m in _ORDERED_CONE_MIXINGS]
    return OrderedConeDecomposition(coeffs, channels)


def scaling_equivalent(d, e, tol: float = DEFAULT_TOL) -> bool:
    """Whether two scalings come from unitarily equivalent diagonal channels.

    True exactly when the sorted absolute values agree entrywise and the
    products of the signed entries agree; tolerances are absolute.
    """
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    abs_match = bool(np.all(np.abs(np.sort(np.abs(d)) - np.sort(np.abs(e))) <= tol))
    return abs_match and abs(np.prod(d) - np.prod(e)) <= tol


def ordered_representative(d) -> np.ndarray:
    """Equivalent scaling satisfying d1 >= d2 >= |d3|.

    Sorts the absolute values descending and moves the product's sign onto
    the smallest axis, which preserves scaling equivalence.
    """
    d = np.asarray(d, dtype=float)
    rep = np.sort(np.abs(d))[::-1]
    if np.prod(d) < 0.0:
        rep = rep.copy()
        rep[2] = -rep[2]
    return rep
