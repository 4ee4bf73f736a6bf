"""Canonical-form and equivalence tests: gadget permutations, the constructive
reduction, the canonical Choi template, and the spectra-based decision."""

import numpy as np
import pytest

from unitalqubit.canonical import (
    _WORDS,
    canonical_choi_matrix,
    canonical_mixing_channel,
    canonicalize,
    pauli_permute,
    unitarily_equivalent,
)
from unitalqubit.channel import (
    apply,
    bloch_channel,
    choi_spectrum,
    conjugate_channel,
    kraus_channel,
    pauli_mixing_channel,
    random_unital_channel,
    random_unitary,
    to_choi,
)
from unitalqubit.errors import (
    NotHermitianPreservingError,
    NotTracePreservingError,
    NotUnitalError,
)
from unitalqubit.linalg import dagger, frobenius

from conftest import PAULIS, rng

ALL_PERMS = [
    (a, b, c, d)
    for a in range(4)
    for b in range(4)
    for c in range(4)
    for d in range(4)
    if len({a, b, c, d}) == 4
]


def _gadget_residual(ch, gadget_in, gadget_out, result):
    worst = 0.0
    for sigma in PAULIS:
        lhs = gadget_out @ apply(ch, gadget_in @ sigma @ dagger(gadget_in)) @ dagger(gadget_out)
        worst = max(worst, frobenius(lhs - apply(result, sigma)))
    return worst


def test_pauli_permute_identity():
    ch = pauli_mixing_channel([0.4, 0.3, 0.2, 0.1])
    gin, gout, result = pauli_permute(ch, (0, 1, 2, 3))
    assert np.array_equal(gin, np.eye(2))
    assert np.array_equal(gout, np.eye(2))
    assert np.array_equal(result.representation.coefficients, [0.4, 0.3, 0.2, 0.1])


def test_pauli_permute_xz_swap_pattern():
    # Conjugating both sides by (X+Z)/sqrt2 exchanges the X and Z coefficients.
    ch = pauli_mixing_channel([0.4, 0.3, 0.2, 0.1])
    gin, gout, result = pauli_permute(ch, (0, 3, 2, 1))
    assert np.array_equal(result.representation.coefficients, [0.4, 0.1, 0.2, 0.3])
    assert np.allclose(gin, gout, atol=1e-14)
    assert _gadget_residual(ch, gin, gout, result) <= 1e-12


def test_pauli_permute_chain_four_cycle_within_three_gadgets():
    perm = (2, 3, 1, 0)  # cycles the I, Z, X, Y slots
    assert len(_WORDS[perm]) <= 3
    ch = pauli_mixing_channel([0.4, 0.3, 0.2, 0.1])
    gin, gout, result = pauli_permute(ch, perm)
    assert np.array_equal(
        result.representation.coefficients, np.array([0.4, 0.3, 0.2, 0.1])[list(perm)]
    )
    assert _gadget_residual(ch, gin, gout, result) <= 1e-12


def test_pauli_permute_round_trip_exact():
    gen = rng(77)
    coeffs = gen.standard_normal(4)
    ch = pauli_mixing_channel(coeffs)
    for perm in ALL_PERMS:
        inverse = tuple(int(np.argsort(perm)[k]) for k in range(4))
        _, _, once = pauli_permute(ch, perm)
        _, _, back = pauli_permute(once, inverse)
        assert np.array_equal(back.representation.coefficients, coeffs)


def test_pauli_permute_all_24_by_apply_comparison():
    ch = pauli_mixing_channel([0.45, 0.25, 0.2, 0.1])
    for perm in ALL_PERMS:
        gin, gout, result = pauli_permute(ch, perm)
        assert frobenius(dagger(gin) @ gin - np.eye(2)) <= 1e-14
        assert frobenius(dagger(gout) @ gout - np.eye(2)) <= 1e-14
        assert _gadget_residual(ch, gin, gout, result) <= 1e-12


def test_canonicalize_fixed_point():
    # Coefficients already in canonical order (mu_I >= mu_Z >= mu_X >= mu_Y).
    ch = pauli_mixing_channel([0.4, 0.2, 0.1, 0.3])
    cano = canonicalize(ch)
    assert np.array_equal(cano.canonical.representation.coefficients, [0.4, 0.2, 0.1, 0.3])
    assert np.allclose(cano.spectrum, [0.8, 0.6, 0.4, 0.2], atol=1e-14)
    for witness in (cano.u, cano.v):
        assert min(frobenius(witness - np.eye(2)), frobenius(witness + np.eye(2))) <= 1e-12
    assert cano.residual <= 1e-12


def test_canonicalize_unitary_channel_is_identity_class():
    for seed in range(10):
        w = random_unitary(300 + seed)
        cano = canonicalize(kraus_channel([w]))
        assert np.allclose(cano.spectrum, [2.0, 0.0, 0.0, 0.0], atol=1e-9)
        assert np.allclose(
            cano.canonical.representation.coefficients, [1.0, 0.0, 0.0, 0.0], atol=1e-9
        )


def test_canonicalize_random_channels_residual_and_template():
    for seed in range(50):
        ch = random_unital_channel(seed)
        cano = canonicalize(ch)
        assert cano.residual <= 1e-8
        template = canonical_choi_matrix(cano.spectrum)
        assert np.max(np.abs(to_choi(cano.canonical).matrix - template)) <= 1e-8
        assert np.max(np.abs(cano.spectrum - choi_spectrum(ch))) <= 1e-7


def test_canonicalize_non_cp_map():
    # The disk projection (1,1,0) is unital and TP but not CP.
    cano = canonicalize(bloch_channel(np.diag([1.0, 1.0, 0.0])))
    assert np.allclose(cano.spectrum, [1.5, 0.5, 0.5, -0.5], atol=1e-12)


def test_canonicalize_idempotent():
    for seed in range(20):
        cano = canonicalize(random_unital_channel(seed))
        again = canonicalize(cano.canonical)
        assert np.max(np.abs(again.spectrum - cano.spectrum)) <= 1e-8
        assert np.max(
            np.abs(
                again.canonical.representation.coefficients
                - cano.canonical.representation.coefficients
            )
        ) <= 1e-8


def test_spectrum_invariant_under_conjugation():
    for seed in range(20):
        ch = random_unital_channel(seed)
        conj = conjugate_channel(ch, random_unitary(500 + seed), random_unitary(600 + seed))
        assert np.max(np.abs(choi_spectrum(ch) - choi_spectrum(conj))) <= 1e-9


def test_canonicalize_precondition_errors():
    with pytest.raises(NotTracePreservingError):
        canonicalize(kraus_channel([np.diag([1.0, 0.5])]))
    gamma = 0.3
    damping = kraus_channel(
        [np.diag([1.0, np.sqrt(1.0 - gamma)]), np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]])]
    )
    with pytest.raises(NotUnitalError):
        canonicalize(damping)
    broken = to_choi(pauli_mixing_channel([1.0, 0.0, 0.0, 0.0])).matrix.copy()
    broken[0, 1] = 0.3j
    from unitalqubit.channel import choi_channel

    with pytest.raises(NotHermitianPreservingError):
        canonicalize(choi_channel(broken))


def test_equivalent_constructed_pairs_with_witness():
    for seed in range(20):
        ch = random_unital_channel(seed)
        u = random_unitary(700 + seed)
        v = random_unitary(800 + seed)
        conj = conjugate_channel(ch, u, v)
        result = unitarily_equivalent(ch, conj)
        assert result.equivalent
        assert result.residual <= 1e-8
        # The witness realizes conj(A) = v ch(u A u*) v* on the Pauli basis.
        for sigma in PAULIS:
            lhs = result.v @ apply(ch, result.u @ sigma @ dagger(result.u)) @ dagger(result.v)
            assert frobenius(lhs - apply(conj, sigma)) <= 1e-8


def test_equivalent_for_permuted_mixing_coefficients():
    a = pauli_mixing_channel([0.4, 0.3, 0.2, 0.1])
    b = pauli_mixing_channel([0.1, 0.2, 0.3, 0.4])
    result = unitarily_equivalent(a, b)
    assert result.equivalent
    assert result.residual <= 1e-10


def test_not_equivalent_reports_gap():
    a = pauli_mixing_channel([0.4, 0.3, 0.2, 0.1])
    b = pauli_mixing_channel([0.4, 0.3, 0.25, 0.05])
    result = unitarily_equivalent(a, b)
    assert not result.equivalent
    assert result.gap == pytest.approx(0.1, abs=1e-12)
    assert result.u is None and result.v is None


def test_equivalence_is_an_equivalence_relation():
    channels = [random_unital_channel(seed) for seed in range(8)]
    conj1 = [
        conjugate_channel(ch, random_unitary(900 + k), random_unitary(950 + k))
        for k, ch in enumerate(channels)
    ]
    conj2 = [
        conjugate_channel(ch, random_unitary(960 + k), random_unitary(990 + k))
        for k, ch in enumerate(channels)
    ]
    for ch in channels:
        assert unitarily_equivalent(ch, ch).equivalent
    for a, b, c in zip(channels, conj1, conj2):
        ab = unitarily_equivalent(a, b)
        ba = unitarily_equivalent(b, a)
        bc = unitarily_equivalent(b, c)
        ac = unitarily_equivalent(a, c)
        assert ab.equivalent and ba.equivalent and bc.equivalent and ac.equivalent
    # Distinct random spectra are symmetric in rejection as well.
    reject_ab = unitarily_equivalent(channels[0], channels[1])
    reject_ba = unitarily_equivalent(channels[1], channels[0])
    assert reject_ab.equivalent == reject_ba.equivalent


def test_canonical_mixing_channel_matches_template():
    gen = rng(13)
    lam = np.sort(gen.dirichlet(np.ones(4)) * 2.0)[::-1]
    ch = canonical_mixing_channel(lam)
    assert np.max(np.abs(to_choi(ch).matrix - canonical_choi_matrix(lam))) <= 1e-15
