"""Channel-model tests: representations, conversions, validation, sampling."""

import numpy as np
import pytest

from unitalqubit.channel import (
    BlochAffineForm,
    KrausForm,
    QubitChannel,
    apply,
    bloch_channel,
    choi_channel,
    choi_spectrum,
    conjugate_channel,
    depolarizing_channel,
    from_choi,
    identity_channel,
    kraus_channel,
    pauli_mixing_channel,
    random_unital_channel,
    random_unitary,
    to_bloch,
    to_choi,
    validate,
)
from unitalqubit.errors import NotPSDError
from unitalqubit.linalg import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, dagger, frobenius, kron

from conftest import PAULIS, pauli_mix_bruteforce, random_density, rng

E12 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
E21 = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)

MAP_CHOI = 0.5 * np.array(
    [[1, 0, 0, 2], [0, 1, 0, 0], [0, 0, 1, 0], [2, 0, 0, 1]], dtype=complex
)

IDENTITY_CHOI = np.zeros((4, 4), dtype=complex)
IDENTITY_CHOI[0, 0] = IDENTITY_CHOI[0, 3] = IDENTITY_CHOI[3, 0] = IDENTITY_CHOI[3, 3] = 1.0


def test_to_choi_depolarizing_is_half_identity():
    c = to_choi(depolarizing_channel()).matrix
    assert frobenius(c - 0.5 * np.eye(4)) <= 1e-14


def test_to_choi_identity_has_corner_ones():
    c = to_choi(identity_channel()).matrix
    assert frobenius(c - IDENTITY_CHOI) <= 1e-14


def test_to_choi_degenerate_disk_scaling_matches_printed_matrix():
    ch = bloch_channel(np.diag([1.0, 1.0, 0.0]))
    assert frobenius(to_choi(ch).matrix - MAP_CHOI) <= 1e-14


def test_to_choi_kraus_agrees_with_generic_assembly():
    ch = random_unital_channel(5)
    assert isinstance(ch.representation, KrausForm)
    c = to_choi(ch).matrix
    blocks = np.empty((4, 4), dtype=complex)
    units = np.zeros((2, 2, 2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            e = np.zeros((2, 2), dtype=complex)
            e[i, j] = 1.0
            blocks[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = apply(ch, e)
    assert frobenius(c - blocks) <= 1e-12


def test_from_choi_depolarizing_rank_and_norms():
    form = from_choi(0.5 * np.eye(4, dtype=complex))
    assert len(form.operators) == 4
    for op in form.operators:
        assert frobenius(op) ** 2 == pytest.approx(0.5, abs=1e-12)


def test_from_choi_rank_one_gives_single_unitary():
    form = from_choi(IDENTITY_CHOI)
    assert len(form.operators) == 1
    op = form.operators[0]
    assert frobenius(dagger(op) @ op - np.eye(2)) <= 1e-12


def test_from_choi_rejects_map_counterexample():
    with pytest.raises(NotPSDError) as err:
        from_choi(MAP_CHOI)
    assert err.value.min_eigenvalue == pytest.approx(-0.5, abs=1e-10)


def test_from_choi_round_trip():
    for seed in range(20):
        c = to_choi(random_unital_channel(seed)).matrix
        back = to_choi(QubitChannel(from_choi(c))).matrix
        assert frobenius(back - c) <= 5e-9


def test_apply_depolarizing_collapses_to_identity():
    gen = rng(1)
    for _ in range(5):
        rho = random_density(gen)
        out = apply(depolarizing_channel(), rho)
        assert frobenius(out - np.trace(rho) / 2.0 * np.eye(2)) <= 1e-14


def test_apply_identity_channel():
    gen = rng(2)
    rho = random_density(gen)
    assert frobenius(apply(identity_channel(), rho) - rho) <= 1e-14


def test_apply_pauli_mixing_against_bruteforce_oracle():
    # Equal mix of identity and Z conjugation kills the off-diagonal unit.
    mix_iz = (0.5, 0.0, 0.0, 0.5)
    assert frobenius(pauli_mix_bruteforce(mix_iz, E12)) <= 1e-15
    assert frobenius(apply(pauli_mixing_channel(mix_iz), E12)) <= 1e-15
    # Equal mix of identity and X conjugation symmetrizes it instead.
    mix_ix = (0.5, 0.5, 0.0, 0.0)
    expected = 0.5 * (E12 + E21)
    assert frobenius(pauli_mix_bruteforce(mix_ix, E12) - expected) <= 1e-15
    assert frobenius(apply(pauli_mixing_channel(mix_ix), E12) - expected) <= 1e-15
    gen = rng(3)
    for _ in range(50):
        coeffs = gen.standard_normal(4)
        rho = gen.standard_normal((2, 2)) + 1j * gen.standard_normal((2, 2))
        got = apply(pauli_mixing_channel(coeffs), rho)
        assert frobenius(got - pauli_mix_bruteforce(coeffs, rho)) <= 1e-13


def test_apply_is_linear():
    gen = rng(4)
    for seed in range(10):
        ch = random_unital_channel(seed)
        a = gen.standard_normal((2, 2)) + 1j * gen.standard_normal((2, 2))
        b = gen.standard_normal((2, 2)) + 1j * gen.standard_normal((2, 2))
        alpha = complex(gen.standard_normal(), gen.standard_normal())
        lhs = apply(ch, alpha * a + b)
        rhs = alpha * apply(ch, a) + apply(ch, b)
        assert frobenius(lhs - rhs) <= 1e-12


def test_validate_depolarizing_all_flags():
    report = validate(depolarizing_channel())
    assert report.valid_channel
    assert report.hermitian_preserving and report.trace_preserving
    assert report.unital and report.completely_positive


def test_validate_map_counterexample_flags_and_witness():
    report = validate(choi_channel(MAP_CHOI))
    assert report.trace_preserving and report.unital and report.hermitian_preserving
    assert not report.completely_positive
    assert report.min_choi_eigenvalue == pytest.approx(-0.5, abs=1e-10)


def test_validate_reflection_scaling_not_cp():
    report = validate(bloch_channel(np.diag([1.0, 1.0, -1.0])))
    assert not report.completely_positive
    assert not report.valid_channel


def test_choi_spectrum_reference_channels():
    assert np.allclose(choi_spectrum(depolarizing_channel()), [0.5] * 4, atol=1e-12)
    u = random_unitary(9)
    unitary_ch = kraus_channel([u])
    assert np.allclose(choi_spectrum(unitary_ch), [2.0, 0.0, 0.0, 0.0], atol=1e-12)
    coeffs = np.array([0.1, 0.4, 0.3, 0.2])
    expected = np.sort(2.0 * coeffs)[::-1]
    assert np.allclose(choi_spectrum(pauli_mixing_channel(coeffs)), expected, atol=1e-12)


def test_to_bloch_diagonal_scaling_and_conjugations():
    d = np.array([0.5, -0.3, 0.2])
    ch = bloch_channel(np.diag(d))
    form = to_bloch(ch)
    assert np.allclose(form.linear, np.diag(d), atol=1e-14)
    assert np.allclose(form.offset, 0.0, atol=1e-14)

    assert np.allclose(to_bloch(depolarizing_channel()).linear, 0.0, atol=1e-14)

    x_conj = kraus_channel([PAULI_X])
    assert np.allclose(to_bloch(x_conj).linear, np.diag([1.0, -1.0, -1.0]), atol=1e-14)


def test_bloch_form_reproduces_apply():
    for seed in range(10):
        ch = random_unital_channel(seed)
        form = to_bloch(ch)
        via_bloch = QubitChannel(BlochAffineForm(form.linear, form.offset))
        gen = rng(100 + seed)
        for _ in range(20):
            rho = random_density(gen)
            assert frobenius(apply(via_bloch, rho) - apply(ch, rho)) <= 1e-9


def test_pauli_choi_spectrum_round_trip():
    gen = rng(11)
    for _ in range(10):
        coeffs = gen.dirichlet(np.ones(4))
        ch = pauli_mixing_channel(coeffs)
        spec = choi_spectrum(ch)
        assert np.allclose(spec, np.sort(2.0 * coeffs)[::-1], atol=1e-12)
        back = to_choi(QubitChannel(from_choi(to_choi(ch).matrix))).matrix
        assert frobenius(back - to_choi(ch).matrix) <= 5e-9


def test_unital_trace_preserving_properties():
    gen = rng(12)
    for seed in range(20):
        ch = random_unital_channel(seed)
        assert frobenius(apply(ch, PAULI_I) - PAULI_I) <= 1e-10
        a = gen.standard_normal((2, 2)) + 1j * gen.standard_normal((2, 2))
        assert abs(np.trace(apply(ch, a)) - np.trace(a)) <= 1e-10


def test_choi_conjugation_law():
    for seed in range(30):
        ch = random_unital_channel(seed)
        u = random_unitary(1000 + seed)
        v = random_unitary(2000 + seed)
        conj = kraus_channel([v @ op @ u for op in ch.representation.operators])
        k = kron(u.T, v)
        expected = k @ to_choi(ch).matrix @ dagger(k)
        assert frobenius(to_choi(conj).matrix - expected) <= 1e-9
        # conjugate_channel builds the same channel through its Choi matrix.
        assert frobenius(to_choi(conjugate_channel(ch, u, v)).matrix - expected) <= 1e-12


def test_random_unitary_properties():
    u = random_unitary(7)
    assert frobenius(dagger(u) @ u - np.eye(2)) <= 1e-12
    assert np.array_equal(u, random_unitary(7))
    mean = np.mean([abs(random_unitary(seed)[0, 0]) ** 2 for seed in range(10_000)])
    assert abs(mean - 0.5) <= 0.02


def test_random_unital_channel_properties():
    for seed in range(10):
        ch = random_unital_channel(seed)
        assert validate(ch).valid_channel
        assert choi_spectrum(ch).sum() == pytest.approx(2.0, abs=1e-10)
    a = random_unital_channel(3)
    b = random_unital_channel(3)
    for op_a, op_b in zip(a.representation.operators, b.representation.operators):
        assert np.array_equal(op_a, op_b)
