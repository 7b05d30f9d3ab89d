import numpy as np
import pytest

from gbs_locc import states
from gbs_locc.states import (
    apply_local,
    build_h,
    build_x,
    build_z,
    equal_up_to_phase,
    gbs_state,
    gram_deviation,
    lemma1_deviation,
    lemma1_max_deviation,
    psi0,
    ricochet,
)
from gbs_locc.weyl import DomainError, GbsIndex, conjugate_by_h, h_alpha_valid


def test_build_x_2():
    np.testing.assert_array_equal(build_x(2), [[0, 1], [1, 0]])


def test_build_z_2():
    np.testing.assert_allclose(build_z(2), np.diag([1, -1]), atol=1e-15)


def test_x_order():
    np.testing.assert_allclose(np.linalg.matrix_power(build_x(4), 4), np.eye(4), atol=1e-12)


@pytest.mark.parametrize("d", [0, 1])
def test_bad_dimension(d):
    with pytest.raises(DomainError):
        build_x(d)
    with pytest.raises(DomainError):
        build_z(d)


@pytest.mark.parametrize("d", range(2, 11))
def test_clock_shift_relation(d):
    w = np.exp(2j * np.pi / d)
    np.testing.assert_allclose(build_z(d) @ build_x(d), w * build_x(d) @ build_z(d), atol=1e-12)


def test_h0_d2():
    np.testing.assert_allclose(build_h(0, 2), np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)


def test_h_entry_formula():
    h = build_h(1, 4)
    # s_1 = 1 + 2 + 3 = 6
    expected = np.exp(2j * np.pi * (-np.arange(4) * 1 - 6) / 4) / 2
    np.testing.assert_allclose(h[:, 1], expected, atol=1e-12)


@pytest.mark.parametrize("d", range(2, 13))
def test_h_unitary(d):
    for alpha in range(d):
        h = build_h(alpha, d)
        assert np.max(np.abs(h @ h.conj().T - np.eye(d))) < 1e-10


def test_h_alpha_range():
    with pytest.raises(DomainError):
        build_h(4, 4)
    with pytest.raises(DomainError):
        build_h(-1, 4)


def test_psi0():
    np.testing.assert_allclose(
        gbs_state(4, 0, 0), np.eye(4).reshape(16) / 2, atol=1e-15
    )


def test_amplitude_formula():
    d, m, n = 5, 2, 3
    w = np.exp(2j * np.pi / d)
    psi = gbs_state(d, m, n)
    for i in range(d):
        assert abs(psi[((i + m) % d) * d + i] - w ** (n * i) / np.sqrt(d)) < 1e-12
    assert np.count_nonzero(np.abs(psi) > 1e-14) == d


def test_definition_via_kron():
    for d in (3, 4, 6):
        for m in range(d):
            for n in range(d):
                u = np.linalg.matrix_power(build_x(d), m) @ np.linalg.matrix_power(build_z(d), n)
                np.testing.assert_allclose(
                    gbs_state(d, m, n), np.kron(u, np.eye(d)) @ psi0(d), atol=1e-12
                )


def test_exceptional1_pattern():
    # |n,0> + |n+1,1> + ... + |0,n> + ... for n = 2, d = 4: the X^n state
    d, n = 4, 2
    pattern = np.zeros(d * d)
    for i in range(d):
        pattern[((i + n) % d) * d + i] = 1
    np.testing.assert_allclose(gbs_state(d, n, 0), pattern / 2, atol=1e-15)
    # with Z^n on top the support is the same and the signs alternate
    signs = np.array([(-1) ** (k % d) for k in range(d * d)])
    np.testing.assert_allclose(gbs_state(d, n, n), pattern / 2 * signs, atol=1e-15)


@pytest.mark.parametrize("d", range(2, 11))
def test_orthonormal_basis(d):
    assert gram_deviation(d) < 1e-12


def test_gbs_out_of_range():
    with pytest.raises(DomainError):
        gbs_state(4, 4, 0)


class TestApplyLocal:
    def test_identity(self):
        s = gbs_state(5, 1, 3)
        np.testing.assert_allclose(apply_local(np.eye(5), np.eye(5), s), s, atol=1e-15)

    def test_matches_kron(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        s = rng.normal(size=16) + 1j * rng.normal(size=16)
        np.testing.assert_allclose(apply_local(a, b, s), np.kron(a, b) @ s, atol=1e-12)

    @pytest.mark.parametrize("d", [4, 5, 6, 7, 8])
    def test_h_pair_relabels(self, d):
        for alpha in range(d):
            if not h_alpha_valid(alpha, d):
                continue
            h = build_h(alpha, d)
            bob = h.conj().T.T  # (H^dagger)^T
            for m in range(d):
                for n in range(d):
                    out = apply_local(h, bob, gbs_state(d, m, n))
                    t = conjugate_by_h(alpha, GbsIndex(d, m, n))
                    assert equal_up_to_phase(out, gbs_state(d, t.m, t.n))

    def test_translation_to_psi0(self):
        d, m1, n2 = 6, 2, 5
        alice = np.linalg.matrix_power(build_x(d), d - m1)
        bob = np.linalg.matrix_power(build_z(d), d - n2).T
        out = apply_local(alice, bob, gbs_state(d, m1, n2))
        assert equal_up_to_phase(out, psi0(d))

    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            apply_local(np.eye(3), np.eye(4), gbs_state(4, 0, 0))


class TestRicochet:
    def test_identity(self):
        assert ricochet(np.eye(4)) == 0

    def test_shift(self):
        assert ricochet(build_x(4)) < 1e-12

    def test_h(self):
        assert ricochet(build_h(2, 6)) < 1e-12

    def test_independent_vector_form(self):
        # (M (x) I)|psi0> has amplitude M[a, b]/sqrt(d) on |a>|b>
        rng = np.random.default_rng(3)
        m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        lhs = np.kron(m, np.eye(5)) @ psi0(5)
        np.testing.assert_allclose(lhs, m.reshape(25) / np.sqrt(5), atol=1e-12)


class TestLemma1:
    @pytest.mark.parametrize("d", range(2, 13))
    def test_valid_alpha(self, d):
        assert lemma1_max_deviation(d) < 1e-10

    @pytest.mark.parametrize("d", [2, 4, 6, 8, 10, 12])
    def test_odd_alpha_fails_for_even_d(self, d):
        worst = max(
            lemma1_deviation(a, m, n, d) for a in range(1, d, 2) for m in range(d) for n in range(d)
        )
        assert worst > 0.1

    def test_h_conjugates_generators(self):
        # H X H^dagger ~ Z^-1 X^alpha and H Z H^dagger = X
        for d in (5, 6, 8):
            for alpha in range(0, d, 2 if d % 2 == 0 else 1):
                h = build_h(alpha, d)
                x, z = build_x(d), build_z(d)
                lhs = h @ x @ h.conj().T
                rhs = np.linalg.inv(z) @ np.linalg.matrix_power(x, alpha)
                assert states.phase_aligned_deviation(lhs, rhs) < 1e-10
                assert states.phase_aligned_deviation(h @ z @ h.conj().T, x) < 1e-10
