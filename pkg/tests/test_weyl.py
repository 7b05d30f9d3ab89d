import numpy as np
import pytest
from hypothesis import given, strategies as st

from gbs_locc.states import build_x, build_z, weyl_matrix
from gbs_locc.weyl import (
    DomainError,
    GbsIndex,
    PreconditionError,
    Residue,
    WeylOp,
    adjoint,
    compose,
    conjugate_by_h,
    h_alpha_valid,
    s_sum,
)


def matrix_oracle(op):
    """w^t X^a Z^b from repeated products of the dense X and Z."""
    d = op.dim
    w = np.exp(2j * np.pi / d)
    return w**op.phase * np.linalg.matrix_power(build_x(d), op.x) @ np.linalg.matrix_power(build_z(d), op.z)


@st.composite
def weyl_ops(draw, dim=None):
    d = dim if dim is not None else draw(st.integers(2, 9))
    return WeylOp(d, *(draw(st.integers(-20, 20)) for _ in range(3)))


@st.composite
def op_triples(draw):
    d = draw(st.integers(2, 9))
    return tuple(draw(weyl_ops(dim=d)) for _ in range(3))


class TestSSum:
    @pytest.mark.parametrize("d", range(2, 13))
    def test_matches_direct_sum(self, d):
        for k in range(d):
            assert s_sum(k, d) == sum(range(k, d))

    def test_examples(self):
        assert s_sum(0, 4) == 6
        assert s_sum(4, 4) == 6
        assert s_sum(4, 5) == 4

    def test_consecutive_difference(self):
        for d in range(2, 10):
            for q in range(d - 1):
                assert s_sum(q, d) - s_sum(q + 1, d) == q

    @pytest.mark.parametrize("k", [-1, 5])
    def test_out_of_range(self, k):
        with pytest.raises(DomainError):
            s_sum(k, 4)


class TestResidue:
    def test_canonical(self):
        assert Residue(-1, 5).value == 4
        assert Residue(13, 5) == Residue(3, 5)

    def test_arithmetic(self):
        a = Residue(3, 7)
        assert (a + 5).value == 1
        assert (-a).value == 4
        assert (a * 4).value == 5
        assert (2 - a).value == 6

    def test_modulus_mismatch(self):
        with pytest.raises(DomainError):
            Residue(1, 5) + Residue(1, 6)


class TestCompose:
    def test_x_then_z(self):
        x, z = WeylOp(4, 1, 0), WeylOp(4, 0, 1)
        assert compose(x, z) == WeylOp(4, 1, 1, 0)

    def test_z_then_x(self):
        x, z = WeylOp(4, 1, 0), WeylOp(4, 0, 1)
        assert compose(z, x) == WeylOp(4, 1, 1, 1)
        w = np.exp(2j * np.pi / 4)
        np.testing.assert_allclose(build_z(4) @ build_x(4), w * build_x(4) @ build_z(4), atol=1e-12)

    def test_inverse(self):
        a = WeylOp(5, 3, 1, 2)
        assert compose(a, adjoint(a)).is_identity()

    def test_dim_mismatch(self):
        with pytest.raises(DomainError):
            compose(WeylOp(4, 1), WeylOp(5, 1))

    @given(op_triples())
    def test_associative(self, ops):
        a, b, c = ops
        assert compose(compose(a, b), c) == compose(a, compose(b, c))

    @given(weyl_ops())
    def test_identity_two_sided(self, a):
        e = WeylOp.identity(a.dim)
        assert compose(a, e) == a == compose(e, a)

    @given(weyl_ops())
    def test_adjoint_involution(self, a):
        assert adjoint(adjoint(a)) == a
        assert compose(adjoint(a), a).is_identity()


class TestAdjoint:
    def test_identity(self):
        assert adjoint(WeylOp(4)) == WeylOp(4)

    def test_shift(self):
        assert adjoint(WeylOp(4, 1, 0)) == WeylOp(4, 3, 0, 0)

    def test_matches_conjugate_transpose(self):
        a = WeylOp(4, 1, 1)
        np.testing.assert_allclose(weyl_matrix(adjoint(a)), weyl_matrix(a).conj().T, atol=1e-12)


@pytest.mark.parametrize("d", range(2, 10))
def test_matrix_form_matches_products(d):
    for t in range(d):
        for a in range(d):
            for b in range(d):
                op = WeylOp(d, a, b, t)
                np.testing.assert_allclose(weyl_matrix(op), matrix_oracle(op), atol=1e-12)


class TestConjugation:
    def test_validity(self):
        assert h_alpha_valid(1, 5)
        assert not h_alpha_valid(1, 6)
        assert h_alpha_valid(2, 8)
        assert h_alpha_valid(Residue(4, 8), 8)

    @pytest.mark.parametrize("d", [4, 5, 6, 9])
    def test_alpha_zero_swaps(self, d):
        for m in range(d):
            for n in range(d):
                assert conjugate_by_h(0, GbsIndex(d, m, n)) == GbsIndex(d, n, -m)

    def test_examples(self):
        assert conjugate_by_h(1, GbsIndex(5, 1, 0)) == GbsIndex(5, 1, 4)
        for n in range(6):
            assert conjugate_by_h(2, GbsIndex(6, 0, n)) == GbsIndex(6, n, 0)

    def test_invalid_parity(self):
        with pytest.raises(PreconditionError):
            conjugate_by_h(1, GbsIndex(6, 1, 1))

    @given(st.integers(2, 12).flatmap(lambda d: st.tuples(st.just(d), st.integers(0, d - 1), st.integers(0, d - 1))))
    def test_alpha_zero_twice_negates(self, args):
        d, m, n = args
        idx = GbsIndex(d, m, n)
        assert conjugate_by_h(0, conjugate_by_h(0, idx)) == GbsIndex(d, -m, -n)

    def test_index_forgets_phase(self):
        assert WeylOp(5, 2, 3, 4).index() == WeylOp(5, 2, 3, 0).index() == GbsIndex(5, 2, 3)
