import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmidconv.catalog import jp, qhg
from qmidconv.catalog.params import JPParams, QHGParams, draw_jp, draw_qhg, draw_resonant_L, draw_resonant_mu0
from qmidconv.convolution import (
    convolve,
    default_quotient_basis,
    invariance_defect,
    middle_convolve,
    subspaces,
)
from qmidconv.errors import BadQuotient, DimensionMismatch
from qmidconv.qseries import QContext, q_power
from qmidconv.qsystems import SystemSpec


def _err(a, b):
    return np.abs(np.asarray(a) - np.asarray(b)).max()


class TestFixtures:
    def test_single_pole(self, ctx, rng):
        for _ in range(5):
            p = draw_qhg(ctx, rng)
            res = convolve(ctx, qhg.qhg_system(ctx, p), p.lam)
            F1, Finf = qhg.qhg_F_printed(ctx, p)
            assert _err(res.F_inf, Finf) < 1e-12
            assert _err(res.F[0], F1) < 1e-12

    @pytest.mark.parametrize("N", [2, 3])
    def test_multi_pole(self, ctx, rng, N):
        for _ in range(5):
            p = draw_jp(ctx, rng, N)
            res = jp.jp_convolution(ctx, p)
            F_inf, F = jp.jp_F_printed(ctx, p)
            assert res.size == N + 1
            assert _err(res.F_inf, F_inf) < 1e-12
            assert all(_err(a, b) < 1e-12 for a, b in zip(res.F, F))

    def test_lam_zero_blocks(self, ctx, rng):
        # with q^lam = 1 the diagonal block of F_i is B_i itself
        spec = SystemSpec(rng.normal(size=(2, 2)), [rng.normal(size=(2, 2)) for _ in range(3)], [0.5, 1.5, 2.5])
        res = convolve(ctx, spec, 0.0)
        for i, Bi in enumerate(spec.B, start=1):
            assert np.array_equal(res.F[i - 1][2 * i:2 * i + 2, 2 * i:2 * i + 2], Bi)

    def test_infinity_is_identity_minus_fhat(self, ctx, rng):
        p = draw_jp(ctx, rng, 3)
        res = jp.jp_convolution(ctx, p)
        assert _err(res.F_inf, np.eye(4) - res.Fhat) < 1e-15
        # every row of Fhat is the block row (B_0, ..., B_N)
        assert np.all(res.Fhat == res.Fhat[0])

    def test_as_system_keeps_poles(self, ctx, rng):
        p = draw_jp(ctx, rng, 2)
        res = jp.jp_convolution(ctx, p)
        assert np.array_equal(res.as_system().b, res.source.b)


class TestSubspaces:
    def test_generic(self, ctx, rng):
        for _ in range(5):
            rep = subspaces(ctx, jp.jp_convolution(ctx, draw_jp(ctx, rng, 2)))
            assert (rep.K_dim, rep.L_dim, rep.quotient_dim) == (0, 0, 3)

    def test_single_pole_generic(self, ctx, rng):
        p = draw_qhg(ctx, rng)
        rep = subspaces(ctx, convolve(ctx, qhg.qhg_system(ctx, p), p.lam))
        assert rep.quotient_dim == 2

    def test_mu0(self, ctx, rng):
        p = draw_jp(ctx, rng, 2, mu=0.0)
        rep = subspaces(ctx, jp.jp_convolution(ctx, p))
        assert (rep.K_dim, rep.L_dim, rep.quotient_dim) == (1, 0, 2)
        # B_0 = 1 - q^0 vanishes, so K is the first coordinate line
        (k,) = rep.K_basis
        assert abs(abs(k[0]) - 1) < 1e-14

    def test_resonant(self, ctx, rng):
        p = draw_resonant_L(ctx, rng)
        rep = subspaces(ctx, jp.jp_convolution(ctx, p))
        assert (rep.K_dim, rep.L_dim, rep.quotient_dim) == (0, 1, 2)
        (v,) = rep.L_basis
        assert np.allclose(v / v[0], np.ones(3), atol=1e-10)

    def test_both(self, ctx, rng):
        p = draw_resonant_mu0(ctx, rng, 3)
        rep = subspaces(ctx, jp.jp_convolution(ctx, p))
        assert (rep.K_dim, rep.L_dim, rep.quotient_dim) == (1, 1, 2)
        assert rep.to_dict() == {"K_dim": 1, "L_dim": 1, "quotient_dim": 2}

    @pytest.mark.parametrize("draw", [
        lambda c, r: draw_jp(c, r, 2, mu=0.0),
        lambda c, r: draw_resonant_L(c, r),
        lambda c, r: draw_resonant_mu0(c, r, 3),
    ], ids=["mu0", "resonant", "both"])
    def test_invariance(self, ctx, rng, draw):
        for _ in range(3):
            res = jp.jp_convolution(ctx, draw(ctx, rng))
            rep = subspaces(ctx, res)
            for basis in (rep.K_basis, rep.L_basis):
                if basis:
                    assert invariance_defect(res, basis) < 1e-8

    @given(st.floats(0.2, 1.5), st.floats(0.3, 3.0), st.floats(0.3, 3.0))
    @settings(max_examples=25, deadline=None)
    def test_invariance_property(self, mu, alpha, beta):
        ctx = QContext(0.5)
        if abs(alpha - beta) < 0.05:
            return
        base = JPParams(mu, (alpha, 2.2 * alpha + 0.3), (beta, 1.1), 0.0)
        p = JPParams(base.mu, base.alphas, base.betas, base.resonant_lam(ctx).real)
        res = jp.jp_convolution(ctx, p)
        rep = subspaces(ctx, res)
        assert rep.L_dim == 1
        assert invariance_defect(res, rep.L_basis) < 1e-8


class TestMiddleConvolution:
    def test_mu0_matches_printed(self, ctx, rng):
        for _ in range(5):
            p = draw_jp(ctx, rng, 2, mu=0.0)
            Finf, F = middle_convolve(ctx, jp.jp_convolution(ctx, p), jp.P_MU0_SELECT)
            want_inf, want = jp.mu0_reduced_printed(ctx, p)
            assert _err(Finf, want_inf) < 1e-10
            assert all(_err(a, b) < 1e-10 for a, b in zip(F, want))

    def test_resonant_identity_at_infinity(self, ctx, rng):
        for _ in range(5):
            p = draw_resonant_L(ctx, rng)
            Finf, F = middle_convolve(ctx, jp.jp_convolution(ctx, p), jp.P_RESONANT_L)
            assert _err(Finf, np.eye(2)) < 1e-10
            assert len(F) == 2 and F[0].shape == (2, 2)

    def test_three_pole_mu0(self, ctx, rng):
        for _ in range(5):
            p = draw_resonant_mu0(ctx, rng, 3)
            Finf, F = middle_convolve(ctx, jp.jp_convolution(ctx, p), jp.P_DEG3)
            _, (B1, B2, B3) = jp.jp_coefficients(ctx, 0.0, p.alphas, p.betas)
            ql = q_power(ctx, p.lam)
            want = ([[B1 - 1 + ql, B2], [0, 0]], [[0, 0], [B1, B2 - 1 + ql]], [[-B1, -B2], [-B1, -B2]])
            assert _err(Finf, np.eye(2)) < 1e-10
            assert all(_err(a, b) < 1e-10 for a, b in zip(F, want))

    def test_default_basis_conjugates_to_triangular(self, ctx, rng):
        p = draw_resonant_mu0(ctx, rng, 3)
        res = jp.jp_convolution(ctx, p)
        rep = subspaces(ctx, res)
        P = default_quotient_basis(ctx, rep, res.size)
        assert P.shape == (4, 4)
        Finf, F = middle_convolve(ctx, res, report=rep)
        assert Finf.shape == (2, 2) and len(F) == 3
        # the reduced tuple is similar to the printed one, so traces agree
        _, (B1, B2, _) = jp.jp_coefficients(ctx, 0.0, p.alphas, p.betas)
        ql = q_power(ctx, p.lam)
        assert abs(np.trace(F[0]) - (B1 - 1 + ql)) < 1e-10
        assert abs(np.trace(Finf) - 2) < 1e-10

    def test_generic_is_unchanged(self, ctx, rng):
        res = jp.jp_convolution(ctx, draw_jp(ctx, rng, 2))
        Finf, F = middle_convolve(ctx, res)
        assert np.array_equal(Finf, res.F_inf)
        assert all(np.array_equal(a, b) for a, b in zip(F, res.F))

    def test_bad_quotient(self, ctx, rng):
        p = draw_jp(ctx, rng, 2, mu=0.0)
        res = jp.jp_convolution(ctx, p)
        # K is the first coordinate, so putting it first leaves it in the quotient block
        with pytest.raises(BadQuotient):
            middle_convolve(ctx, res, np.eye(3))

    def test_wrong_size(self, ctx, rng):
        res = jp.jp_convolution(ctx, draw_jp(ctx, rng, 2, mu=0.0))
        with pytest.raises(DimensionMismatch):
            middle_convolve(ctx, res, np.eye(4))

    def test_single_pole_mu0(self):
        # a single pole at mu = 0 has K spanned by the first coordinate and a 1x1 quotient
        ctx = QContext(0.5)
        p = QHGParams(0.7, 1.9, 0.0, 0.35)
        res = convolve(ctx, qhg.qhg_system(ctx, p), p.lam)
        rep = subspaces(ctx, res)
        assert rep.K_dim == 1 and rep.quotient_dim == 1
        Finf, (F1,) = middle_convolve(ctx, res)
        assert Finf.shape == (1, 1)
