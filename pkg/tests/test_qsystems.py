import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmidconv.catalog import jp, qhg
from qmidconv.catalog.params import JPParams, QHGParams
from qmidconv.errors import A12Vanishes, AtPole, DimensionMismatch
from qmidconv.jackson import jp_product
from qmidconv.qseries import QContext, phi, q_power, theta
from qmidconv.qsystems import (
    Poly,
    PowerTerm,
    ScalarQDE,
    SystemSpec,
    ThetaTerm,
    conjugate_by_power,
    eliminate_2x2,
    eval_B,
    operator_compose,
    proportionality_defect,
    sample_grid,
    scalar_residual,
    system_residual,
)

QHG = QHGParams(0.7, 1.9, 0.6, 0.35)


class TestSystemSpec:
    def test_pole_rules(self):
        with pytest.raises(ValueError):
            SystemSpec([[1]], [[[1]], [[2]]], [0.5, 0.5])
        with pytest.raises(ValueError):
            SystemSpec([[1]], [[[1]]], [0])
        with pytest.raises(DimensionMismatch):
            SystemSpec([[1]], [[[1]]], [0.5, 0.7])
        with pytest.raises(DimensionMismatch):
            SystemSpec(np.eye(2), [[[1]]], [0.5])

    @given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 2**32 - 1))
    @settings(max_examples=30)
    def test_b0_completes_identity(self, m, n, seed):
        r = np.random.default_rng(seed)
        B = [r.normal(size=(m, m)) + 1j * r.normal(size=(m, m)) for _ in range(n)]
        spec = SystemSpec(r.normal(size=(m, m)), B, list(1.0 + np.arange(n)))
        total = spec.B0 + spec.B_inf + sum(B, np.zeros((m, m)))
        assert np.abs(total - np.eye(m)).max() < 1e-14


class TestEvalB:
    def test_zero_residues(self):
        spec = SystemSpec([[2.0]], [[[0.0]]], [0.4])
        assert eval_B(spec, 1.7)[0, 0] == 2.0

    def test_origin(self):
        spec = SystemSpec([[2.0]], [[[0.5]], [[-1.5]]], [0.4, 3.0])
        assert abs(eval_B(spec, 0)[0, 0] - 1.0) < 1e-15

    def test_at_pole(self):
        with pytest.raises(AtPole):
            eval_B(SystemSpec([[1.0]], [[[1.0]]], [0.4]), 0.4)

    def test_single_pole_factored_form(self, ctx):
        spec = qhg.qhg_system(ctx, QHG)
        qm = q_power(ctx, QHG.mu)
        for x in sample_grid(ctx, lattices=[1 / QHG.alpha]):
            want = qm * (1 - QHG.beta * x) / (1 - QHG.alpha * x)
            assert abs(eval_B(spec, x)[0, 0] - want) <= 1e-12 * abs(want)


class TestSystemResidual:
    def test_zero_solution(self, ctx):
        spec = qhg.qhg_system(ctx, QHG)
        assert system_residual(ctx, spec, lambda x: np.zeros(1), 0.3) == 0

    def test_power(self, ctx):
        spec = SystemSpec([[q_power(ctx, 0.8)]], [], [])
        for x in (0.1, 1.0, 3.3):
            assert system_residual(ctx, spec, lambda s: np.array([s**0.8]), x) < 1e-12

    def test_product_solution(self, ctx):
        spec = qhg.qhg_system(ctx, QHG)
        Y = jp_product(QHG.mu, [QHG.alpha], [QHG.beta])
        for x in sample_grid(ctx, lattices=[1 / QHG.alpha, 1 / QHG.beta]):
            assert system_residual(ctx, spec, lambda s: np.array([Y.value(ctx, s)]), x) < 1e-10


class TestScalarQDE:
    def test_structure_rules(self):
        with pytest.raises(ValueError):
            ScalarQDE((1, 0), (Poly([1]), Poly([1])))
        with pytest.raises(ValueError):
            ScalarQDE((0, 1), (Poly([0]), Poly([1])))

    def test_zero_function(self, ctx):
        eq = qhg.std_qhg_eq(ctx, 0.3, 0.4, 0.5)
        assert scalar_residual(ctx, eq, lambda x: 0.0, 0.2) == 0

    def test_standard_equation_constants(self, ctx):
        eq = qhg.std_qhg_eq(ctx, 0.3, 0.4, 0.5)
        q = ctx.q
        assert eq.coefficient(-1)(0) == -q
        assert eq.coefficient(1)(0) == -0.5
        assert eq.coefficient(0)(0) == q + 0.5

    @pytest.mark.parametrize("a,b,c", [(0.3, 0.4, 0.5), (1.7, -0.6, 0.25), (0.2 + 0.1j, 0.9, 1.3)])
    def test_two_phi_one(self, a, b, c):
        # x/q must stay inside the unit disk, so the base is fixed at 0.5
        ctx = QContext(0.5)
        eq = qhg.std_qhg_eq(ctx, a, b, c)
        f = lambda x: phi(ctx, [a, b], [c], x)
        for x in (0.1, 0.2, 0.3):
            assert scalar_residual(ctx, eq, f, x) < 1e-9

    def test_two_phi_one_matches_mpmath(self, ctx):
        q = mp.mpf(ctx.q.real)
        for x in (0.1, 0.2, 0.3):
            want = complex(mp.qhyper([mp.mpf("0.3"), mp.mpf("0.4")], [mp.mpf("0.5")], q, mp.mpf(x)))
            assert abs(phi(ctx, [0.3, 0.4], [0.5], x) - want) < 1e-13 * abs(want)

    @given(st.floats(0.1, 3.0), st.floats(0.5, 4.0), st.floats(-2.0, 2.0))
    @settings(max_examples=40)
    def test_residual_ignores_common_factor(self, x, root, lead):
        ctx = QContext(0.5)
        if abs(x - root) < 1e-3 or abs(lead) < 1e-3:
            return
        eq = qhg.qhg_y0_eq(ctx, QHG).with_nonhom(PowerTerm(0.3, 1.0))
        f = lambda s: cmath.sin(s) + 2
        factor = Poly.from_roots(lead, [root])(x)
        scaled = eq.scaled(factor)
        assert abs(scalar_residual(ctx, eq, f, x) - scalar_residual(ctx, scaled, f, x)) < 1e-10

    def test_theta_term_shift(self):
        ctx = QContext(0.5)
        term = ThetaTerm(2.0, 1.0, ((0.3, 1),), ((0.7, 1),), 1.0)
        x = 0.9
        want = 2.0 * x * (theta(ctx, 0.3 * x) / theta(ctx, 0.7 * x) - 1)
        assert abs(term(ctx, x) - want) < 1e-14 * abs(want)

    def test_conjugate_by_power(self, ctx):
        eq = qhg.qhg_y0_eq(ctx, QHG).with_nonhom(PowerTerm(0.4, 1.5))
        f = lambda s: s**0.7 + 1.0 / (1.0 + s)
        gamma = 0.45
        g = lambda s: s**-gamma * f(s)
        eq_g = conjugate_by_power(ctx, eq, gamma)
        assert eq_g.nonhom.gamma == 1.5 - gamma
        for x in (0.2, 0.9, 2.5):
            assert abs(eq.apply(ctx, f, x) - x**gamma * eq_g.apply(ctx, g, x)) < 1e-13 * max(1.0, abs(eq.apply(ctx, f, x)))


class TestElimination:
    def test_constant_solution(self, ctx):
        # rows summing to one keep (K, K) fixed, so the relation vanishes on g1 = K
        c = 0.7
        e = eliminate_2x2(ctx, lambda x: 1 - c, lambda x: c, lambda x: c, lambda x: 1 - c)
        assert e.residual(lambda x: 3.0, 0.8) < 1e-15
        co = e.coefficients(0.8)
        assert abs(sum(co.values())) < 1e-15

    def test_a12_vanishes(self, ctx):
        e = eliminate_2x2(ctx, lambda x: 1.0, lambda x: 0.0, lambda x: 1.0, lambda x: 1.0)
        with pytest.raises(A12Vanishes):
            e.coefficients(0.4)

    def test_reproduces_first_component_equation(self, ctx):
        e = jp.qhg_elimination(ctx, QHG)
        printed = qhg.qhg_y0_eq(ctx, QHG)
        for x in sample_grid(ctx, 10, lattices=[1 / QHG.alpha]):
            mine = e.coefficients(x)
            theirs = {k: c(x) for k, c in zip(printed.shifts, printed.coeffs)}
            assert proportionality_defect(mine, theirs) < 1e-10

    def test_reproduces_mu0_equation(self, ctx):
        p = JPParams(0.0, (0.8, 1.7), (1.3, 0.45), 0.35)
        e = jp.mu0_elimination(ctx, p)
        printed = jp.mu0_eq(ctx, p)
        for x in sample_grid(ctx, 10, lattices=[1.25, 1 / 1.7]):
            mine = e.coefficients(x)
            theirs = {k: c(x) for k, c in zip(printed.shifts, printed.coeffs)}
            assert proportionality_defect(mine, theirs) < 1e-10

    def test_inhomogeneity(self, ctx):
        # g1 = g2 = 1 solves the forced system exactly
        e = eliminate_2x2(ctx, lambda x: 0.5, lambda x: 0.25, lambda x: 0.1, lambda x: 0.4,
                          lambda x: 0.25, lambda x: 0.5)
        assert e.residual(lambda x: 1.0, 0.7) < 1e-15


class TestCompose:
    def test_shift_minus_one(self, ctx):
        ident = ScalarQDE((0,), (Poly([1]),))
        out = operator_compose(ctx, [1.0], ident)
        assert out.shifts == (0, 1)
        assert out.coefficient(0).coeffs == (-1,) and out.coefficient(1).coeffs == (1,)

    def test_kills_x(self, ctx):
        ident = ScalarQDE((0,), (Poly([1]),))
        out = operator_compose(ctx, [ctx.q], ident)
        assert abs(out.apply(ctx, lambda x: x, 0.7)) < 1e-12

    def test_power_term_carried(self, ctx):
        inner = ScalarQDE((0, 1), (Poly([1, 0.5]), Poly([-2])), PowerTerm(1.5, 1.0))
        out = operator_compose(ctx, [ctx.q], inner)
        assert out.nonhom is None
        f = lambda x: cmath.exp(-x)
        for x in (0.3, 1.1):
            direct = inner.apply(ctx, f, ctx.q * x) - ctx.q * inner.apply(ctx, f, x)
            assert abs(out.apply(ctx, f, x) - direct) < 1e-13

    def test_third_order_factorization(self, ctx):
        p = JPParams(0.0, (0.8, 1.7), (1.3, 0.45), 0.35)
        got = operator_compose(ctx, [ctx.q], jp.mu0_bracket(ctx, p))
        want = jp.third_order_eq(ctx, p)
        for k in want.shifts:
            assert got.coefficient(k).max_abs_diff(want.coefficient(k)) < 1e-10


class TestGrid:
    def test_default_grid(self, ctx):
        xs = sample_grid(ctx)
        assert len(xs) == 20 and xs[0] == pytest.approx(0.05) and xs[-1] >= 5.0

    def test_avoids_lattice(self, ctx):
        xs = sample_grid(ctx, lattices=[0.05])
        assert xs[0] != 0.05
