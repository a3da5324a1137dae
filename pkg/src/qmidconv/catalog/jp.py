"""Jordan-Pochhammer systems: the N-pole product solution, its convolution, and the mu = 0 reduction."""

from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from ..convolution import ConvolutionResult, convolve
from ..jackson import JacksonConfig, jackson_adaptive, jp_product
from ..qseries import QContext
from ..qsystems import Elimination2x2, Poly, PowerTerm, ScalarQDE, SolutionFn, SystemSpec, eval_B
from ._common import gate_below_one, hyper_block, lin, power, qp
from .params import JPParams, QHGParams

# Quotient bases. Trailing columns span K + L, leading columns pick the quotient.
P_MU0_SELECT = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
P_RESONANT_L = np.array([[0, 0, 1], [1, 0, 1], [0, 1, 1]], dtype=complex)
P_RESONANT_L_INV = np.array([[-1, 1, 0], [-1, 0, 1], [1, 0, 0]], dtype=complex)
P_DEG3 = np.array([[0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 1, 0]], dtype=complex)


def jp_coefficients(ctx: QContext, mu, alphas: Sequence, betas: Sequence) -> tuple[complex, list[complex]]:
    """(B_inf, [B_1..B_N]) of x^mu prod (alpha_j x)_inf / (beta_j x)_inf."""
    alphas = [complex(a) for a in alphas]
    betas = [complex(b) for b in betas]
    qm = qp(ctx, mu)
    B_inf = qm
    for a, b in zip(alphas, betas):
        B_inf *= b / a
    B = []
    for k, ak in enumerate(alphas):
        v = qm / ak
        for b in betas:
            v *= ak - b
        for j, aj in enumerate(alphas):
            if j != k:
                v /= ak - aj
        B.append(v)
    return B_inf, B


def jp_system(ctx: QContext, mu, alphas: Sequence, betas: Sequence) -> SystemSpec:
    """The scalar N-pole system satisfied by the product solution; poles at 1/alpha_k."""
    JPParams(mu, alphas, betas, 0.0)
    B_inf, B = jp_coefficients(ctx, mu, alphas, betas)
    return SystemSpec([[B_inf]], [[[v]] for v in B], [1 / complex(a) for a in alphas])


def jp_convolution(ctx: QContext, p: JPParams) -> ConvolutionResult:
    return convolve(ctx, jp_system(ctx, p.mu, p.alphas, p.betas), p.lam)


def jp_F_printed(ctx: QContext, p: JPParams) -> tuple[np.ndarray, tuple]:
    """(F_inf, (F_1..F_N)) written out entrywise for the scalar N-pole case."""
    _, B = jp_coefficients(ctx, p.mu, p.alphas, p.betas)
    qm, ql = qp(ctx, p.mu), qp(ctx, p.lam)
    n = p.N + 1
    row = np.array([1 - qm] + B, dtype=complex)
    F = []
    for i in range(1, n):
        Fi = np.zeros((n, n), dtype=complex)
        Fi[i] = row
        Fi[i, i] += ql - 1
        F.append(Fi)
    F_inf = -np.tile(row, (n, 1))
    F_inf += np.eye(n)
    return F_inf, tuple(F)


def jp_jackson_vector(ctx: QContext, p: JPParams, xi):
    """Adaptive Jackson solution of the convolved JP system."""
    from ..jackson import yhat_vector

    spec = jp_system(ctx, p.mu, p.alphas, p.betas)
    Y = jp_product(p.mu, p.alphas, p.betas)
    cfg = JacksonConfig(xi, p.lam)
    return lambda x: yhat_vector(ctx, cfg, spec, Y, x)


# ------------------------------------------------------------------ single pole elimination


def qhg_elimination(ctx: QContext, p: QHGParams) -> Elimination2x2:
    """Relation for the first component eliminated from the convolved single-pole system."""
    qm, ql = qp(ctx, p.mu), qp(ctx, p.lam)
    al, be = complex(p.alpha), complex(p.beta)
    return Elimination2x2(
        ctx,
        lambda x: qm,
        lambda x: -qm * (1 - be / al),
        lambda x: (1 - qm) * al * x / (1 - al * x),
        lambda x: ((-al + (al - be) * qm) * x + ql) / (1 - al * x),
    )


# ------------------------------------------------------------------ mu = 0, N = 2


def mu0_reduced_printed(ctx: QContext, p: JPParams) -> tuple[np.ndarray, tuple]:
    """(Fbar_inf, (Fbar_1, Fbar_2)) of the mu = 0 two-pole reduction."""
    _, (B1, B2) = jp_coefficients(ctx, 0.0, p.alphas, p.betas)
    ql = qp(ctx, p.lam)
    F1 = np.array([[B1 - 1 + ql, B2], [0, 0]], dtype=complex)
    F2 = np.array([[0, 0], [B1, B2 - 1 + ql]], dtype=complex)
    Finf = np.array([[1 - B1, -B2], [-B1, 1 - B2]], dtype=complex)
    return Finf, (F1, F2)


def mu0_elimination(ctx: QContext, p: JPParams) -> Elimination2x2:
    """Scalar relation for the first component of the mu = 0 reduced 2x2 system."""
    Finf, F = mu0_reduced_printed(ctx, p)
    spec = SystemSpec(Finf, F, [1 / a for a in p.alphas])

    def entry(r, c):
        return lambda x: eval_B(spec, x)[r, c]

    return Elimination2x2(ctx, entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))


def mu0_eq(ctx: QContext, p: JPParams, nonhom: bool = False) -> ScalarQDE:
    """Second-order equation of the mu = 0 two-pole reduction; ``nonhom`` adds the x-linear term."""
    q, ql = ctx.q, qp(ctx, p.lam)
    (a1, a2), (b1, b2) = p.alphas, p.betas
    bb = b1 * b2
    c_m1 = Poly.from_roots(1, [qp(ctx, p.lam + 1) / b1, qp(ctx, p.lam + 1) / b2])
    c_p1 = Poly.from_roots(a1 * a2 / bb, [1 / a1, q / a2])
    c_0 = Poly([
        -qp(ctx, p.lam + 1) * (1 + q) / bb,
        q * (1 / b1 + 1 / b2) + ql * (q * a1 + a2) / bb,
        -(a1 * a2 / bb + 1),
    ])
    nh = PowerTerm(-q * (1 - q) * (1 - ql) * a1 / bb, 1) if nonhom else None
    return ScalarQDE((-1, 0, 1), (c_m1, c_0, c_p1), nh, name="jp2-mu0" + ("-nonhom" if nonhom else ""))


def third_order_eq(ctx: QContext, p: JPParams, printed: bool = False) -> ScalarQDE:
    """Third-order equation of the second component of the two-pole convolution (any mu).

    The x-linear part of the q^2 x coefficient carries a factor q that the
    commonly printed form drops; ``printed=True`` returns that form, which
    the Jackson solution does not satisfy.
    """
    q, qm, ql = ctx.q, qp(ctx, p.mu), qp(ctx, p.lam)
    (a1, a2), (b1, b2) = p.alphas, p.betas
    qa = q * a1 + a2
    c3 = Poly.from_roots(q ** 3 * a1 * a2, [1 / (q * q * a1), 1 / (q * a2)])
    lin_scale = 1.0 if printed else q
    c2 = Poly([
        -(qm * q + (q + 1) * ql),
        lin_scale * (qm * q * (b1 + b2) + (ql + 1) * qa),
        -q * q * (qm * q * b1 * b2 + a1 * a2 * (q + 1)),
    ])
    c1 = Poly([
        ql * q * (qm * (q + 1) + ql),
        -q * (qm * q * (b1 + b2) * (ql + 1) + ql * qa),
        q * q * (qm * (q + 1) * b1 * b2 + a1 * a2),
    ])
    c0 = Poly.from_roots(-qm * q * q * b1 * b2, [ql / b1, ql / b2])
    return ScalarQDE((0, 1, 2, 3), (c0, c1, c2, c3), name="jp2-third-order" + ("-printed" if printed else ""))


def mu0_bracket(ctx: QContext, p: JPParams) -> ScalarQDE:
    """Second-order operator (shifts 0..2) whose left product with (T - q) gives the mu = 0 third-order one."""
    q, ql = ctx.q, qp(ctx, p.lam)
    (a1, a2), (b1, b2) = p.alphas, p.betas
    c2 = Poly.from_roots(q * a1 * a2, [1 / (q * a1), 1 / a2])
    c1 = Poly([-ql * (q + 1), q * (b1 + b2) + ql * (q * a1 + a2), -q * (b1 * b2 + a1 * a2)])
    c0 = Poly.from_roots(q * b1 * b2, [ql / b1, ql / b2])
    return ScalarQDE((0, 1, 2), (c0, c1, c2), name="jp2-mu0-bracket")


class Mu0Family(enum.Enum):
    XI_INV_ALPHA1 = "xi-inv-alpha1"
    XI_INV_ALPHA2 = "xi-inv-alpha2"
    XI_LAMBDA_X = "xi-lambda-x"
    ALT_INV_BETA1 = "alt-inv-beta1"
    ALT_X = "alt-x"


MU0_NONHOM = (Mu0Family.XI_INV_ALPHA1, Mu0Family.XI_INV_ALPHA2, Mu0Family.XI_LAMBDA_X)


def mu0_gate(ctx: QContext, p: JPParams):
    (a1, a2), (b1, b2) = p.alphas, p.betas
    return gate_below_one("|q^lam a1 a2/(b1 b2)| < 1", qp(ctx, p.lam) * a1 * a2 / (b1 * b2))


def mu0_solution(ctx: QContext, p: JPParams, which) -> SolutionFn:
    """Closed forms for the first component of the mu = 0 two-pole reduction.

    The first three solve the equation with the x-linear term, the last two
    (alternative kernel) the homogeneous one.
    """
    which = Mu0Family(which)
    q, lam = ctx.q, p.lam
    (a1, a2), (b1, b2) = p.alphas, p.betas
    z = qp(ctx, lam) * a1 * a2 / (b1 * b2)
    mu_alt = np.log(complex(b1 * b2 / (a1 * a2))) / ctx.log_q
    L = lambda w: qp(ctx, w)

    if which is Mu0Family.XI_INV_ALPHA1:
        def f(x):
            return (q - 1) * hyper_block(
                ctx, [L(lam + 1) / (a1 * x), a2 / a1, q], [q / (a1 * x), b1 / a1, b2 / a1],
                [q / (a1 * x), b1 / a1, b2 / a1], [L(lam + 1) / (a1 * x), a2 / a1], q)
        lattices = (q / a1, L(lam + 1) / a1)
    elif which is Mu0Family.XI_INV_ALPHA2:
        def f(x):
            return (q - 1) * q * a1 / a2 * hyper_block(
                ctx, [L(lam + 2) / (a2 * x), q * q * a1 / a2, q], [q * q / (a2 * x), q * b1 / a2, q * b2 / a2],
                [q * q / (a2 * x), q * b1 / a2, q * b2 / a2], [L(lam + 2) / (a2 * x), q * q * a1 / a2], q)
        lattices = (q * q / a2, L(lam + 2) / a2)
    elif which is Mu0Family.XI_LAMBDA_X:
        def f(x):
            return (q - 1) * L(-lam) * a1 * x * hyper_block(
                ctx, [L(1 - lam) * a1 * x, L(-lam) * a2 * x, q], [L(-lam) * b1 * x, L(-lam) * b2 * x, L(1 - lam)],
                [L(-lam) * b1 * x, L(-lam) * b2 * x, L(1 - lam)], [L(1 - lam) * a1 * x, L(-lam) * a2 * x], q)
        lattices = (L(lam) / b1, L(lam) / b2, L(lam - 1) / a1, L(lam) / a2)
    elif which is Mu0Family.ALT_INV_BETA1:
        pre = (1 - q) * power(ctx, b1, lam - mu_alt)

        def f(x):
            return pre * power(ctx, x, lam) * hyper_block(
                ctx, [b1 * x, q, q * b1 / b2], [L(-lam) * b1 * x, b1 / a1, q * b1 / a2],
                [L(-lam) * b1 * x, b1 / a1, q * b1 / a2], [b1 * x, q * b1 / b2], z)
        lattices = (1 / b1, L(lam) / b1)
    else:
        def f(x):
            return (1 - q) * z * power(ctx, x, mu_alt) * hyper_block(
                ctx, [q * q / (b1 * x), q * q / (b2 * x), q], [q / (a1 * x), q * q / (a2 * x), L(1 - lam)],
                [q / (a1 * x), q * q / (a2 * x), L(1 - lam)], [q * q / (b1 * x), q * q / (b2 * x)], z)
        lattices = (q / b1, q / b2, q / a1, q / a2)
    return SolutionFn(f, "mu = 0; needs |q^lam a1 a2/(b1 b2)| < 1", f"jp2-mu0/{which.value}",
                      (mu0_gate(ctx, p),), lattices)


def mu0_bilateral(ctx: QContext, p: JPParams, xi) -> SolutionFn:
    """Second Jackson component of the mu = 0 two-pole system at a generic ray parameter."""
    spec = jp_system(ctx, 0.0, p.alphas, p.betas)
    Y = jp_product(0.0, p.alphas, p.betas)
    cfg = JacksonConfig(xi, p.lam)
    return SolutionFn(lambda x: jackson_adaptive(ctx, cfg, spec, Y, 1, x).value,
                      "mu = 0, generic xi; needs |q^lam a1 a2/(b1 b2)| < 1",
                      "jp2-mu0/bilateral", (mu0_gate(ctx, p),), (complex(xi), complex(xi) / qp(ctx, p.lam)))
