"""Single-pole convolution: the q-hypergeometric equation and its Jackson solutions."""

from __future__ import annotations

import enum

import numpy as np

from ..jackson import JacksonConfig, KernelChoice, jp_product, yhat_vector
from ..qseries import QContext
from ..qsystems import Poly, ScalarQDE, SolutionFn, SystemSpec
from ._common import gate_below_one, gate_positive, hyper_block, lin, power, qp
from .params import QHGParams


def std_qhg_eq(ctx: QContext, a, b, c) -> ScalarQDE:
    """(x - q) g(x/q) + (a b x - c) g(qx) - ((a + b) x - q - c) g(x) = 0."""
    q = ctx.q
    return ScalarQDE(
        (-1, 0, 1),
        (Poly([-q, 1]), Poly([q + c, -(a + b)]), Poly([-c, a * b])),
        name="qhg-standard",
    )


def qhg_system(ctx: QContext, p: QHGParams) -> SystemSpec:
    """y(qx) = (q^mu beta/alpha + q^mu (1 - beta/alpha)/(1 - alpha x)) y(x)."""
    qm = qp(ctx, p.mu)
    return SystemSpec([[qm * p.beta / p.alpha]], [[[qm * (1 - p.beta / p.alpha)]]], [1 / p.alpha])


def qhg_y0_eq(ctx: QContext, p: QHGParams) -> ScalarQDE:
    """Second-order equation of the first component of the convolved system."""
    q, al, be = ctx.q, p.alpha, p.beta
    qmm = qp(ctx, -p.mu)
    return ScalarQDE(
        (-1, 0, 1),
        (
            lin(qp(ctx, p.lam + 1) / be),
            Poly([q / be * (1 + qp(ctx, p.lam - p.mu)), -(qmm * al / be + 1)]),
            Poly([-q * qmm / be, qmm * al / be]),
        ),
        name="qhg-y0",
    )


def qhg_y1_eq(ctx: QContext, p: QHGParams) -> ScalarQDE:
    """Second-order equation of the second component of the convolved system."""
    q, al, be = ctx.q, p.alpha, p.beta
    qmm = qp(ctx, -p.mu)
    return ScalarQDE(
        (-1, 0, 1),
        (
            lin(qp(ctx, p.lam + 1) / be),
            Poly([(q + qp(ctx, p.lam - p.mu)) / be, -(qmm * al / be + 1)]),
            Poly([-qmm / be, qmm * al / be]),
        ),
        name="qhg-y1",
    )


def qhg_h_eq(ctx: QContext, p: QHGParams) -> ScalarQDE:
    """Equation for h with y0(x) = x^lam h(x), as printed (polynomial form)."""
    q, al, be = ctx.q, p.alpha, p.beta
    l, m = p.lam, p.mu
    return ScalarQDE(
        (-1, 0, 1),
        (
            lin(qp(ctx, l + 1) / be),
            Poly([qp(ctx, l + 1) / be + qp(ctx, 2 * l - m + 1) / be, -(qp(ctx, l - m) * al / be + qp(ctx, l))]),
            Poly([-qp(ctx, 2 * l - m + 1) / be, qp(ctx, 2 * l - m) * al / be]),
        ),
        name="qhg-h",
    )


class QHGFamily(enum.Enum):
    XI_INV_ALPHA = "xi-inv-alpha"
    XI_LAMBDA_X = "xi-lambda-x"
    LIMIT_INV_BETA = "limit-inv-beta"
    LIMIT_X = "limit-x"
    ALT_INV_BETA = "alt-inv-beta"
    ALT_X = "alt-x"
    HEINE_LOCAL = "heine-local"


def qhg_gates(ctx: QContext, p: QHGParams) -> tuple:
    return (
        gate_positive("mu > 0", p.mu),
        gate_below_one("|q|^(lam-mu)|alpha/beta| < 1", ctx.abs_q ** complex(p.lam - p.mu).real * abs(p.alpha / p.beta)),
    )


def qhg_solution(ctx: QContext, p: QHGParams, which) -> SolutionFn:
    """Closed forms of the first component for special ray parameters.

    All families solve the first-component equation; the two ``alt-*``
    families come from the alternative kernel and ``heine-local`` is the
    expansion of ``xi-inv-alpha`` about infinity (valid for |q^2/(alpha x)| < 1).
    """
    which = QHGFamily(which)
    q, al, be, mu, lam = ctx.q, complex(p.alpha), complex(p.beta), p.mu, p.lam
    z = qp(ctx, lam - mu) * al / be
    qm = qp(ctx, mu)

    if which is QHGFamily.XI_INV_ALPHA:
        pre = (1 - q) * power(ctx, al, -mu) * qm

        def f(x):
            u = q * q / (al * x)
            return pre * hyper_block(ctx, [qp(ctx, lam + 2) / (al * x), q], [u, q * be / al],
                                     [u, q * be / al], [qp(ctx, lam + 2) / (al * x)], qm)
        lattices = (q * q / al, qp(ctx, lam + 2) / al)
        note = "xi = 1/alpha; needs mu > 0"
    elif which is QHGFamily.XI_LAMBDA_X:
        pre = (1 - q) * qp(ctx, -lam * mu)

        def f(x):
            u = qp(ctx, -lam) * be * x
            return pre * power(ctx, x, mu) * hyper_block(
                ctx, [qp(ctx, -lam) * al * x, q], [u, qp(ctx, 1 - lam)], [u, qp(ctx, 1 - lam)], [qp(ctx, -lam) * al * x], qm)
        lattices = (qp(ctx, lam) / be, qp(ctx, lam) / al)
        note = "xi = q^-lam x; needs mu > 0"
    elif which is QHGFamily.LIMIT_INV_BETA:
        pre = (1 - q) * power(ctx, be, -mu)

        def f(x):
            return pre * hyper_block(ctx, [qp(ctx, lam + 1) / (be * x), al / be], [q / (be * x), q],
                                     [qp(ctx, -lam) * be * x, q * be / al], [be * x], z)
        lattices = (q / be, 1 / be, qp(ctx, lam) / be)
        note = "limit xi -> 1/beta; needs |q^(lam-mu) alpha/beta| < 1"
    elif which is QHGFamily.LIMIT_X:
        pre = (1 - q) * qp(ctx, -mu)

        def f(x):
            return pre * power(ctx, x, mu) * hyper_block(
                ctx, [al * x / q, qp(ctx, lam)], [be * x / q, q],
                [q * q / (al * x), qp(ctx, 1 - lam)], [q * q / (be * x)], z)
        lattices = (q / be, q / al)
        note = "limit xi -> x; needs |q^(lam-mu) alpha/beta| < 1"
    elif which is QHGFamily.ALT_INV_BETA:
        mu_alt = p.mu_alt(ctx)
        pre = (1 - q) * power(ctx, be, lam - mu_alt)

        def f(x):
            return pre * power(ctx, x, lam) * hyper_block(
                ctx, [be * x, q], [qp(ctx, -lam) * be * x, q * be / al],
                [qp(ctx, -lam) * be * x, q * be / al], [be * x], z)
        lattices = (1 / be, qp(ctx, lam) / be)
        note = "alternative kernel, xi = 1/beta; needs |q^(lam-mu) alpha/beta| < 1"
    elif which is QHGFamily.ALT_X:
        mu_alt = p.mu_alt(ctx)
        pre = (1 - q) * z

        def f(x):
            return pre * power(ctx, x, mu_alt) * hyper_block(
                ctx, [q * q / (be * x), q], [q * q / (al * x), qp(ctx, 1 - lam)],
                [q * q / (al * x), qp(ctx, 1 - lam)], [q * q / (be * x)], z)
        lattices = (q / be, q / al)
        note = "alternative kernel, xi = x; needs |q^(lam-mu) alpha/beta| < 1"
    else:
        pre = (1 - q) * power(ctx, al, -mu) * qm

        def f(x):
            return pre * hyper_block(ctx, [q, qp(ctx, mu + 1) * be / al], [q * be / al, qm],
                                     [qp(ctx, lam), qm], [qp(ctx, mu + 1) * be / al], q * q / (al * x))
        lattices = (q * q / al,)
        note = "expansion about infinity; needs |q^2/(alpha x)| < 1"
    return SolutionFn(f, note, f"qhg/{which.value}", qhg_gates(ctx, p), lattices)


def qhg_pseudo_constant(ctx: QContext, p: QHGParams, pair: str):
    """Ratio of the standard- and alternative-kernel solutions sharing one series.

    ``pair`` is ``"inv-beta"`` or ``"x"``. The ratio is invariant under x -> qx.
    """
    if pair == "inv-beta":
        a = qhg_solution(ctx, p, QHGFamily.LIMIT_INV_BETA)
        b = qhg_solution(ctx, p, QHGFamily.ALT_INV_BETA)
    elif pair == "x":
        a = qhg_solution(ctx, p, QHGFamily.LIMIT_X)
        b = qhg_solution(ctx, p, QHGFamily.ALT_X)
    else:
        raise ValueError(f"unknown pair {pair!r}")
    return lambda x: a(x) / b(x)


def qhg_jackson_vector(ctx: QContext, p: QHGParams, xi, kernel=KernelChoice.STANDARD):
    """Adaptive Jackson solution (y0, y1) of the convolved 2x2 system."""
    spec = qhg_system(ctx, p)
    Y = jp_product(p.mu, [p.alpha], [p.beta])
    cfg = JacksonConfig(xi, p.lam, kernel)
    return lambda x: yhat_vector(ctx, cfg, spec, Y, x)


def qhg_F_printed(ctx: QContext, p: QHGParams) -> tuple[np.ndarray, np.ndarray]:
    """(F_1, F_inf) written out entrywise for the single-pole case."""
    qm = qp(ctx, p.mu)
    r = qm * (1 - p.beta / p.alpha)
    F1 = np.array([[0, 0], [1 - qm, r - 1 + qp(ctx, p.lam)]], dtype=complex)
    Finf = np.array([[qm, -r], [-(1 - qm), 1 - r]], dtype=complex)
    return F1, Finf
