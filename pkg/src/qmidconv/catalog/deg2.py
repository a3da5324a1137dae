"""Degree-two variant of the q-hypergeometric equation and the two-pole resonant case."""

from __future__ import annotations

import enum

from ..errors import ResonanceViolated
from ..jackson import JacksonConfig, ProductSolution, jackson_adaptive
from ..qseries import QContext
from ..qsystems import Poly, PowerTerm, ScalarQDE, SolutionFn, ThetaTerm
from ._common import gate_positive, hyper_block, power, qp
from .params import Deg2Params, JPParams, deg2_alpha_coords


class Deg2Nonhom(enum.Enum):
    NONE = "none"
    THM = "thm"
    INTRO = "intro"


def deg2_eq(ctx: QContext, p: Deg2Params, nonhom=Deg2Nonhom.NONE) -> ScalarQDE:
    """Three-term equation with quadratic coefficients.

    ``thm`` adds (1 - q^lam) q^(l1+l2+k1-1) t1 t2 x^(1-k2), the term produced
    by the bilateral Jackson sum. ``intro`` adds -(1-q)(1-q^lam) q^(l2+k1-1/2)
    t2 x^(1-k2), the constant that matches the (q - 1) x^-k2 normalization of
    the ``INTRO`` solution (see ``intro_constants``).
    """
    nonhom = Deg2Nonhom(nonhom or Deg2Nonhom.NONE)
    q = ctx.q
    (h1, h2), (l1, l2), (t1, t2) = p.h, p.l, p.t
    k1, k2 = p.k1, p.k2
    c_m1 = Poly.from_roots(1, [qp(ctx, h1 + 0.5) * t1, qp(ctx, h2 + 0.5) * t2])
    c_p1 = Poly.from_roots(qp(ctx, k1 + k2), [qp(ctx, l1 - 0.5) * t1, qp(ctx, l2 - 0.5) * t2])
    c_0 = Poly([-p.p(ctx) * (qp(ctx, 0.5) + qp(ctx, -0.5)) * t1 * t2, -p.E(ctx), -(qp(ctx, k1) + qp(ctx, k2))])
    ql = qp(ctx, p.lam)
    if nonhom is Deg2Nonhom.THM:
        nh = PowerTerm((1 - ql) * qp(ctx, l1 + l2 + k1 - 1) * t1 * t2, 1 - k2)
    elif nonhom is Deg2Nonhom.INTRO:
        nh = PowerTerm(-(1 - q) * (1 - ql) * qp(ctx, l2 + k1 - 0.5) * t2, 1 - k2)
    else:
        nh = None
    return ScalarQDE((-1, 0, 1), (c_m1, c_0, c_p1), nh, name=f"deg2-{nonhom.value}")


def intro_constants(ctx: QContext, p: Deg2Params) -> dict:
    """Literal and consistent constants of the intro-style inhomogeneity.

    The consistent constant is what the ``INTRO`` solution actually produces;
    the literal one carries an extra factor q^-k2.
    """
    q, ql = ctx.q, qp(ctx, p.lam)
    printed = -(1 - q) * (1 - ql) * qp(ctx, p.l2 + p.k1 - p.k2 - 0.5) * p.t2
    consistent = -(1 - q) * (1 - ql) * qp(ctx, p.l2 + p.k1 - 0.5) * p.t2
    return {"printed": printed, "consistent": consistent, "ratio": consistent / printed}


def deg2_param_map(ctx: QContext, p: Deg2Params) -> tuple:
    """(alpha1, alpha2, beta1, beta2, lam) in convolution coordinates."""
    (a1, a2), (b1, b2), lam = deg2_alpha_coords(ctx, p)
    for b, h, t in ((b1, p.h1, p.t1), (b2, p.h2, p.t2)):
        expect = qp(ctx, lam - h + 0.5) / t
        if abs(b - expect) > 1e-12 * max(1.0, abs(expect)):
            raise ResonanceViolated("beta does not match q^(lam - h + 1/2)/t")
    return a1, a2, b1, b2, lam


class Deg2Family(enum.Enum):
    HOM_1 = "hom-1"
    HOM_2 = "hom-2"
    HOM_INF = "hom-inf"
    NONHOM_1 = "nonhom-1"
    NONHOM_2 = "nonhom-2"
    NONHOM_0 = "nonhom-0"
    INTRO = "intro"


DEG2_HOMOGENEOUS = (Deg2Family.HOM_1, Deg2Family.HOM_2, Deg2Family.HOM_INF)
DEG2_THM_NONHOM = (Deg2Family.NONHOM_1, Deg2Family.NONHOM_2, Deg2Family.NONHOM_0)


def deg2_gate(p: Deg2Params):
    return gate_positive("lam + k1 - k2 > 0", p.lam + p.k1 - p.k2)


def deg2_solution(ctx: QContext, p: Deg2Params, which) -> SolutionFn:
    """Closed forms as printed.

    ``hom-*`` solve the homogeneous equation (argument q^(lam+k1-k2), gated);
    ``nonhom-*`` solve the ``thm`` inhomogeneous one; ``intro`` solves the
    ``intro`` inhomogeneous one.
    """
    which = Deg2Family(which)
    q, lam = ctx.q, p.lam
    h, l, t = p.h, p.l, p.t
    k1, k2 = p.k1, p.k2
    L = lambda w: qp(ctx, w)
    gates = ()

    if which in (Deg2Family.HOM_1, Deg2Family.HOM_2):
        i = 0 if which is Deg2Family.HOM_1 else 1
        j = 1 - i
        z = L(lam + k1 - k2)
        u = L(-h[i] + 0.5) / t[i]
        v = L(lam - h[i] + 0.5) / t[i]
        up_c = [L(lam - h[i] + l[i]), L(lam - h[i] + l[j]) * t[j] / t[i]]
        lo_c = [L(1 - h[i] + h[j]) * t[j] / t[i]]

        def f(x):
            return power(ctx, x, lam - k2) * hyper_block(ctx, [v * x], [u * x], [u * x] + up_c, [v * x] + lo_c, z)
        gates = (deg2_gate(p),)
        lattices = (1 / u, 1 / v)
    elif which is Deg2Family.HOM_INF:
        z = L(lam + k1 - k2)
        up = [L(l[m] + 0.5) * t[m] for m in range(2)]
        lo = [L(-lam + h[m] + 1.5) * t[m] for m in range(2)]

        def f(x):
            return power(ctx, x, -k1) * hyper_block(
                ctx, [c / x for c in lo], [c / x for c in up], [c / x for c in up] + [L(1 - lam)], [c / x for c in lo], z)
        gates = (deg2_gate(p),)
        lattices = tuple(up) + tuple(lo)
    elif which in (Deg2Family.NONHOM_1, Deg2Family.NONHOM_2, Deg2Family.INTRO):
        i = 1 if which is Deg2Family.NONHOM_2 else 0
        j = 1 - i
        a = L(l[i] + 0.5) * t[i]
        c = L(lam + l[i] + 0.5) * t[i]
        d = L(l[i] - l[j] + 1) * t[i] / t[j]
        e = [L(lam - h[i] + l[i]), L(lam - h[j] + l[i]) * t[i] / t[j]]
        pre = (q - 1) if which is Deg2Family.INTRO else L(l[i] - 0.5) * t[i]

        def f(x):
            return pre * power(ctx, x, -k2) * hyper_block(
                ctx, [c / x, d, q], [a / x] + e, [a / x] + e, [c / x, d], q)
        lattices = (a, c)
    else:
        up = [L(-h[m] + 0.5) / t[m] for m in range(2)]
        lo = [L(-lam - l[m] + 1.5) / t[m] for m in range(2)]

        def f(x):
            return power(ctx, x, 1 - k2) * L(-lam) * hyper_block(
                ctx, [c * x for c in lo] + [q], [c * x for c in up] + [L(1 - lam)],
                [c * x for c in up] + [L(1 - lam)], [c * x for c in lo], q)
        lattices = tuple(1 / c for c in up + lo)
    return SolutionFn(f, "needs lam + k1 - k2 > 0" if gates else "", f"deg2/{which.value}", gates, lattices)


def deg2_bilateral(ctx: QContext, p: Deg2Params, xi) -> SolutionFn:
    """x^-k2 times the bilateral Jackson sum at a generic ray parameter; solves the ``thm`` equation."""
    q, lam = ctx.q, p.lam
    Y = ProductSolution(
        1.0,
        (qp(ctx, -p.l1 + 1.5) / p.t1, qp(ctx, -p.l2 + 1.5) / p.t2),
        (qp(ctx, lam - p.h1 + 0.5) / p.t1, qp(ctx, lam - p.h2 + 0.5) / p.t2),
        1 / (1 - q),
    )
    cfg = JacksonConfig(xi, lam)
    return SolutionFn(
        lambda x: power(ctx, x, -p.k2) * jackson_adaptive(ctx, cfg, None, Y, 0, x).value,
        "generic xi; needs lam + k1 - k2 > 0", "deg2/bilateral", (deg2_gate(p),), (complex(xi),))


# ------------------------------------------------------------------ two poles, resonant lam


def case2_check(ctx: QContext, p: JPParams) -> None:
    if p.N != 2:
        raise ValueError("the resonant two-pole case needs N = 2")
    p.check_resonance(ctx)


def case2_eq(ctx: QContext, p: JPParams, nonhom=None) -> ScalarQDE:
    """Equation of the first reduced component when q^lam = q^mu b1 b2/(a1 a2).

    ``nonhom`` is None, ``"power"`` (the x^(lam+1) term solved by the
    beta- and x-type solutions) or ``("theta", xi)`` (the boundary term of
    the bilateral sum).
    """
    case2_check(ctx, p)
    q, mu, lam = ctx.q, p.mu, p.lam
    (a1, a2), (b1, b2) = p.alphas, p.betas
    aa = a1 * a2
    c_m1 = Poly.from_roots(1, [qp(ctx, mu + 1) * b1 / aa, qp(ctx, mu + 1) * b2 / aa])
    c_p1 = Poly.from_roots(q, [1 / a1, q / a2])
    c_0 = Poly([
        -(1 + b1 * b2 / aa) * qp(ctx, mu + 2) / aa,
        qp(ctx, mu + 1) * (b1 + b2) / aa + q / a1 + q * q / a2,
        -(1 + q),
    ])
    ql = qp(ctx, lam)
    if nonhom is None:
        nh, tag = None, "hom"
    elif nonhom == "power":
        nh, tag = PowerTerm(q * (1 - q) * (1 - ql) / a1, lam + 1), "power"
    else:
        kind, xi = nonhom
        if kind != "theta":
            raise ValueError(f"unknown inhomogeneity {nonhom!r}")
        xi = complex(xi)
        nh = ThetaTerm(
            q * q * (1 - q) * (1 - ql) / aa * power(ctx, xi, mu), 0,
            ((ql * q * xi, -1), (xi * a1, 0), (xi * a2 / q, 0)),
            ((xi, -1), (xi * b1, 0), (xi * b2, 0)),
            0.0,
        )
        tag = "theta"
    return ScalarQDE((-1, 0, 1), (c_m1, c_0, c_p1), nh, name=f"jp2-resonant-{tag}")


def case2_z_eq(ctx: QContext, p: JPParams) -> ScalarQDE:
    """Equation in z = 1/x for f(z) = z^mu gbar1(1/z)."""
    case2_check(ctx, p)
    q, mu = ctx.q, p.mu
    (a1, a2), (b1, b2) = p.alphas, p.betas
    aa, bb = a1 * a2, b1 * b2
    c_m1 = Poly.from_roots(1, [a1, a2 / q])
    c_p1 = Poly.from_roots(bb / aa, [qp(ctx, -mu - 1) * aa / b1, qp(ctx, -mu - 1) * aa / b2])
    c_0 = Poly([
        -qp(ctx, -mu - 2) * (q + 1) * aa,
        (b1 + b2) / q + qp(ctx, -mu) * a1 + qp(ctx, -mu - 1) * a2,
        -(1 + bb / aa),
    ])
    return ScalarQDE((-1, 0, 1), (c_m1, c_0, c_p1), name="jp2-resonant-z")


def variant_to_case2(ctx: QContext, p: Deg2Params) -> JPParams:
    """Two-pole resonant data whose z = 1/x transform is the given degree-two variant."""
    (h1, h2), (l1, l2), (t1, t2) = p.h, p.l, p.t
    lam = p.lam
    alphas = (qp(ctx, h1 + 0.5) * t1, qp(ctx, h2 + 1.5) * t2)
    betas = (qp(ctx, lam + l1 + 0.5) * t1, qp(ctx, lam + l2 + 0.5) * t2)
    return JPParams(lam + p.k1 - p.k2, alphas, betas, lam)


def case2_as_variant(ctx: QContext, p: Deg2Params, sol: SolutionFn) -> SolutionFn:
    """g(x) = x^(mu - k1) gbar1(1/x), a solution of the variant when ``sol`` is a homogeneous case-2 solution."""
    mu = p.lam + p.k1 - p.k2
    return SolutionFn(lambda x: power(ctx, x, mu - p.k1) * sol(1 / complex(x)),
                      sol.domain_note, f"{sol.provenance}@inverse", sol.gates,
                      tuple(1 / complex(c) for c in sol.lattices if c))


class Case2Family(enum.Enum):
    XI_INV_ALPHA1 = "xi-inv-alpha1"
    XI_INV_ALPHA2 = "xi-inv-alpha2"
    XI_LAMBDA_X = "xi-lambda-x"
    XI_INV_BETA1 = "xi-inv-beta1"
    XI_INV_BETA2 = "xi-inv-beta2"
    XI_X = "xi-x"


CASE2_HOMOGENEOUS = (Case2Family.XI_INV_ALPHA1, Case2Family.XI_INV_ALPHA2, Case2Family.XI_LAMBDA_X)


def case2_solution(ctx: QContext, p: JPParams, which) -> SolutionFn:
    """First reduced component for special ray parameters.

    The alpha- and lambda-type ones solve the homogeneous equation (gated by
    mu > 0); the beta- and x-type ones solve the ``power`` inhomogeneous one.
    """
    case2_check(ctx, p)
    which = Case2Family(which)
    q, mu, lam = ctx.q, p.mu, p.lam
    (a1, a2), (b1, b2) = p.alphas, p.betas
    L = lambda w: qp(ctx, w)
    qm = L(mu)
    gates = ()

    if which is Case2Family.XI_INV_ALPHA1:
        pre = (q - 1) * power(ctx, a1, -mu)

        def f(x):
            return pre * hyper_block(
                ctx, [L(lam + 1) / (a1 * x), q, a2 / a1], [q / (a1 * x), b1 / a1, b2 / a1],
                [q / (a1 * x), b1 / a1, b2 / a1], [L(lam + 1) / (a1 * x), a2 / a1], qm)
        lattices = (q / a1, L(lam + 1) / a1)
    elif which is Case2Family.XI_INV_ALPHA2:
        pre = (q - 1) * qm * power(ctx, a2, -mu)

        def f(x):
            return pre * hyper_block(
                ctx, [L(lam + 2) / (a2 * x), q * q * a1 / a2, q], [q * q / (a2 * x), q * b1 / a2, q * b2 / a2],
                [q * q / (a2 * x), q * b1 / a2, q * b2 / a2], [L(lam + 2) / (a2 * x), q * q * a1 / a2], qm)
        lattices = (q * q / a2, L(lam + 2) / a2)
    elif which is Case2Family.XI_LAMBDA_X:
        pre = (q - 1) * L(-lam * mu)

        def f(x):
            return pre * power(ctx, x, mu) * hyper_block(
                ctx, [q, L(1 - lam) * a1 * x, L(-lam) * a2 * x], [L(1 - lam), L(-lam) * b1 * x, L(-lam) * b2 * x],
                [L(1 - lam), L(-lam) * b1 * x, L(-lam) * b2 * x], [L(1 - lam) * a1 * x, L(-lam) * a2 * x], qm)
        lattices = (L(lam) / b1, L(lam) / b2, L(lam - 1) / a1, L(lam) / a2)
    elif which in (Case2Family.XI_INV_BETA1, Case2Family.XI_INV_BETA2):
        bj, bo = (b1, b2) if which is Case2Family.XI_INV_BETA1 else (b2, b1)
        pre = (1 - q) * bj / a1

        def f(x):
            return pre * power(ctx, x, lam) * hyper_block(
                ctx, [bj * x, q, q * bj / bo], [L(-lam) * bj * x, bj / a1, q * bj / a2],
                [L(-lam) * bj * x, bj / a1, q * bj / a2], [bj * x, q * bj / bo], q)
        lattices = (1 / bj, L(lam) / bj)
    else:
        pre = (1 - q) * q / a1

        def f(x):
            return pre * power(ctx, x, lam - 1) * hyper_block(
                ctx, [q, q * q / (b1 * x), q * q / (b2 * x)], [q / (a1 * x), q * q / (a2 * x), L(1 - lam)],
                [q / (a1 * x), q * q / (a2 * x), L(1 - lam)], [q * q / (b1 * x), q * q / (b2 * x)], q)
        lattices = (q / a1, q / a2, q / b1, q / b2)
    if which in CASE2_HOMOGENEOUS:
        gates = (gate_positive("mu > 0", mu),)
    return SolutionFn(f, "needs mu > 0" if gates else "", f"jp2-resonant/{which.value}", gates, lattices)


def case2_bilateral(ctx: QContext, p: JPParams, xi) -> SolutionFn:
    """Bilateral sum at a generic ray parameter; solves the ``("theta", xi)`` equation."""
    case2_check(ctx, p)
    (a1, a2), (b1, b2) = p.alphas, p.betas
    Y = ProductSolution(p.mu, (ctx.q * a1, a2), (b1, b2), -1.0)
    cfg = JacksonConfig(xi, p.lam)
    return SolutionFn(lambda x: jackson_adaptive(ctx, cfg, None, Y, 0, x).value,
                      "generic xi; needs mu > 0", "jp2-resonant/bilateral",
                      (gate_positive("mu > 0", p.mu),), (complex(xi),))
