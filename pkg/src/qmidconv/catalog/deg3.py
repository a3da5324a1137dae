"""Degree-three variant and the three-pole mu = 0 resonant case."""

from __future__ import annotations

import enum
import math

from ..errors import ResonanceViolated
from ..jackson import JacksonConfig, ProductSolution, jackson_adaptive
from ..qseries import QContext
from ..qsystems import Gate, Poly, PowerTerm, ScalarQDE, SolutionFn, ThetaTerm, operator_compose
from ._common import hyper_block, power, qp
from .params import Deg3Params, JPParams, deg3_alpha_coords

PERMS = ((0, 1, 2), (1, 0, 2), (2, 0, 1))


class Deg3Nonhom(enum.Enum):
    NONE = "none"
    STYLE1 = "style1"
    STYLE2 = "style2"
    THETA = "theta"


def deg3_eq(ctx: QContext, p: Deg3Params, nonhom=Deg3Nonhom.NONE, xi=None) -> ScalarQDE:
    """Three-term equation with cubic coefficients; ``theta`` needs the ray parameter ``xi``."""
    nonhom = Deg3Nonhom(nonhom or Deg3Nonhom.NONE)
    q, A, lam = ctx.q, p.alpha_exp, p.lam
    h, l, t = p.h, p.l, p.t
    S = sum(h) + sum(l)
    tt = t[0] * t[1] * t[2]
    c_m1 = Poly.from_roots(1, [qp(ctx, h[i] + 0.5) * t[i] for i in range(3)])
    c_p1 = Poly.from_roots(qp(ctx, 2 * A + 1), [qp(ctx, l[i] - 0.5) * t[i] for i in range(3)])
    lin_sum = 0j
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        lin_sum += (qp(ctx, -h[i]) + qp(ctx, -l[i])) * t[j] * t[k]
    c_0 = Poly([
        qp(ctx, S / 2) * (q + 1) * tt,
        -qp(ctx, (S + 1) / 2) * lin_sum,
        qp(ctx, 0.5) * sum((qp(ctx, h[i]) + qp(ctx, l[i])) * t[i] for i in range(3)),
        -(q + 1),
    ]).scale(qp(ctx, A))
    ql = qp(ctx, lam)
    c1 = qp(ctx, A + sum(l) - 0.5) * tt * (1 - ql)
    if nonhom is Deg3Nonhom.STYLE1:
        nh = PowerTerm(-c1, 1 - A)
    elif nonhom is Deg3Nonhom.STYLE2:
        nh = PowerTerm(qp(ctx, A) * (1 - ql), lam - A + 2)
    elif nonhom is Deg3Nonhom.THETA:
        if xi is None:
            raise ValueError("the theta inhomogeneity needs xi")
        xi = complex(xi)
        nh = ThetaTerm(
            c1, 1 - A,
            ((ql * q * xi, -1),) + tuple((xi * qp(ctx, -l[m] + 0.5) / t[m], 0) for m in range(3)),
            ((xi, -1),) + tuple((xi * qp(ctx, lam - h[m] + 0.5) / t[m], 0) for m in range(3)),
            1.0,
        )
    else:
        nh = None
    return ScalarQDE((-1, 0, 1), (c_m1, c_0, c_p1), nh, name=f"deg3-{nonhom.value}")


def deg3_param_map(ctx: QContext, p: Deg3Params) -> JPParams:
    """Three-pole mu = 0 data whose first reduced component is x^alpha_exp times a variant solution."""
    alphas, betas, lam = deg3_alpha_coords(ctx, p)
    for b, h, t in zip(betas, p.h, p.t):
        expect = qp(ctx, lam - h + 0.5) / t
        if abs(b - expect) > 1e-12 * max(1.0, abs(expect)):
            raise ResonanceViolated("beta does not match q^(lam - h + 1/2)/t")
    return JPParams(0.0, alphas, betas, lam)


def lam_gate(lam) -> Gate:
    """lam must avoid the positive integers, where (q^(1-lam))_inf vanishes."""
    v = complex(lam).real
    dist = abs(v - round(v)) if round(v) >= 1 else math.inf
    return Gate("lam not in {1, 2, ...}", dist > 1e-9, dist)


class Deg3Family(enum.Enum):
    FIRST_1 = "first-1"
    FIRST_2 = "first-2"
    FIRST_3 = "first-3"
    FIRST_0 = "first-0"
    SECOND_1 = "second-1"
    SECOND_2 = "second-2"
    SECOND_3 = "second-3"
    SECOND_0 = "second-0"


DEG3_FIRST = (Deg3Family.FIRST_1, Deg3Family.FIRST_2, Deg3Family.FIRST_3, Deg3Family.FIRST_0)
DEG3_SECOND = (Deg3Family.SECOND_1, Deg3Family.SECOND_2, Deg3Family.SECOND_3, Deg3Family.SECOND_0)


def deg3_solution(ctx: QContext, p: Deg3Params, which) -> SolutionFn:
    """Closed forms as printed; ``first-*`` solve ``style1`` and ``second-*`` solve ``style2``."""
    which = Deg3Family(which)
    q, A, lam = ctx.q, p.alpha_exp, p.lam
    h, l, t = p.h, p.l, p.t
    L = lambda w: qp(ctx, w)
    gates = (lam_gate(lam),)
    name = which.value

    if which in (Deg3Family.FIRST_1, Deg3Family.FIRST_2, Deg3Family.FIRST_3):
        i, j, k = PERMS[int(name[-1]) - 1]
        a = L(l[i] + 0.5) * t[i]
        c = L(lam + l[i] + 0.5) * t[i]
        up_c = [L(lam + l[i] - h[i]), L(lam + l[i] - h[j]) * t[i] / t[j], L(lam + l[i] - h[k]) * t[i] / t[k]]
        lo_c = [L(l[i] - l[j] + 1) * t[i] / t[j], L(l[i] - l[k] + 1) * t[i] / t[k]]
        pre = L(l[i] - 0.5) * t[i]

        def f(x):
            lo = [c / x] + lo_c
            up = [a / x] + up_c
            return pre * power(ctx, x, -A) * hyper_block(ctx, lo + [q], up, up, lo, q)
        lattices = (a, c)
    elif which is Deg3Family.FIRST_0:
        upc = [L(-h[m] + 0.5) / t[m] for m in range(3)]
        loc = [L(-lam - l[m] + 1.5) / t[m] for m in range(3)]

        def f(x):
            up = [u * x for u in upc] + [L(1 - lam)]
            lo = [v * x for v in loc]
            return power(ctx, x, 1 - A) * L(-lam) * hyper_block(ctx, lo + [q], up, up, lo, q)
        lattices = tuple(1 / u for u in upc + loc)
    elif which is Deg3Family.SECOND_0:
        upc = [L(l[m] + 0.5) * t[m] for m in range(3)]
        loc = [L(-lam + h[m] + 1.5) * t[m] for m in range(3)]

        def f(x):
            up = [u / x for u in upc] + [L(1 - lam)]
            lo = [v / x for v in loc]
            return power(ctx, x, lam - A - 1) * hyper_block(ctx, lo + [q], up, up, lo, q)
        lattices = tuple(upc + loc)
    else:
        i, j, k = PERMS[int(name[-1]) - 1]
        a = L(-h[i] + 0.5) / t[i]
        c = L(lam - h[i] + 0.5) / t[i]
        up_c = [L(lam + l[i] - h[i]), L(lam + l[j] - h[i]) * t[j] / t[i], L(lam + l[k] - h[i]) * t[k] / t[i]]
        lo_c = [L(h[j] - h[i] + 1) * t[j] / t[i], L(h[k] - h[i] + 1) * t[k] / t[i]]
        pre = L(lam - h[i] - 0.5) / t[i]

        def f(x):
            lo = [c * x] + lo_c
            up = [a * x] + up_c
            return pre * power(ctx, x, lam - A) * hyper_block(ctx, lo + [q], up, up, lo, q)
        lattices = (1 / a, 1 / c)
    return SolutionFn(f, "needs lam not a positive integer", f"deg3/{name}", gates, lattices)


def deg3_bilateral(ctx: QContext, p: Deg3Params, xi) -> SolutionFn:
    """x^-alpha_exp times the bilateral Jackson sum; solves the ``theta`` equation at the same xi."""
    q, lam = ctx.q, p.lam
    Y = ProductSolution(
        1.0,
        tuple(qp(ctx, -p.l[m] + 1.5) / p.t[m] for m in range(3)),
        tuple(qp(ctx, lam - p.h[m] + 0.5) / p.t[m] for m in range(3)),
        1 / (1 - q),
    )
    cfg = JacksonConfig(xi, lam)
    return SolutionFn(
        lambda x: power(ctx, x, -p.alpha_exp) * jackson_adaptive(ctx, cfg, None, Y, 0, x).value,
        "generic xi", "deg3/bilateral", (lam_gate(lam),), (complex(xi),))


def deg3_as_alpha(ctx: QContext, p: Deg3Params, sol: SolutionFn) -> SolutionFn:
    """x^alpha_exp g(x): the first reduced component in convolution coordinates."""
    return SolutionFn(lambda x: power(ctx, x, p.alpha_exp) * sol(x), sol.domain_note,
                      f"{sol.provenance}@alpha", sol.gates, sol.lattices)


# ------------------------------------------------------------------ three poles, mu = 0


def alpha3_check(ctx: QContext, p: JPParams) -> None:
    if p.N != 3:
        raise ValueError("the three-pole case needs N = 3")
    if abs(complex(p.mu)) > 1e-14:
        raise ResonanceViolated("the three-pole reduction needs mu = 0")
    p.check_resonance(ctx)


def alpha3_eq(ctx: QContext, p: JPParams, nonhom=None) -> ScalarQDE:
    """Equation of the first reduced component of the three-pole mu = 0 case.

    ``nonhom`` is None, ``"first"`` (x-linear term), ``"second"`` (x^(lam+2)
    term) or ``("theta", xi)``.
    """
    alpha3_check(ctx, p)
    q, lam = ctx.q, p.lam
    a1, a2, a3 = p.alphas
    b1, b2, b3 = p.betas
    Pa, Pb = a1 * a2 * a3, b1 * b2 * b3
    c_m1 = Poly.from_roots(1, [q * b1 * b2 / Pa, q * b2 * b3 / Pa, q * b3 * b1 / Pa])
    c_p1 = Poly.from_roots(q, [1 / a1, q / a2, 1 / a3])
    c_0 = Poly([
        q * q * (1 + q) * Pb / Pa ** 2,
        -q * q / Pa * (b1 + b2 + b3 + Pb / Pa * (a1 + a2 / q + a3)),
        q * (1 / a1 + q / a2 + 1 / a3 + (b1 * b2 + b2 * b3 + b3 * b1) / Pa),
        -(1 + q),
    ])
    ql = qp(ctx, lam)
    base = (q - 1) * (1 - ql) * (a1 - a3)
    if nonhom is None:
        nh, tag = None, "hom"
    elif nonhom == "first":
        nh, tag = PowerTerm(-q * q * base / Pa, 1), "first"
    elif nonhom == "second":
        nh, tag = PowerTerm(q * base / (a1 * a3), lam + 2), "second"
    else:
        kind, xi = nonhom
        if kind != "theta":
            raise ValueError(f"unknown inhomogeneity {nonhom!r}")
        xi = complex(xi)
        nh = ThetaTerm(
            q * q * base / Pa, 1,
            ((ql * q * xi, -1), (xi * a1, 0), (xi * a2 / q, 0), (xi * a3, 0)),
            ((xi, -1), (xi * b1, 0), (xi * b2, 0), (xi * b3, 0)),
            1.0,
        )
        tag = "theta"
    return ScalarQDE((-1, 0, 1), (c_m1, c_0, c_p1), nh, name=f"jp3-mu0-{tag}")


def alpha3_inner(ctx: QContext, p: JPParams) -> ScalarQDE:
    """The second-order bracket (shifts 0..2) of the factorized fourth-order operator."""
    alpha3_check(ctx, p)
    q = ctx.q
    a1, a2, a3 = p.alphas
    b1, b2, b3 = p.betas
    Pa, Pb = a1 * a2 * a3, b1 * b2 * b3
    c2 = Poly.from_roots(q * q * Pa, [1 / (q * a1), 1 / a2, 1 / (q * a3)])
    c1 = Poly([
        (q + 1) * Pb / Pa,
        -q * (b1 + b2 + b3 + Pb / Pa * (a1 + a2 / q + a3)),
        q * (a1 * a2 + a2 * a3 + q * a3 * a1 + b1 * b2 + b2 * b3 + b3 * b1),
        -q * (q + 1) * Pa,
    ])
    c0 = Poly.from_roots(q * Pa, [b1 * b2 / Pa, b2 * b3 / Pa, b3 * b1 / Pa])
    return ScalarQDE((0, 1, 2), (c0, c1, c2), name="jp3-mu0-inner")


def alpha3_fourth_order(ctx: QContext, p: JPParams) -> ScalarQDE:
    """(T - q^2 Pb/Pa)(T - q) applied to the bracket."""
    a1, a2, a3 = p.alphas
    b1, b2, b3 = p.betas
    c = ctx.q ** 2 * (b1 * b2 * b3) / (a1 * a2 * a3)
    return operator_compose(ctx, [c, ctx.q], alpha3_inner(ctx, p))


class Alpha3Family(enum.Enum):
    XI_INV_ALPHA1 = "xi-inv-alpha1"
    XI_INV_ALPHA2 = "xi-inv-alpha2"
    XI_INV_ALPHA3 = "xi-inv-alpha3"
    XI_LAMBDA_X = "xi-lambda-x"
    XI_INV_BETA1 = "xi-inv-beta1"
    XI_INV_BETA2 = "xi-inv-beta2"
    XI_INV_BETA3 = "xi-inv-beta3"
    XI_X = "xi-x"


ALPHA3_FIRST = (Alpha3Family.XI_INV_ALPHA1, Alpha3Family.XI_INV_ALPHA2,
                Alpha3Family.XI_INV_ALPHA3, Alpha3Family.XI_LAMBDA_X)


def alpha3_solution(ctx: QContext, p: JPParams, which) -> SolutionFn:
    """Special-xi closed forms; alpha- and lambda-type solve ``first``, beta- and x-type solve ``second``."""
    alpha3_check(ctx, p)
    which = Alpha3Family(which)
    q, lam = ctx.q, p.lam
    a1, a2, a3 = p.alphas
    b = p.betas
    L = lambda w: qp(ctx, w)
    d = a3 - a1

    if which in (Alpha3Family.XI_INV_ALPHA1, Alpha3Family.XI_INV_ALPHA3):
        ak, other = (a1, [a2 / a1, q * a3 / a1]) if which is Alpha3Family.XI_INV_ALPHA1 else (a3, [q * a1 / a3, a2 / a3])
        pre = (1 - q) * d / ak
        bs = [bj / ak for bj in b]

        def f(x):
            return pre * hyper_block(ctx, [L(lam + 1) / (ak * x)] + other + [q], [q / (ak * x)] + bs,
                                     [q / (ak * x)] + bs, [L(lam + 1) / (ak * x)] + other, q)
        lattices = (q / ak, L(lam + 1) / ak)
    elif which is Alpha3Family.XI_INV_ALPHA2:
        pre = (1 - q) * q * d / a2
        bs = [q * bj / a2 for bj in b]
        other = [q * q * a1 / a2, q * q * a3 / a2]

        def f(x):
            return pre * hyper_block(ctx, [L(lam + 2) / (a2 * x)] + other + [q], [q * q / (a2 * x)] + bs,
                                     [q * q / (a2 * x)] + bs, [L(lam + 2) / (a2 * x)] + other, q)
        lattices = (q * q / a2, L(lam + 2) / a2)
    elif which is Alpha3Family.XI_LAMBDA_X:
        pre = (1 - q) * L(-lam) * d
        upc = [L(-lam) * bj for bj in b]
        loc = [L(1 - lam) * a1, L(-lam) * a2, L(1 - lam) * a3]

        def f(x):
            up = [u * x for u in upc] + [L(1 - lam)]
            lo = [v * x for v in loc]
            return pre * x * hyper_block(ctx, lo + [q], up, up, lo, q)
        lattices = tuple(1 / u for u in upc + loc)
    elif which is Alpha3Family.XI_X:
        pre = (1 - q) * q * d / (a1 * a3)
        upc = [q / a1, q * q / a2, q / a3]
        loc = [q * q / bj for bj in b]

        def f(x):
            up = [u / x for u in upc] + [L(1 - lam)]
            lo = [v / x for v in loc]
            return pre * power(ctx, x, lam - 1) * hyper_block(ctx, lo + [q], up, up, lo, q)
        lattices = tuple(upc + loc)
    else:
        j = int(which.value[-1]) - 1
        bj = b[j]
        o1, o2 = [b[m] for m in range(3) if m != j]
        pre = (1 - q) * d / (a1 * a3) * bj
        upc = [bj / a1, q * bj / a2, bj / a3]
        loc = [q * bj / o1, q * bj / o2]

        def f(x):
            return pre * power(ctx, x, lam) * hyper_block(
                ctx, [bj * x] + loc + [q], [L(-lam) * bj * x] + upc, [L(-lam) * bj * x] + upc, [bj * x] + loc, q)
        lattices = (1 / bj, L(lam) / bj)
    return SolutionFn(f, "mu = 0, q^lam = prod beta/prod alpha", f"jp3-mu0/{which.value}",
                      (lam_gate(lam),), lattices)


def alpha3_bilateral(ctx: QContext, p: JPParams, xi) -> SolutionFn:
    """Bilateral sum at a generic ray parameter; solves the ``("theta", xi)`` equation."""
    alpha3_check(ctx, p)
    q = ctx.q
    a1, a2, a3 = p.alphas
    Y = ProductSolution(1.0, (q * a1, a2, q * a3), tuple(p.betas), a3 - a1)
    cfg = JacksonConfig(xi, p.lam)
    return SolutionFn(lambda x: jackson_adaptive(ctx, cfg, None, Y, 0, x).value,
                      "generic xi", "jp3-mu0/bilateral", (lam_gate(p.lam),), (complex(xi),))
