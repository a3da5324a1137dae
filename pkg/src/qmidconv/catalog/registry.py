"""Machine-readable catalog: parameter families, checks, and the suites that group them.

Every check evaluates a list of nonnegative error measures for one
parameter draw and compares each against its tolerance. When one of the
check's gates fails for the draw, the check is reported as skipped.
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from typing import Callable, Iterator, Sequence

import numpy as np

from .. import convolution as conv
from ..errors import QMCError
from ..jackson import JacksonConfig, check_convergence, jp_product, partial_sum_defect
from ..qseries import QContext, lattice_offset, q_power
from ..qsystems import (
    Gate,
    ScalarQDE,
    SolutionFn,
    conjugate_by_power,
    operator_compose,
    proportionality_defect,
    sample_grid,
    scalar_residual,
    system_residual,
)
from . import deg2, deg3, jp, qhg
from ._common import power
from .params import (
    Deg2Params,
    Deg3Params,
    JPParams,
    QHGParams,
    draw_deg2,
    draw_deg3,
    draw_jp,
    draw_qhg,
    draw_resonant_L,
    draw_resonant_mu0,
)

XI_CANDIDATES = tuple(0.77 * 1.01 ** k for k in range(60))
EXACT_TOL = 1e-12
COEFF_TOL = 1e-10


# ------------------------------------------------------------------ parameter families


@dataclasses.dataclass(frozen=True)
class Family:
    name: str
    record: type
    draw: Callable
    description: str

    def schema(self) -> list[str]:
        return [f.name for f in dataclasses.fields(self.record)]

    def from_dict(self, data: dict):
        fields = set(self.schema())
        unknown = set(data) - fields
        if unknown:
            raise ValueError(f"unknown parameters for {self.name}: {sorted(unknown)}")
        return self.record(**{k: _complexify(v) for k, v in data.items()})


def _complexify(v):
    if isinstance(v, (list, tuple)):
        return tuple(_complexify(u) for u in v)
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return complex(v["re"], v["im"])
    return v


FAMILIES = {
    f.name: f
    for f in (
        Family("qhg", QHGParams, draw_qhg, "single pole, mu > 0, |q|^(lam-mu)|alpha/beta| < 1"),
        Family("jp2", JPParams, lambda c, r: draw_jp(c, r, 2), "two poles, generic mu > 0 and lam"),
        Family("jp3", JPParams, lambda c, r: draw_jp(c, r, 3), "three poles, generic mu > 0 and lam"),
        Family("jp2-mu0", JPParams, lambda c, r: draw_jp(c, r, 2, mu=0.0), "two poles, mu = 0"),
        Family("jp2-resonant", JPParams, draw_resonant_L, "two poles, mu > 0, q^lam = q^mu prod beta/prod alpha"),
        Family("jp3-mu0", JPParams, draw_resonant_mu0, "three poles, mu = 0, q^lam = prod beta/prod alpha"),
        Family("deg2", Deg2Params, draw_deg2, "degree-two variant, lam + k1 - k2 > 0"),
        Family("deg3", Deg3Params, draw_deg3, "degree-three variant"),
    )
}


def generic_xi(ctx: QContext, avoid: Sequence) -> float:
    """Candidate ray parameter farthest (in lattice distance) from every point in ``avoid`` and from 1."""
    points = [complex(a) for a in list(avoid) + [1.0] if a]
    best, best_gap = None, -1.0
    for xi in XI_CANDIDATES:
        gap = min(lattice_offset(ctx, xi, a)[1] for a in points)
        if gap > best_gap + 1e-12:
            best, best_gap = xi, gap
    if best_gap < 1e-3:
        raise QMCError("no generic ray parameter available")
    return best


def _xi_qhg(ctx, p):
    return generic_xi(ctx, [1 / p.alpha, 1 / p.beta])


def _xi_jp(ctx, p):
    return generic_xi(ctx, [1 / a for a in p.alphas] + [1 / b for b in p.betas])


def _xi_deg2(ctx, p):
    a1, a2, b1, b2, _ = deg2.deg2_param_map(ctx, p)
    return generic_xi(ctx, [1 / a1, 1 / a2, 1 / b1, 1 / b2])


def _xi_deg3(ctx, p):
    jpp = deg3.deg3_param_map(ctx, p)
    return _xi_jp(ctx, jpp)


# ------------------------------------------------------------------ checks


@dataclasses.dataclass(frozen=True)
class Measurement:
    label: str
    value: float


@dataclasses.dataclass(frozen=True)
class Outcome:
    gates: tuple
    measurements: tuple

    @property
    def gated_out(self) -> bool:
        return not all(g.satisfied for g in self.gates)


@dataclasses.dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    family: str
    equation: str
    metric: str
    tol: float | None
    run: Callable

    def tolerance(self, ctx: QContext) -> float:
        return ctx.residual_tol if self.tol is None else self.tol

    def to_dict(self) -> dict:
        fam = FAMILIES[self.family]
        return {
            "id": self.id,
            "anchor": self.anchor,
            "family": self.family,
            "parameter_schema": fam.schema(),
            "gates": fam.description,
            "equation": self.equation,
            "metric": self.metric,
            "tol": self.tol,
        }


@dataclasses.dataclass(frozen=True)
class GridSpec:
    points: int = 20
    lo: float = 0.05
    hi: float = 5.0

    def __post_init__(self):
        if self.points < 1 or not 0 < self.lo <= self.hi:
            raise ValueError(f"bad sample grid {self}")


_GRID: contextvars.ContextVar[GridSpec] = contextvars.ContextVar("grid", default=GridSpec())


@contextlib.contextmanager
def use_grid(spec: GridSpec) -> Iterator[GridSpec]:
    """Run checks on a different sample grid inside the block."""
    token = _GRID.set(spec)
    try:
        yield spec
    finally:
        _GRID.reset(token)


def _grid(ctx: QContext, qde: ScalarQDE | None, lattices: Sequence, lo=None, hi=None) -> list[float]:
    g = _GRID.get()
    lo = g.lo if lo is None else lo
    hi = g.hi if hi is None else hi
    return sample_grid(ctx, g.points, lo, hi, qde, [complex(c) for c in lattices])


def _label(x) -> str:
    return f"x={x:.10g}"


def residual_check(cid, anchor, family, equation, build, tol=None) -> Check:
    """``build(ctx, p) -> (qde, sol)``; scalar residual over the default grid."""

    def run(ctx, p):
        qde, sol = build(ctx, p)
        if not sol.gates_ok:
            return Outcome(sol.gates, ())
        xs = _grid(ctx, qde, sol.lattices)
        return Outcome(sol.gates, tuple(Measurement(_label(x), scalar_residual(ctx, qde, sol, x)) for x in xs))

    return Check(cid, anchor, family, equation, "scalar-residual", tol, run)


def value_check(cid, anchor, family, metric, measure, tol, equation="") -> Check:
    """``measure(ctx, p) -> (gates, [(label, value), ...])``."""

    def run(ctx, p):
        gates, values = measure(ctx, p)
        if not all(g.satisfied for g in gates):
            return Outcome(tuple(gates), ())
        return Outcome(tuple(gates), tuple(Measurement(lbl, float(v)) for lbl, v in values))

    return Check(cid, anchor, family, equation, metric, tol, run)


def _difference(ctx, a: SolutionFn, b: SolutionFn) -> SolutionFn:
    return SolutionFn(lambda x: a(x) - b(x), a.domain_note, f"{a.provenance}-{b.provenance}",
                      a.gates + b.gates, a.lattices + b.lattices)


def _matrix_error(A, B) -> float:
    A, B = np.asarray(A, dtype=complex), np.asarray(B, dtype=complex)
    return float(np.max(np.abs(A - B)) / max(1.0, np.max(np.abs(B))))


def _eq_values(ctx, qde: ScalarQDE, x) -> dict:
    out = {k: c(x) for k, c in zip(qde.shifts, qde.coeffs)}
    if qde.nonhom is not None:
        out[99] = qde.nonhom.c  # the inhomogeneity constant rides along as an extra slot
    return out


def _proportional(ctx, left: ScalarQDE, right: ScalarQDE, xs) -> list:
    return [(_label(x), proportionality_defect(_eq_values(ctx, left, x), _eq_values(ctx, right, x))) for x in xs]


def _poly_error(ctx, got: ScalarQDE, want: ScalarQDE) -> float:
    keys = set(got.shifts) | set(want.shifts)
    scale = max(max(abs(c) for c in p.coeffs) for p in want.coeffs)
    return max(got.coefficient(k).max_abs_diff(want.coefficient(k)) for k in keys) / scale


# ------------------------------------------------------------------ single pole


def _qhg_checks() -> list[Check]:
    out = []
    for fam in qhg.QHGFamily:
        if fam is qhg.QHGFamily.HEINE_LOCAL:
            continue
        out.append(residual_check(
            f"qhg/{fam.value}", f"single-pole closed form, {fam.value}", "qhg", "qhg-y0",
            lambda c, p, fam=fam: (qhg.qhg_y0_eq(c, p), qhg.qhg_solution(c, p, fam))))

    def heine(ctx, p):
        a = qhg.qhg_solution(ctx, p, qhg.QHGFamily.XI_INV_ALPHA)
        b = qhg.qhg_solution(ctx, p, qhg.QHGFamily.HEINE_LOCAL)
        lo = 2.0 * abs(ctx.q) ** 2 / abs(p.alpha)
        xs = _grid(ctx, None, a.lattices, max(lo, 0.05), max(5.0, 4 * lo))
        return a.gates, [(_label(x), abs(a(x) - b(x)) / abs(b(x))) for x in xs]

    out.append(value_check("qhg/heine-local", "xi = 1/alpha form against the local series at infinity",
                           "qhg", "relative-difference", heine, 1e-9, "qhg-y0"))

    for pair in ("inv-beta", "x"):
        def pseudo(ctx, p, pair=pair):
            r = qhg.qhg_pseudo_constant(ctx, p, pair)
            sol = qhg.qhg_solution(ctx, p, qhg.QHGFamily.LIMIT_X)
            xs = _grid(ctx, None, sol.lattices + (1 / p.alpha, 1 / p.beta))
            return sol.gates, [(_label(x), abs(r(ctx.q * x) / r(x) - 1)) for x in xs]

        out.append(value_check(f"qhg/pseudo-constant-{pair}", "kernel-variant ratio is q-periodic",
                               "qhg", "relative-difference", pseudo, 1e-9))

    def elim(ctx, p):
        e = jp.qhg_elimination(ctx, p)
        qde = qhg.qhg_y0_eq(ctx, p)
        xs = _grid(ctx, qde, (1 / p.alpha,))
        return (), [(_label(x), proportionality_defect(e.coefficients(x), _eq_values(ctx, qde, x))) for x in xs]

    out.append(value_check("qhg/elimination", "elimination of the convolved 2x2 system", "qhg",
                           "proportionality-defect", elim, COEFF_TOL, "qhg-y0"))
    return out


def _qhg_jackson_checks() -> list[Check]:
    def thm(ctx, p):
        xi = _xi_qhg(ctx, p)
        Y = qhg.qhg_jackson_vector(ctx, p, xi)
        spec = conv.convolve(ctx, qhg.qhg_system(ctx, p), p.lam).as_system()
        xs = _grid(ctx, None, (xi, 1 / p.alpha))
        gates = qhg.qhg_gates(ctx, p)
        return gates, [(_label(x), system_residual(ctx, spec, Y, x)) for x in xs]

    def partial(ctx, p):
        xi = _xi_qhg(ctx, p)
        spec = qhg.qhg_system(ctx, p)
        Y = jp_product(p.mu, [p.alpha], [p.beta])
        cfg = JacksonConfig(xi, p.lam)
        xs = _grid(ctx, None, (xi, 1 / p.alpha))
        K, L = -7, 13
        out = []
        for x in xs:
            for i in range(2):
                out.append((f"{_label(x)},i={i}", partial_sum_defect(ctx, cfg, spec, Y, i, x, K, L)))
        return (), out

    return [
        value_check("qhg/jackson-system", "adaptive Jackson solution of the convolved single-pole system",
                    "qhg", "system-residual", thm, None, "convolved-system"),
        value_check("qhg/partial-sum-identity", "finite partial-sum relation with boundary terms",
                    "qhg", "relative-difference", partial, 1e-10, "convolved-system"),
    ]


# ------------------------------------------------------------------ convolution fixtures


def _convolution_checks() -> list[Check]:
    def fixture(ctx, p):
        res = jp.jp_convolution(ctx, p)
        F_inf, F = jp.jp_F_printed(ctx, p)
        vals = [("F_inf", _matrix_error(res.F_inf, F_inf))]
        vals += [(f"F_{i + 1}", _matrix_error(a, b)) for i, (a, b) in enumerate(zip(res.F, F))]
        return (), vals

    def qhg_fixture(ctx, p):
        res = conv.convolve(ctx, qhg.qhg_system(ctx, p), p.lam)
        F1, Finf = qhg.qhg_F_printed(ctx, p)
        return (), [("F_inf", _matrix_error(res.F_inf, Finf)), ("F_1", _matrix_error(res.F[0], F1))]

    def dims(expect_K, expect_L):
        def measure(ctx, p):
            rep = conv.subspaces(ctx, jp.jp_convolution(ctx, p))
            return (), [("K_dim", abs(rep.K_dim - expect_K)), ("L_dim", abs(rep.L_dim - expect_L))]
        return measure

    def reduced(P, printed):
        def measure(ctx, p):
            res = jp.jp_convolution(ctx, p)
            Finf, F = conv.middle_convolve(ctx, res, P)
            want_inf, want = printed(ctx, p)
            vals = [("Fbar_inf", _matrix_error(Finf, want_inf))]
            if want is not None:
                vals += [(f"Fbar_{i + 1}", _matrix_error(a, b)) for i, (a, b) in enumerate(zip(F, want))]
            return (), vals
        return measure

    def resonant_printed(ctx, p):
        return np.eye(2), None

    def deg3_printed(ctx, p):
        _, (B1, B2, B3) = jp.jp_coefficients(ctx, 0.0, p.alphas, p.betas)
        ql = q_power(ctx, p.lam)
        F1 = [[B1 - 1 + ql, B2], [0, 0]]
        F2 = [[0, 0], [B1, B2 - 1 + ql]]
        F3 = [[-B1, -B2], [-B1, -B2]]
        return np.eye(2), (F1, F2, F3)

    def invariance(ctx, p):
        res = jp.jp_convolution(ctx, p)
        rep = conv.subspaces(ctx, res)
        vals = []
        if rep.K_basis:
            vals.append(("K", conv.invariance_defect(res, rep.K_basis)))
        if rep.L_basis:
            vals.append(("L", conv.invariance_defect(res, rep.L_basis)))
        return (), vals

    return [
        value_check("convolution/qhg-fixture", "single-pole convolved matrices", "qhg", "matrix-error",
                    qhg_fixture, EXACT_TOL),
        value_check("convolution/jp2-fixture", "two-pole convolved matrices", "jp2", "matrix-error",
                    fixture, EXACT_TOL),
        value_check("convolution/jp3-fixture", "three-pole convolved matrices", "jp3", "matrix-error",
                    fixture, EXACT_TOL),
        value_check("convolution/generic-dims", "no invariant subspaces for generic data", "jp2",
                    "dimension-mismatch", dims(0, 0), 0.5),
        value_check("convolution/mu0-dims", "mu = 0 gives a one-dimensional K", "jp2-mu0",
                    "dimension-mismatch", dims(1, 0), 0.5),
        value_check("convolution/resonant-dims", "resonant lam gives a one-dimensional L", "jp2-resonant",
                    "dimension-mismatch", dims(0, 1), 0.5),
        value_check("convolution/mu0-reduction", "mu = 0 two-pole middle convolution", "jp2-mu0",
                    "matrix-error", reduced(jp.P_MU0_SELECT, jp.mu0_reduced_printed), COEFF_TOL),
        value_check("convolution/resonant-reduction", "resonant two-pole middle convolution has identity at infinity",
                    "jp2-resonant", "matrix-error", reduced(jp.P_RESONANT_L, resonant_printed), COEFF_TOL),
        value_check("convolution/jp3-mu0-reduction", "three-pole mu = 0 middle convolution", "jp3-mu0",
                    "matrix-error", reduced(jp.P_DEG3, deg3_printed), COEFF_TOL),
        value_check("convolution/mu0-invariance", "K and L are invariant", "jp2-mu0", "span-residual",
                    invariance, 1e-8),
        value_check("convolution/resonant-invariance", "K and L are invariant", "jp2-resonant", "span-residual",
                    invariance, 1e-8),
    ]


def _jp_system_checks() -> list[Check]:
    def thm(ctx, p):
        xi = _xi_jp(ctx, p)
        Y = jp.jp_jackson_vector(ctx, p, xi)
        spec = jp.jp_convolution(ctx, p).as_system()
        xs = _grid(ctx, None, [xi] + [1 / a for a in p.alphas])
        rep = check_convergence(ctx, "product", p.as_dict())
        gates = tuple(Gate(n, ok, m) for n, ok, m in rep.conditions)
        return gates, [(_label(x), system_residual(ctx, spec, Y, x)) for x in xs]

    return [value_check("jp/jackson-system", "adaptive Jackson solution of the convolved three-pole system",
                        "jp3", "system-residual", thm, None, "convolved-system")]


# ------------------------------------------------------------------ mu = 0, two poles


def _mu0_checks() -> list[Check]:
    out = []
    for fam in jp.Mu0Family:
        nonhom = fam in jp.MU0_NONHOM
        out.append(residual_check(
            f"jp2-mu0/{fam.value}", f"mu = 0 two-pole closed form, {fam.value}", "jp2-mu0",
            "jp2-mu0-nonhom" if nonhom else "jp2-mu0",
            lambda c, p, fam=fam, nonhom=nonhom: (jp.mu0_eq(c, p, nonhom), jp.mu0_solution(c, p, fam))))
    out.append(residual_check(
        "jp2-mu0/bilateral", "mu = 0 two-pole Jackson component at generic xi", "jp2-mu0", "jp2-mu0-nonhom",
        lambda c, p: (jp.mu0_eq(c, p, True), jp.mu0_bilateral(c, p, _xi_jp(c, p)))))
    for fam in jp.MU0_NONHOM:
        def third(c, p, fam=fam):
            return jp.third_order_eq(c, dataclasses.replace(p, mu=0.0)), jp.mu0_solution(c, p, fam)
        out.append(residual_check(f"jp2-mu0/third-order-{fam.value}", "third-order equation annihilates the solution",
                                  "jp2-mu0", "jp2-third-order", third, 1e-7))

    def compose(ctx, p):
        got = operator_compose(ctx, [ctx.q], jp.mu0_bracket(ctx, p))
        return (), [("coefficients", _poly_error(ctx, got, jp.third_order_eq(ctx, p)))]

    def elim(ctx, p):
        e = jp.mu0_elimination(ctx, p)
        qde = jp.mu0_eq(ctx, p)
        xs = _grid(ctx, qde, [1 / a for a in p.alphas])
        return (), [(_label(x), proportionality_defect(e.coefficients(x), _eq_values(ctx, qde, x))) for x in xs]

    out.append(value_check("jp2-mu0/factorization", "(T - q) times the bracket gives the third-order operator",
                           "jp2-mu0", "coefficient-error", compose, COEFF_TOL, "jp2-third-order"))
    out.append(value_check("jp2-mu0/elimination", "elimination of the reduced 2x2 system", "jp2-mu0",
                           "proportionality-defect", elim, COEFF_TOL, "jp2-mu0"))
    return out


# ------------------------------------------------------------------ degree two


def _deg2_checks() -> list[Check]:
    F = deg2.Deg2Family
    out = []
    for fam in deg2.DEG2_HOMOGENEOUS:
        out.append(residual_check(f"deg2/{fam.value}", f"degree-two homogeneous solution, {fam.value}", "deg2",
                                  "deg2-none", lambda c, p, fam=fam: (deg2.deg2_eq(c, p), deg2.deg2_solution(c, p, fam))))
    for fam in deg2.DEG2_THM_NONHOM:
        out.append(residual_check(f"deg2/{fam.value}", f"degree-two inhomogeneous solution, {fam.value}", "deg2",
                                  "deg2-thm", lambda c, p, fam=fam: (deg2.deg2_eq(c, p, "thm"), deg2.deg2_solution(c, p, fam))))
    out.append(residual_check("deg2/intro", "intro normalization of the inhomogeneous solution", "deg2", "deg2-intro",
                              lambda c, p: (deg2.deg2_eq(c, p, "intro"), deg2.deg2_solution(c, p, F.INTRO))))
    out.append(residual_check("deg2/bilateral", "bilateral Jackson form at generic xi", "deg2", "deg2-thm",
                              lambda c, p: (deg2.deg2_eq(c, p, "thm"), deg2.deg2_bilateral(c, p, _xi_deg2(c, p)))))
    for a, b in ((F.NONHOM_1, F.NONHOM_2), (F.NONHOM_1, F.NONHOM_0)):
        out.append(residual_check(
            f"deg2/difference-{a.value}-{b.value}", "difference of inhomogeneous solutions", "deg2", "deg2-none",
            lambda c, p, a=a, b=b: (deg2.deg2_eq(c, p), _difference(c, deg2.deg2_solution(c, p, a), deg2.deg2_solution(c, p, b)))))

    def param_map(ctx, p):
        a1, a2, b1, b2, lam = deg2.deg2_param_map(ctx, p)
        src = conjugate_by_power(ctx, jp.mu0_eq(ctx, JPParams(0.0, (a1, a2), (b1, b2), lam)), p.k2)
        want = deg2.deg2_eq(ctx, p)
        return (), _proportional(ctx, src, want, _grid(ctx, want, ()))

    def intro(ctx, p):
        c = deg2.intro_constants(ctx, p)
        return (), [("consistent/printed vs q^k2", abs(c["ratio"] - q_power(ctx, p.k2)) / abs(c["ratio"]))]

    out.append(value_check("deg2/parameter-map", "x^-k2 conjugate of the mu = 0 two-pole equation", "deg2",
                           "proportionality-defect", param_map, COEFF_TOL, "deg2-none"))
    out.append(value_check("deg2/intro-constant", "literal intro-style constant is off by q^-k2", "deg2",
                           "relative-difference", intro, EXACT_TOL, "deg2-intro"))
    return out


def _case2_checks() -> list[Check]:
    out = []
    for fam in deg2.Case2Family:
        hom = fam in deg2.CASE2_HOMOGENEOUS
        out.append(residual_check(
            f"jp2-resonant/{fam.value}", f"resonant two-pole closed form, {fam.value}", "jp2-resonant",
            "jp2-resonant-hom" if hom else "jp2-resonant-power",
            lambda c, p, fam=fam, hom=hom: (deg2.case2_eq(c, p, None if hom else "power"), deg2.case2_solution(c, p, fam))))

    def bil(c, p):
        xi = _xi_jp(c, p)
        return deg2.case2_eq(c, p, ("theta", xi)), deg2.case2_bilateral(c, p, xi)

    out.append(residual_check("jp2-resonant/bilateral", "bilateral form with theta-ratio inhomogeneity",
                              "jp2-resonant", "jp2-resonant-theta", bil))

    def z_form(c, p):
        sol = deg2.case2_solution(c, p, deg2.Case2Family.XI_INV_ALPHA1)
        f = SolutionFn(lambda z: power(c, z, p.mu) * sol(1 / complex(z)), sol.domain_note, "z-form", sol.gates,
                       tuple(1 / complex(v) for v in sol.lattices))
        return deg2.case2_z_eq(c, p), f

    out.append(residual_check("jp2-resonant/z-form", "equation in the inverted variable", "jp2-resonant",
                              "jp2-resonant-z", z_form))
    for fam in deg2.CASE2_HOMOGENEOUS:
        def mapped(c, p, fam=fam):
            base = deg2.variant_to_case2(c, p)
            return deg2.deg2_eq(c, p), deg2.case2_as_variant(c, p, deg2.case2_solution(c, base, fam))
        out.append(residual_check(f"jp2-resonant/as-variant-{fam.value}", "inverted resonant solution solves the variant",
                                  "deg2", "deg2-none", mapped))
    return out


# ------------------------------------------------------------------ degree three


def _deg3_checks() -> list[Check]:
    D = deg3.Deg3Family
    out = []
    for fam in deg3.DEG3_FIRST + deg3.DEG3_SECOND:
        style = "style1" if fam in deg3.DEG3_FIRST else "style2"
        out.append(residual_check(f"deg3/{fam.value}", f"degree-three inhomogeneous solution, {fam.value}", "deg3",
                                  f"deg3-{style}",
                                  lambda c, p, fam=fam, style=style: (deg3.deg3_eq(c, p, style), deg3.deg3_solution(c, p, fam))))

    def bil(c, p):
        xi = _xi_deg3(c, p)
        return deg3.deg3_eq(c, p, "theta", xi), deg3.deg3_bilateral(c, p, xi)

    out.append(residual_check("deg3/bilateral", "bilateral form with theta-ratio inhomogeneity", "deg3", "deg3-theta", bil))
    for a, b in ((D.FIRST_1, D.FIRST_2), (D.FIRST_1, D.FIRST_0), (D.SECOND_1, D.SECOND_3), (D.SECOND_1, D.SECOND_0)):
        out.append(residual_check(
            f"deg3/difference-{a.value}-{b.value}", "difference within one family", "deg3", "deg3-none",
            lambda c, p, a=a, b=b: (deg3.deg3_eq(c, p), _difference(c, deg3.deg3_solution(c, p, a), deg3.deg3_solution(c, p, b)))))

    def param_map(ctx, p):
        jpp = deg3.deg3_param_map(ctx, p)
        src = conjugate_by_power(ctx, deg3.alpha3_eq(ctx, jpp), p.alpha_exp)
        want = deg3.deg3_eq(ctx, p)
        return (), _proportional(ctx, src, want, _grid(ctx, want, ()))

    out.append(value_check("deg3/parameter-map", "x^-alpha conjugate of the three-pole mu = 0 equation", "deg3",
                           "proportionality-defect", param_map, COEFF_TOL, "deg3-none"))
    for fam in deg3.DEG3_FIRST + deg3.DEG3_SECOND:
        def facto(c, p, fam=fam):
            jpp = deg3.deg3_param_map(c, p)
            return deg3.alpha3_fourth_order(c, jpp), deg3.deg3_as_alpha(c, p, deg3.deg3_solution(c, p, fam))
        out.append(residual_check(f"deg3/fourth-order-{fam.value}", "factorized fourth-order operator annihilates it",
                                  "deg3", "jp3-mu0-fourth-order", facto, 1e-7))
    return out


def _alpha3_checks() -> list[Check]:
    out = []
    for fam in deg3.Alpha3Family:
        kind = "first" if fam in deg3.ALPHA3_FIRST else "second"
        out.append(residual_check(f"jp3-mu0/{fam.value}", f"three-pole mu = 0 closed form, {fam.value}", "jp3-mu0",
                                  f"jp3-mu0-{kind}",
                                  lambda c, p, fam=fam, kind=kind: (deg3.alpha3_eq(c, p, kind), deg3.alpha3_solution(c, p, fam))))
        out.append(residual_check(f"jp3-mu0/fourth-order-{fam.value}", "factorized fourth-order operator annihilates it",
                                  "jp3-mu0", "jp3-mu0-fourth-order",
                                  lambda c, p, fam=fam: (deg3.alpha3_fourth_order(c, p), deg3.alpha3_solution(c, p, fam)), 1e-7))

    def bil(c, p):
        xi = _xi_jp(c, p)
        return deg3.alpha3_eq(c, p, ("theta", xi)), deg3.alpha3_bilateral(c, p, xi)

    out.append(residual_check("jp3-mu0/bilateral", "bilateral form with theta-ratio inhomogeneity", "jp3-mu0",
                              "jp3-mu0-theta", bil))
    return out


# ------------------------------------------------------------------ suites

SUITES: dict[str, tuple[str, list[Check]]] = {
    "qhg-core": ("single-pole equations, closed forms, Heine form, pseudo-constants", _qhg_checks()),
    "qhg-jackson": ("Jackson solutions of the convolved single-pole system", _qhg_jackson_checks()),
    "convolution": ("convolved and middle-convolved matrix tuples, invariant subspaces", _convolution_checks()),
    "jp-system": ("Jackson solution of the three-pole convolved system", _jp_system_checks()),
    "jp2-mu0": ("two poles with mu = 0: reduction, closed forms, third-order factorization", _mu0_checks()),
    "deg2-variant": ("degree-two variant: homogeneous and inhomogeneous solutions", _deg2_checks()),
    "jp2-resonant": ("two poles with resonant lam, inverted variable", _case2_checks()),
    "deg3-nonhom": ("degree-three variant: both inhomogeneous families, theta form, factorization", _deg3_checks()),
    "jp3-mu0": ("three poles with mu = 0: closed forms, theta form, factorization", _alpha3_checks()),
}


def suite_ids() -> list[str]:
    return list(SUITES)


def registry_records() -> list[dict]:
    """One record per check, sorted by id."""
    recs = []
    for suite, (_, checks) in SUITES.items():
        for c in checks:
            d = c.to_dict()
            d["suite"] = suite
            recs.append(d)
    return sorted(recs, key=lambda r: r["id"])
