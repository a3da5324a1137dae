"""Linear q-difference systems, scalar q-difference operators and residuals."""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Mapping, Sequence

import numpy as np

from . import qlinalg
from .errors import A12Vanishes, AtPole, DimensionMismatch, EvaluationFailure
from .qseries import QContext, c_power, lattice_offset, q_power, theta

RESIDUAL_FLOOR = 1e-300


# ---------------------------------------------------------------- systems


@dataclasses.dataclass(frozen=True)
class SystemSpec:
    """The system Y(qx) = B(x) Y(x) with B(x) = B_inf + sum B_i / (1 - x/b_i)."""

    B_inf: np.ndarray
    B: tuple
    b: tuple

    def __post_init__(self):
        b_inf = qlinalg.as_matrix(self.B_inf)
        m = b_inf.shape[0]
        if b_inf.shape != (m, m):
            raise DimensionMismatch("B_inf must be square")
        mats = tuple(qlinalg.as_matrix(x) for x in self.B)
        for x in mats:
            if x.shape != (m, m):
                raise DimensionMismatch(f"residue matrix of shape {x.shape}, expected {(m, m)}")
        poles = tuple(complex(p) for p in self.b)
        if len(poles) != len(mats):
            raise DimensionMismatch(f"{len(mats)} residue matrices but {len(poles)} poles")
        if any(p == 0 for p in poles):
            raise ValueError("poles must be nonzero")
        scale = max((abs(p) for p in poles), default=1.0)
        for i in range(len(poles)):
            for j in range(i):
                if abs(poles[i] - poles[j]) <= 1e-10 * scale:
                    raise ValueError(f"poles {i} and {j} coincide")
        object.__setattr__(self, "B_inf", b_inf)
        object.__setattr__(self, "B", mats)
        object.__setattr__(self, "b", poles)

    @property
    def m(self) -> int:
        return self.B_inf.shape[0]

    @property
    def N(self) -> int:
        return len(self.B)

    @property
    def B0(self) -> np.ndarray:
        return qlinalg.identity(self.m) - self.B_inf - sum(self.B, qlinalg.zeros(self.m))


def eval_B(spec: SystemSpec, x) -> np.ndarray:
    x = complex(x)
    out = spec.B_inf.copy()
    for bi, pole in zip(spec.B, spec.b):
        if abs(x - pole) <= 1e-10 * abs(pole):
            raise AtPole(f"x = {x!r} sits on the pole {pole!r}")
        out = out + bi / (1.0 - x / pole)
    return out


def _relative(diff: float, *scales: float) -> float:
    return diff / max(max(scales, default=0.0), RESIDUAL_FLOOR)


def system_residual(ctx: QContext, spec: SystemSpec, Y: Callable, x) -> float:
    """max-norm relative residual of Y(qx) = B(x) Y(x)."""
    x = complex(x)
    try:
        lhs = np.atleast_1d(np.asarray(Y(ctx.q * x), dtype=complex))
        y = np.atleast_1d(np.asarray(Y(x), dtype=complex))
    except (ArithmeticError, ValueError) as exc:
        raise EvaluationFailure(f"solution failed at x = {x!r}: {exc}") from exc
    rhs = eval_B(spec, x) @ y
    diff = float(np.max(np.abs(lhs - rhs)))
    if diff == 0.0:
        return 0.0
    return _relative(diff, float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))


# ---------------------------------------------------------------- scalar operators


@dataclasses.dataclass(frozen=True)
class Poly:
    """Polynomial in x, coefficients in ascending degree."""

    coeffs: tuple

    def __init__(self, coeffs):
        c = [complex(v) for v in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (0j,))

    @classmethod
    def from_roots(cls, lead, roots) -> "Poly":
        out = cls([lead])
        for r in roots:
            out = out * cls([-r, 1.0])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, x) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0j,) * (n - len(self.coeffs))
        b = other.coeffs + (0j,) * (n - len(other.coeffs))
        return Poly([u + v for u, v in zip(a, b)])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1.0)

    def __mul__(self, other: "Poly") -> "Poly":
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            for j, v in enumerate(other.coeffs):
                out[i + j] += u * v
        return Poly(out)

    def scale(self, c) -> "Poly":
        return Poly([complex(c) * v for v in self.coeffs])

    def dilate(self, factor) -> "Poly":
        """The polynomial x -> p(factor * x)."""
        factor = complex(factor)
        return Poly([v * factor**j for j, v in enumerate(self.coeffs)])

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.array([], dtype=complex)
        return np.roots(list(reversed(self.coeffs)))

    def max_abs_diff(self, other: "Poly") -> float:
        d = self - other
        return max(abs(c) for c in d.coeffs)


@dataclasses.dataclass(frozen=True)
class PowerTerm:
    """c * x**gamma."""

    c: complex
    gamma: complex

    def __call__(self, ctx: QContext, x) -> complex:
        if self.c == 0:
            return 0j
        return complex(self.c) * c_power(ctx.branch, x, self.gamma)


@dataclasses.dataclass(frozen=True)
class ThetaTerm:
    """c * x**gamma * (prod theta(num) / prod theta(den) - shift).

    Theta arguments are monomials ``coef * x**power`` given as pairs.
    """

    c: complex
    gamma: complex
    num: tuple
    den: tuple
    shift: complex = 1.0

    def ratio(self, ctx: QContext, x) -> complex:
        x = complex(x)
        top = 1.0 + 0j
        for coef, power in self.num:
            top *= theta(ctx, coef * x**power)
        bottom = 1.0 + 0j
        for coef, power in self.den:
            bottom *= theta(ctx, coef * x**power)
        if bottom == 0:
            raise AtPole("theta denominator vanishes")
        return top / bottom

    def __call__(self, ctx: QContext, x) -> complex:
        return complex(self.c) * c_power(ctx.branch, x, self.gamma) * (self.ratio(ctx, x) - self.shift)


@dataclasses.dataclass(frozen=True)
class ScalarQDE:
    """sum_k c_k(x) f(q^k x) + nonhom(x) = 0."""

    shifts: tuple
    coeffs: tuple
    nonhom: PowerTerm | ThetaTerm | None = None
    name: str = ""

    def __post_init__(self):
        shifts = tuple(int(k) for k in self.shifts)
        coeffs = tuple(c if isinstance(c, Poly) else Poly(c) for c in self.coeffs)
        if len(shifts) != len(coeffs) or not shifts:
            raise ValueError("shifts and coefficients must pair up")
        if any(b <= a for a, b in zip(shifts, shifts[1:])):
            raise ValueError("shifts must be strictly increasing")
        if coeffs[0].is_zero() or coeffs[-1].is_zero():
            raise ValueError("leading and trailing coefficients must be nonzero")
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_mapping(cls, terms: Mapping[int, Poly], nonhom=None, name: str = "") -> "ScalarQDE":
        keys = sorted(k for k, v in terms.items() if not v.is_zero())
        return cls(tuple(keys), tuple(terms[k] for k in keys), nonhom, name)

    @property
    def order(self) -> int:
        return self.shifts[-1] - self.shifts[0]

    def coefficient(self, shift: int) -> Poly:
        for k, c in zip(self.shifts, self.coeffs):
            if k == shift:
                return c
        return Poly([0])

    def with_nonhom(self, nonhom) -> "ScalarQDE":
        return dataclasses.replace(self, nonhom=nonhom)

    def scaled(self, factor) -> "ScalarQDE":
        nh = self.nonhom
        if nh is not None:
            nh = dataclasses.replace(nh, c=complex(factor) * nh.c)
        return dataclasses.replace(self, coeffs=tuple(c.scale(factor) for c in self.coeffs), nonhom=nh)

    def terms(self, ctx: QContext, f: Callable, x) -> tuple[list[complex], complex]:
        x = complex(x)
        vals = []
        try:
            for k, c in zip(self.shifts, self.coeffs):
                vals.append(c(x) * complex(f(q_power(ctx, k) * x)))
            nh = self.nonhom(ctx, x) if self.nonhom is not None else 0j
        except (ArithmeticError, ValueError) as exc:
            raise EvaluationFailure(f"evaluation failed at x = {x!r}: {exc}") from exc
        return vals, nh

    def apply(self, ctx: QContext, f: Callable, x) -> complex:
        vals, nh = self.terms(ctx, f, x)
        return sum(vals) + nh


def scalar_residual(ctx: QContext, qde: ScalarQDE, f: Callable, x) -> float:
    """|sum of terms| over the largest single term (non-homogeneous part included)."""
    vals, nh = qde.terms(ctx, f, x)
    total = abs(sum(vals) + nh)
    if total == 0.0:
        return 0.0
    scales = [abs(v) for v in vals]
    if qde.nonhom is not None:
        scales.append(abs(nh))
    return _relative(total, *scales)


# ---------------------------------------------------------------- solutions


@dataclasses.dataclass(frozen=True)
class Gate:
    """One validity condition of a solution, with its signed margin."""

    name: str
    satisfied: bool
    margin: float = math.nan


@dataclasses.dataclass(frozen=True)
class SolutionFn:
    """A closed-form or summed solution together with its validity data."""

    eval: Callable
    domain_note: str = ""
    provenance: str = ""
    gates: tuple = ()
    lattices: tuple = ()

    def __call__(self, x):
        return self.eval(x)

    @property
    def gates_ok(self) -> bool:
        return all(g.satisfied for g in self.gates)


# ---------------------------------------------------------------- elimination


@dataclasses.dataclass(frozen=True)
class Elimination2x2:
    """Second-order relation for g1 obtained from a 2x2 first-order system.

    The system is g1(qx) = a11 g1 + a12 g2 + b1, g2(qx) = a21 g1 + a22 g2 + b2.
    The relation reads c_-1(x) g1(x/q) + g1(qx) + c_0(x) g1(x) + r(x) = 0.
    """

    ctx: QContext
    a11: Callable
    a12: Callable
    a21: Callable
    a22: Callable
    b1: Callable | None = None
    b2: Callable | None = None

    def coefficients(self, x) -> dict[int, complex]:
        x = complex(x)
        xq = x / self.ctx.q
        a12_prev = self.a12(xq)
        if abs(a12_prev) == 0:
            raise A12Vanishes(f"a12 vanishes at x/q = {xq!r}")
        ratio = self.a12(x) / a12_prev
        det_prev = self.a11(xq) * self.a22(xq) - a12_prev * self.a21(xq)
        return {
            -1: det_prev * ratio,
            0: -(self.a11(x) + ratio * self.a22(xq)),
            1: 1.0 + 0j,
        }

    def inhomogeneity(self, x) -> complex:
        x = complex(x)
        xq = x / self.ctx.q
        b1 = self.b1 or (lambda _: 0j)
        b2 = self.b2 or (lambda _: 0j)
        a12_prev = self.a12(xq)
        if abs(a12_prev) == 0:
            raise A12Vanishes(f"a12 vanishes at x/q = {xq!r}")
        ratio = self.a12(x) / a12_prev
        return -b1(x) + ratio * self.a22(xq) * b1(xq) - self.a12(x) * b2(xq)

    def residual(self, g1: Callable, x) -> float:
        x = complex(x)
        co = self.coefficients(x)
        vals = [c * complex(g1(q_power(self.ctx, k) * x)) for k, c in co.items()]
        nh = self.inhomogeneity(x)
        total = abs(sum(vals) + nh)
        if total == 0.0:
            return 0.0
        return _relative(total, *[abs(v) for v in vals], abs(nh))


def eliminate_2x2(ctx: QContext, a11, a12, a21, a22, b1=None, b2=None) -> Elimination2x2:
    return Elimination2x2(ctx, a11, a12, a21, a22, b1, b2)


def proportionality_defect(ctx_coeffs: Mapping[int, complex], printed: Mapping[int, complex]) -> float:
    """How far two coefficient sets at one point are from being proportional.

    Returns max_k |c_k - r p_k| / max_k |c_k| with r fitted by least squares.
    """
    keys = sorted(set(ctx_coeffs) | set(printed))
    c = np.array([complex(ctx_coeffs.get(k, 0)) for k in keys])
    p = np.array([complex(printed.get(k, 0)) for k in keys])
    denom = np.vdot(p, p)
    if denom == 0:
        return float("inf")
    r = np.vdot(p, c) / denom
    return float(np.max(np.abs(c - r * p)) / max(np.max(np.abs(c)), RESIDUAL_FLOOR))


def conjugate_by_power(ctx: QContext, qde: ScalarQDE, gamma) -> ScalarQDE:
    """Equation satisfied by g(x) = x^-gamma f(x) when f solves ``qde``.

    Coefficients become c_k(x) q^(k gamma); a power-law term c x^g becomes c x^(g - gamma).
    """
    coeffs = tuple(c.scale(q_power(ctx, k * gamma)) for k, c in zip(qde.shifts, qde.coeffs))
    nh = qde.nonhom
    if isinstance(nh, PowerTerm):
        nh = PowerTerm(nh.c, nh.gamma - gamma)
    elif nh is not None:
        nh = dataclasses.replace(nh, gamma=nh.gamma - gamma)
    return ScalarQDE(qde.shifts, coeffs, nh, qde.name)


# ---------------------------------------------------------------- composition


def operator_compose(ctx: QContext, factors: Sequence, inner: ScalarQDE) -> ScalarQDE:
    """Apply first-order factors (T - c) on the left of ``inner``.

    ``factors`` lists the constants c as written from left to right, so
    ``[c2, c1]`` means (T - c2)(T - c1) inner. Each step uses
    (T - c) c_k(x) T^k = c_k(qx) T^(k+1) - c c_k(x) T^k. A power-law
    inhomogeneity a x^g is carried along as a (q^g - c) x^g.
    """
    if inner.nonhom is not None and not isinstance(inner.nonhom, PowerTerm):
        raise ValueError("only power-law inhomogeneities can be composed")
    terms = {k: c for k, c in zip(inner.shifts, inner.coeffs)}
    nonhom = inner.nonhom
    for c in reversed(list(factors)):
        c = complex(c)
        new: dict[int, Poly] = {}
        for k, poly in terms.items():
            new[k + 1] = new.get(k + 1, Poly([0])) + poly.dilate(ctx.q)
            new[k] = new.get(k, Poly([0])) + poly.scale(-c)
        terms = new
        if nonhom is not None:
            nonhom = PowerTerm(nonhom.c * (q_power(ctx, nonhom.gamma) - c), nonhom.gamma)
    if nonhom is not None and nonhom.c == 0:
        nonhom = None
    return ScalarQDE.from_mapping(terms, nonhom, name=inner.name and f"composed({inner.name})")


# ---------------------------------------------------------------- sampling


def sample_grid(
    ctx: QContext,
    n: int = 20,
    lo: float = 0.05,
    hi: float = 5.0,
    qde: ScalarQDE | None = None,
    lattices: Sequence = (),
    sep: float = 1e-6,
) -> list[float]:
    """Log-spaced points on the positive ray avoiding singular loci.

    A point within ``sep`` (relative) of a coefficient zero or of a lattice
    ``c q^Z`` is nudged upward by 0.1% until it is clear.
    """
    zeros: list[complex] = []
    if qde is not None:
        for k, c in zip(qde.shifts, qde.coeffs):
            zeros.extend(complex(r) for r in c.roots())

    def bad(x: float) -> bool:
        for r in zeros:
            if abs(x - r) <= sep * max(1.0, x):
                return True
        for c in lattices:
            if c == 0:
                continue
            _, gap = lattice_offset(ctx, x, c)
            if gap <= sep:
                return True
        return False

    out = []
    for x in np.geomspace(lo, hi, n):
        x = float(x)
        for _ in range(100):
            if not bad(x):
                break
            x *= 1.001
        out.append(x)
    return out
