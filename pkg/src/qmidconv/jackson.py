"""Jackson integrals on (0, xi*inf): kernels, partial sums, boundary terms, adaptive sums."""

from __future__ import annotations

import dataclasses
import enum
import math
from typing import Callable, Sequence

import numpy as np

from .convolution import convolve
from .errors import AtPole, BudgetExceeded, KernelPole, SampleAtPole
from .qseries import QContext, c_power, poch_ratio, q_power
from .qsystems import SystemSpec, eval_B


class KernelChoice(enum.Enum):
    STANDARD = "standard"
    ALTERNATIVE = "alternative"


@dataclasses.dataclass(frozen=True)
class JacksonConfig:
    """Ray parameter ``xi``, exponent ``lam``, kernel and truncation.

    ``trunc`` is ``None`` for adaptive summation or a pair
    ``(trunc_lo, trunc_hi)`` of summation bounds.
    """

    xi: complex
    lam: complex
    kernel: KernelChoice = KernelChoice.STANDARD
    trunc: tuple | None = None

    def __post_init__(self):
        if complex(self.xi) == 0:
            raise ValueError("xi must be nonzero")
        if self.trunc is not None:
            lo, hi = self.trunc
            if int(lo) > int(hi):
                raise ValueError("truncation needs trunc_lo <= trunc_hi")
            object.__setattr__(self, "trunc", (int(lo), int(hi)))
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "kernel", KernelChoice(self.kernel))


@dataclasses.dataclass(frozen=True)
class ProductSolution:
    """y(s) = const * s^mu * prod (u_j s; q)_inf / prod (v_j s; q)_inf.

    Kept in factored form so kernel-weighted terms can be evaluated as a
    single paired product, which stays finite for huge |s|.
    """

    mu: complex
    num: tuple
    den: tuple
    const: complex = 1.0

    def factors(self, s) -> tuple[complex, list, list]:
        s = complex(s)
        return self.const, [u * s for u in self.num], [v * s for v in self.den]

    def value(self, ctx: QContext, s) -> complex:
        pre, num, den = self.factors(s)
        r = poch_ratio(ctx, num, den)
        if r == 0:
            return 0j
        return pre * c_power(ctx.branch, s, self.mu) * r

    def __call__(self, s):
        raise TypeError("use value(ctx, s) to evaluate a ProductSolution")


def jp_product(mu, alphas: Sequence, betas: Sequence) -> ProductSolution:
    """x^mu prod (alpha_j x)_inf / (beta_j x)_inf."""
    return ProductSolution(complex(mu), tuple(complex(a) for a in alphas), tuple(complex(b) for b in betas))


def _kernel_parts(ctx: QContext, cfg: JacksonConfig, x, s) -> tuple[complex, list, list]:
    x, s = complex(x), complex(s)
    if x == 0 or s == 0:
        raise KernelPole("kernel needs nonzero x and s")
    if cfg.kernel is KernelChoice.STANDARD:
        return 1.0 + 0j, [q_power(ctx, cfg.lam + 1) * s / x], [ctx.q * s / x]
    pre = c_power(ctx.branch, x / s, cfg.lam)
    return pre, [x / s], [q_power(ctx, -cfg.lam) * x / s]


def kernel_P(ctx: QContext, cfg: JacksonConfig, x, s) -> complex:
    pre, num, den = _kernel_parts(ctx, cfg, x, s)
    try:
        return pre * poch_ratio(ctx, num, den)
    except AtPole as exc:
        raise KernelPole(f"kernel pole at x = {x!r}, s = {s!r}") from exc


def _weighted(ctx: QContext, cfg: JacksonConfig, Y, x, s_kernel, s_y):
    """P(x, s_kernel) * Y(s_y), evaluated as one paired product when possible."""
    pre_k, num_k, den_k = _kernel_parts(ctx, cfg, x, s_kernel)
    if isinstance(Y, ProductSolution):
        pre_y, num_y, den_y = Y.factors(s_y)
        try:
            r = poch_ratio(ctx, num_k + num_y, den_k + den_y)
        except AtPole as exc:
            raise KernelPole(f"pole in kernel-weighted term at s = {s_y!r}") from exc
        if r == 0:
            return 0j
        return pre_k * pre_y * c_power(ctx.branch, s_y, Y.mu) * r
    y = np.asarray(Y(s_y), dtype=complex)
    if not np.any(y):
        return 0j if y.ndim == 0 else y
    try:
        k = pre_k * poch_ratio(ctx, num_k, den_k)
    except AtPole as exc:
        raise KernelPole(f"kernel pole at s = {s_kernel!r}") from exc
    return k * (complex(y) if y.ndim == 0 else y)


def _pole(spec: SystemSpec | None, i: int) -> complex:
    if i == 0:
        return 0j
    if spec is None:
        raise ValueError("a system is needed for pole indices > 0")
    return spec.b[i - 1]


def _cancel_zero(ctx: QContext, Y: ProductSolution, b: complex) -> ProductSolution | None:
    """Y(s)/(s - b) as a product when some factor (u s; q)_inf has u b = 1: (1 - u s)/(s - b) = -u."""
    for k, u in enumerate(Y.num):
        if abs(u * b - 1) <= 1e-12:
            num = Y.num[:k] + (ctx.q * u,) + Y.num[k + 1:]
            return ProductSolution(Y.mu, num, Y.den, -u * Y.const)
    return None


def jackson_term(ctx: QContext, cfg: JacksonConfig, spec, Y, i: int, x, n: int):
    """(1 - q) * s * P(x, s) Y(s) / (s - b_i) at s = q^n xi.

    When s sits on b_i and a numerator factor of a product solution vanishes
    there, the removable singularity is evaluated by cancelling that factor.
    """
    s = q_power(ctx, n) * cfg.xi
    if i > 0 and isinstance(Y, ProductSolution):
        b = _pole(spec, i)
        if abs(s - b) <= 1e-12 * abs(b):
            reduced = _cancel_zero(ctx, Y, b)
            if reduced is not None:
                return (1.0 - ctx.q) * s * _weighted(ctx, cfg, reduced, x, s, s)
    w = _weighted(ctx, cfg, Y, x, s, s)
    if not np.any(w):
        return w
    b = _pole(spec, i)
    if i == 0:
        return (1.0 - ctx.q) * w
    if abs(s - b) <= 1e-12 * abs(b):
        raise SampleAtPole(f"sample point q^{n} xi sits on pole b_{i}")
    return (1.0 - ctx.q) * s * w / (s - b)


def _trunc(cfg: JacksonConfig, K, L) -> tuple[int, int]:
    if K is None or L is None:
        if cfg.trunc is None:
            raise ValueError("fixed truncation bounds are required")
        return cfg.trunc
    if int(K) > int(L):
        raise ValueError("need trunc_lo <= trunc_hi")
    return int(K), int(L)


def _fsum(values: list):
    if not values:
        return 0j
    arr = np.asarray(values, dtype=complex)
    if arr.ndim == 1:
        return complex(math.fsum(arr.real), math.fsum(arr.imag))
    return np.array([complex(math.fsum(c.real), math.fsum(c.imag)) for c in arr.T])


def yhat_partial(ctx: QContext, cfg: JacksonConfig, spec, Y, i: int, x, K=None, L=None):
    """Truncated Jackson sum over n = K..L for the pole index ``i`` (0 means b_0 = 0)."""
    lo, hi = _trunc(cfg, K, L)
    return _fsum([jackson_term(ctx, cfg, spec, Y, i, x, n) for n in range(lo, hi + 1)])


def boundary_Q(ctx: QContext, cfg: JacksonConfig, Y, x, K=None, L=None):
    """P(x, q^(K-1) xi) Y(q^K xi) - P(x, q^L xi) Y(q^(L+1) xi)."""
    lo, hi = _trunc(cfg, K, L)
    xi = cfg.xi
    low = _weighted(ctx, cfg, Y, x, q_power(ctx, lo - 1) * xi, q_power(ctx, lo) * xi)
    high = _weighted(ctx, cfg, Y, x, q_power(ctx, hi) * xi, q_power(ctx, hi + 1) * xi)
    return low - high


def yhat_vector_partial(ctx: QContext, cfg: JacksonConfig, spec: SystemSpec, Y, x, K=None, L=None) -> np.ndarray:
    return np.array([yhat_partial(ctx, cfg, spec, Y, i, x, K, L) for i in range(spec.N + 1)], dtype=complex)


def partial_sum_rhs(ctx: QContext, cfg: JacksonConfig, spec: SystemSpec, Y, i: int, x, K=None, L=None) -> complex:
    """Right side of the finite shift identity for component ``i`` of the truncated sum.

    Equals row ``i`` of the convolved system applied to the truncated vector
    at ``x``, plus (1 - q) x/(x - b_i) times the boundary term.
    """
    x = complex(x)
    conv = convolve(ctx, spec, cfg.lam).as_system()
    vec = yhat_vector_partial(ctx, cfg, spec, Y, x, K, L)
    row = (eval_B(conv, x) @ vec)[i]
    b = _pole(spec, i)
    weight = 1.0 if i == 0 else x / (x - b)
    return row + (1.0 - ctx.q) * weight * boundary_Q(ctx, cfg, Y, x, K, L)


def partial_sum_defect(ctx: QContext, cfg: JacksonConfig, spec: SystemSpec, Y, i: int, x, K=None, L=None) -> float:
    """Relative defect of the finite shift identity at ``x``.

    The summands can be far larger than their total, so the difference is
    measured against the largest of them as well as against both sides.
    """
    lo, hi = _trunc(cfg, K, L)
    x = complex(x)
    terms = [jackson_term(ctx, cfg, spec, Y, i, ctx.q * x, n) for n in range(lo, hi + 1)]
    lhs = _fsum(terms)
    rhs = partial_sum_rhs(ctx, cfg, spec, Y, i, x, lo, hi)
    scale = max([abs(lhs), abs(rhs), 1e-300] + [abs(t) for t in terms])
    return abs(lhs - rhs) / scale


@dataclasses.dataclass(frozen=True)
class JacksonSum:
    value: complex
    tail_lo: float
    tail_hi: float
    trunc_lo: int
    trunc_hi: int
    boundary: float


def jackson_adaptive(ctx: QContext, cfg: JacksonConfig, spec, Y, i: int, x) -> JacksonSum:
    """Bilateral sum with independent stopping on each side.

    Each side stops after ``w_consec`` consecutive terms below ``eps_term``
    times the running total; more than ``n_max`` terms on one side, or a
    sample point that under- or overflows, raises :class:`BudgetExceeded`
    carrying the partial sum.
    """
    up: list = []
    down: list = []
    total = 0j
    last_hi = last_lo = 0.0

    def side(step: int, store: list) -> tuple[int, float]:
        nonlocal total
        small = 0
        n = 0 if step > 0 else -1
        mag = math.nan
        for count in range(ctx.n_max):
            s = abs(q_power(ctx, n) * cfg.xi)
            if s == 0 or math.isinf(s):
                # the ray left the floating-point range before the tail settled
                break
            t = jackson_term(ctx, cfg, spec, Y, i, x, n)
            store.append(t)
            total = total + t
            mag = float(np.max(np.abs(t)))
            if mag <= ctx.eps_term * float(np.max(np.abs(total))):
                small += 1
                if small >= ctx.w_consec:
                    return n, mag
            else:
                small = 0
            n += step
        else:
            count = ctx.n_max
        partial = _fsum(list(reversed(down)) + up)
        raise BudgetExceeded(
            "Jackson sum did not settle",
            partial=partial,
            diagnostics={"side": "upper" if step > 0 else "lower", "terms": count, "last_term": mag},
        )

    hi, last_hi = side(+1, up)
    lo, last_lo = side(-1, down)
    value = _fsum(list(reversed(down)) + up)
    q_mag = float(np.max(np.abs(boundary_Q(ctx, cfg, Y, x, lo, hi))))
    return JacksonSum(value, last_lo, last_hi, lo, hi, q_mag)


def yhat_vector(ctx: QContext, cfg: JacksonConfig, spec: SystemSpec, Y, x) -> np.ndarray:
    """All components of the convolved solution at ``x``, adaptively summed."""
    if cfg.trunc is not None:
        return yhat_vector_partial(ctx, cfg, spec, Y, x)
    return np.array([jackson_adaptive(ctx, cfg, spec, Y, i, x).value for i in range(spec.N + 1)], dtype=complex)


# ---------------------------------------------------------------- convergence


class ConvergenceStyle(enum.Enum):
    PRODUCT = "product"
    RESONANT_MU0 = "resonant-mu0"
    RESONANT_L = "resonant-L"
    VARIANT_DEG2 = "variant-deg2"


@dataclasses.dataclass(frozen=True)
class ConvergenceReport:
    style: ConvergenceStyle
    conditions: tuple

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.conditions)

    @property
    def margin(self) -> float:
        return min((m for _, _, m in self.conditions), default=math.inf)

    def to_dict(self) -> dict:
        return {
            "style": self.style.value,
            "passed": self.passed,
            "margin": self.margin,
            "conditions": [{"name": n, "passed": ok, "margin": m} for n, ok, m in self.conditions],
        }


def _ratio(alphas, betas) -> complex:
    r = 1.0 + 0j
    for a, b in zip(alphas, betas):
        r *= complex(a) / complex(b)
    return r


def check_convergence(ctx: QContext, style, params: dict) -> ConvergenceReport:
    """Evaluate the analytic convergence conditions of a Jackson representation.

    ``product``: mu > 0 and |q|^(lam - mu) |prod alpha / prod beta| < 1.
    ``resonant-mu0``: |q^lam prod alpha / prod beta| < 1.
    ``resonant-L``: mu > 0 and q^lam = q^mu prod beta / prod alpha.
    ``variant-deg2``: lam + k1 - k2 > 0.
    """
    style = ConvergenceStyle(style)
    conds = []
    if style is ConvergenceStyle.PRODUCT:
        mu = complex(params["mu"]).real
        lam = complex(params["lam"]).real
        value = ctx.abs_q ** (lam - mu) * abs(_ratio(params["alphas"], params["betas"]))
        conds.append(("mu > 0", mu > 0, mu))
        conds.append(("|q|^(lam-mu)|prod alpha/prod beta| < 1", value < 1, 1.0 - value))
    elif style is ConvergenceStyle.RESONANT_MU0:
        value = abs(q_power(ctx, params["lam"]) * _ratio(params["alphas"], params["betas"]))
        conds.append(("|q^lam prod alpha/prod beta| < 1", value < 1, 1.0 - value))
    elif style is ConvergenceStyle.RESONANT_L:
        mu = complex(params["mu"]).real
        target = q_power(ctx, params["mu"]) / _ratio(params["alphas"], params["betas"])
        gap = abs(q_power(ctx, params["lam"]) - target) / abs(target)
        conds.append(("mu > 0", mu > 0, mu))
        conds.append(("q^lam = q^mu prod beta/prod alpha", gap <= 1e-10, 1e-10 - gap))
    else:
        value = complex(params["lam"] + params["k1"] - params["k2"]).real
        conds.append(("lam + k1 - k2 > 0", value > 0, value))
    return ConvergenceReport(style, tuple(conds))
