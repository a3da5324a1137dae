"""Parameter records for the catalog families and seeded admissible draws."""

from __future__ import annotations

import cmath
import dataclasses
import math
from typing import Sequence

import numpy as np

from ..errors import DegenerateParameters, ResonanceViolated
from ..qseries import QContext, lattice_offset, q_power

# ------------------------------------------------------------------ records


@dataclasses.dataclass(frozen=True)
class QHGParams:
    """Single-pole data y(x) = x^mu (alpha x)_inf / (beta x)_inf convolved with exponent lam."""

    alpha: complex
    beta: complex
    mu: complex
    lam: complex

    def __post_init__(self):
        if complex(self.alpha) == 0 or complex(self.beta) == 0:
            raise DegenerateParameters("alpha and beta must be nonzero")

    def standard(self, ctx: QContext, branch: int = 0) -> tuple[complex, complex, complex]:
        """(a, b, c) of the standard three-term form; branch 0 or 1 selects the component."""
        a = q_power(ctx, -self.mu) * self.alpha
        b = complex(self.beta)
        c = q_power(ctx, -self.mu + (1 if branch == 0 else 0)) * self.beta
        return a, b, c

    def mu_alt(self, ctx: QContext) -> complex:
        """Exponent mu' with q^mu' = q^mu beta / alpha."""
        return self.mu + cmath.log(self.beta / self.alpha) / ctx.log_q

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "mu": self.mu, "lam": self.lam}


@dataclasses.dataclass(frozen=True)
class JPParams:
    """Multi-pole data x^mu prod (alpha_j x)_inf / (beta_j x)_inf and convolution exponent lam."""

    mu: complex
    alphas: tuple
    betas: tuple
    lam: complex

    def __post_init__(self):
        alphas = tuple(complex(a) for a in self.alphas)
        betas = tuple(complex(b) for b in self.betas)
        if len(alphas) != len(betas) or not alphas:
            raise DegenerateParameters("need equally many alphas and betas")
        every = alphas + betas
        if any(v == 0 for v in every):
            raise DegenerateParameters("alphas and betas must be nonzero")
        scale = max(abs(v) for v in every)
        for i in range(len(alphas)):
            for j in range(i):
                if abs(alphas[i] - alphas[j]) <= 1e-12 * scale:
                    raise DegenerateParameters("alphas must be pairwise distinct")
        for a in alphas:
            for b in betas:
                if abs(a - b) <= 1e-12 * scale:
                    raise DegenerateParameters("an alpha coincides with a beta")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)

    @property
    def N(self) -> int:
        return len(self.alphas)

    @property
    def ratio(self) -> complex:
        """prod alpha / prod beta."""
        r = 1.0 + 0j
        for a, b in zip(self.alphas, self.betas):
            r *= a / b
        return r

    def resonant_lam(self, ctx: QContext) -> complex:
        """lam with q^lam = q^mu prod beta / prod alpha."""
        return self.mu - cmath.log(self.ratio) / ctx.log_q

    def check_resonance(self, ctx: QContext, tol: float = 1e-10) -> None:
        target = q_power(ctx, self.mu) / self.ratio
        gap = abs(q_power(ctx, self.lam) - target) / abs(target)
        if gap > tol:
            raise ResonanceViolated(f"q^lam differs from q^mu prod beta/prod alpha by {gap:.3g}")

    def as_dict(self) -> dict:
        return {"mu": self.mu, "alphas": list(self.alphas), "betas": list(self.betas), "lam": self.lam}


@dataclasses.dataclass(frozen=True)
class Deg2Params:
    """Exponents and poles of the degree-two variant."""

    h1: complex
    h2: complex
    l1: complex
    l2: complex
    k1: complex
    k2: complex
    t1: complex
    t2: complex

    def __post_init__(self):
        t1, t2 = complex(self.t1), complex(self.t2)
        if t1 == 0 or t2 == 0 or abs(t1 - t2) <= 1e-12 * max(abs(t1), abs(t2)):
            raise DegenerateParameters("need 0 != t1 != t2 != 0")

    @property
    def lam(self) -> complex:
        return (self.h1 + self.h2 - self.l1 - self.l2 - self.k1 + self.k2 + 1) / 2

    @property
    def h(self) -> tuple:
        return (self.h1, self.h2)

    @property
    def l(self) -> tuple:
        return (self.l1, self.l2)

    @property
    def t(self) -> tuple:
        return (complex(self.t1), complex(self.t2))

    def p(self, ctx: QContext) -> complex:
        return q_power(ctx, (self.h1 + self.h2 + self.l1 + self.l2 + self.k1 + self.k2) / 2)

    def E(self, ctx: QContext) -> complex:
        qp = lambda w: q_power(ctx, w)
        return -self.p(ctx) * (
            (qp(-self.h2) + qp(-self.l2)) * self.t1 + (qp(-self.h1) + qp(-self.l1)) * self.t2
        )

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}


@dataclasses.dataclass(frozen=True)
class Deg3Params:
    """Exponents, poles and the overall exponent of the degree-three variant."""

    h: tuple
    l: tuple
    t: tuple
    alpha_exp: complex = 0.0

    def __post_init__(self):
        h = tuple(complex(v) for v in self.h)
        l = tuple(complex(v) for v in self.l)
        t = tuple(complex(v) for v in self.t)
        if not (len(h) == len(l) == len(t) == 3):
            raise DegenerateParameters("need three each of h, l, t")
        if any(v == 0 for v in t):
            raise DegenerateParameters("t values must be nonzero")
        scale = max(abs(v) for v in t)
        for i in range(3):
            for j in range(i):
                if abs(t[i] - t[j]) <= 1e-12 * scale:
                    raise DegenerateParameters("t values must be pairwise distinct")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "alpha_exp", complex(self.alpha_exp))

    @property
    def lam(self) -> complex:
        return (sum(self.h) - sum(self.l) + 1) / 2

    def as_dict(self) -> dict:
        return {"h": list(self.h), "l": list(self.l), "t": list(self.t), "alpha_exp": self.alpha_exp}


# ------------------------------------------------------------------ draws
#
# Default draws: real q, real exponents in [-1.5, 1.5], positive and well
# separated poles, and rejection until every gate holds with a margin.

EXP_RANGE = (-1.5, 1.5)
POLE_RANGE = (0.3, 3.0)
MAX_TRIES = 10000


def _separated(ctx: QContext, values: Sequence[float], gap: float | None = None) -> bool:
    """No two values sit on a common q-lattice (up to ``gap`` relative)."""
    if gap is None:
        # the lattice gets denser as |q| -> 1
        gap = min(0.08, 0.1 * (1 - ctx.abs_q))
    for i in range(len(values)):
        for j in range(i):
            _, g = lattice_offset(ctx, values[i], values[j])
            if g < gap:
                return False
    return True


def _poles(rng: np.random.Generator, n: int) -> list[float]:
    lo, hi = POLE_RANGE
    return [float(math.exp(rng.uniform(math.log(lo), math.log(hi)))) for _ in range(n)]


def _exp(rng: np.random.Generator, lo: float = EXP_RANGE[0], hi: float = EXP_RANGE[1]) -> float:
    return float(round(rng.uniform(lo, hi), 6))


def _near_integer(v: float, tol: float = 0.08) -> bool:
    return abs(v - round(v)) < tol


def _retry(make, rng: np.random.Generator):
    for _ in range(MAX_TRIES):
        out = make(rng)
        if out is not None:
            return out
    raise RuntimeError("no admissible parameter draw found")


def draw_qhg(ctx: QContext, rng: np.random.Generator) -> QHGParams:
    def make(r):
        alpha, beta = _poles(r, 2)
        mu = _exp(r, 0.2, 1.5)
        lam = _exp(r, -1.0, 1.5)
        if abs(lam) < 0.1 or _near_integer(lam) or _near_integer(mu):
            return None
        value = ctx.abs_q ** (lam - mu) * alpha / beta
        if value > 0.85 or not _separated(ctx, [alpha, beta]):
            return None
        return QHGParams(alpha, beta, mu, lam)

    return _retry(make, rng)


def draw_jp(ctx: QContext, rng: np.random.Generator, N: int, mu=None) -> JPParams:
    def make(r):
        alphas, betas = _poles(r, N), _poles(r, N)
        m = _exp(r, 0.2, 1.5) if mu is None else mu
        lam = _exp(r, -1.0, 1.5)
        if abs(lam) < 0.1 or _near_integer(lam):
            return None
        out = JPParams(m, alphas, betas, lam)
        if mu is None and ctx.abs_q ** (lam - m) * abs(out.ratio) > 0.85:
            return None
        if mu == 0 and abs(q_power(ctx, lam) * out.ratio) > 0.85:
            return None
        if not _separated(ctx, alphas + betas):
            return None
        return out

    return _retry(make, rng)


def draw_resonant_L(ctx: QContext, rng: np.random.Generator, N: int = 2) -> JPParams:
    """mu > 0 with lam fixed by q^lam = q^mu prod beta / prod alpha."""

    def make(r):
        alphas, betas = _poles(r, N), _poles(r, N)
        mu = _exp(r, 0.2, 1.5)
        base = JPParams(mu, alphas, betas, 0.0)
        lam = base.resonant_lam(ctx).real
        if abs(lam) < 0.1 or abs(lam) > 2.5 or _near_integer(lam) or not _separated(ctx, alphas + betas):
            return None
        return dataclasses.replace(base, lam=lam)

    return _retry(make, rng)


def draw_resonant_mu0(ctx: QContext, rng: np.random.Generator, N: int = 3) -> JPParams:
    """mu = 0 with q^lam = prod beta / prod alpha (both invariant spaces nonzero)."""

    def make(r):
        alphas, betas = _poles(r, N), _poles(r, N)
        base = JPParams(0.0, alphas, betas, 0.0)
        lam = base.resonant_lam(ctx).real
        if abs(lam) < 0.1 or abs(lam) > 2.5 or _near_integer(lam) or not _separated(ctx, alphas + betas):
            return None
        return dataclasses.replace(base, lam=lam)

    return _retry(make, rng)


def draw_deg2(ctx: QContext, rng: np.random.Generator) -> Deg2Params:
    def make(r):
        h1, h2, l1, l2, k1, k2 = (_exp(r) for _ in range(6))
        t1, t2 = _poles(r, 2)
        p = Deg2Params(h1, h2, l1, l2, k1, k2, t1, t2)
        lam = p.lam.real
        gate = lam + k1 - k2
        if gate < 0.2 or gate > 2.0 or abs(lam) < 0.1 or abs(lam) > 2.0 or _near_integer(lam):
            return None
        alphas, betas, _ = deg2_alpha_coords(ctx, p)
        if not _separated(ctx, list(alphas) + list(betas)):
            return None
        return p

    return _retry(make, rng)


def draw_deg3(ctx: QContext, rng: np.random.Generator) -> Deg3Params:
    def make(r):
        h = [_exp(r) for _ in range(3)]
        l = [_exp(r) for _ in range(3)]
        t = _poles(r, 3)
        p = Deg3Params(h, l, t, _exp(r))
        lam = p.lam.real
        if abs(lam) < 0.1 or abs(lam) > 2.0 or _near_integer(lam):
            return None
        alphas, betas, _ = deg3_alpha_coords(ctx, p)
        if not _separated(ctx, list(alphas) + list(betas)):
            return None
        return p

    return _retry(make, rng)


# ------------------------------------------------------------------ coordinate maps


def deg2_alpha_coords(ctx: QContext, p: Deg2Params) -> tuple[tuple, tuple, complex]:
    """Convolution coordinates ((alpha1, alpha2), (beta1, beta2), lam) of a degree-two variant."""
    qp = lambda w: q_power(ctx, w)
    d = -p.l1 - p.l2 - p.k1 + p.k2
    alphas = (qp(-p.l1 + 0.5) / p.t1, qp(-p.l2 + 1.5) / p.t2)
    betas = (qp((-p.h1 + p.h2 + d) / 2 + 1) / p.t1, qp((p.h1 - p.h2 + d) / 2 + 1) / p.t2)
    return alphas, betas, p.lam


def deg3_alpha_coords(ctx: QContext, p: Deg3Params) -> tuple[tuple, tuple, complex]:
    """Convolution coordinates of a degree-three variant (the mu = 0 resonant case)."""
    qp = lambda w: q_power(ctx, w)
    h, l, t = p.h, p.l, p.t
    sl = sum(l)
    alphas = (qp(-l[0] + 0.5) / t[0], qp(-l[1] + 1.5) / t[1], qp(-l[2] + 0.5) / t[2])
    betas = (
        qp((-h[0] + h[1] + h[2] - sl) / 2 + 1) / t[0],
        qp((h[0] - h[1] + h[2] - sl) / 2 + 1) / t[1],
        qp((h[0] + h[1] - h[2] - sl) / 2 + 1) / t[2],
    )
    return alphas, betas, p.lam
