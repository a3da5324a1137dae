"""q-special functions: powers of q, q-Pochhammer symbols, theta and rphis.

All powers of the base derive from one fixed logarithm stored on the
:class:`QContext`, so ``q_power(ctx, a) * q_power(ctx, b)`` agrees with
``q_power(ctx, a + b)`` up to rounding and no branch is ever re-chosen.
"""

from __future__ import annotations

import cmath
import dataclasses
import enum
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AtPole,
    BranchViolation,
    BudgetExceeded,
    LowerParamPole,
    ZeroArgument,
    ZeroBase,
)

# A factor 1 - a*q^j this close to zero (relative to |a q^j|) is treated as
# an exact lattice zero. Needed so that e.g. (q^n xi alpha; q)_inf with
# xi = 1/alpha vanishes exactly instead of leaving a 1e-16 residue.
LATTICE_SNAP = 1e-12


class BranchPolicy(enum.Enum):
    """How ``x**mu`` is evaluated for non-integer ``mu``."""

    PRINCIPAL_LOG = "principal-log"
    REAL_POSITIVE_ONLY = "real-positive-only"


@dataclasses.dataclass(frozen=True)
class QContext:
    """Base q plus every truncation and tolerance knob.

    The context is immutable; use :meth:`replace` to derive variants.
    """

    q: complex
    log_q: complex | None = None
    eps_tail: float = 1e-14
    eps_term: float = 1e-14
    n_max: int = 10000
    w_consec: int = 5
    rank_tol: float = 1e-10
    residual_tol: float = 1e-8
    branch: BranchPolicy = BranchPolicy.REAL_POSITIVE_ONLY

    def __post_init__(self):
        q = complex(self.q)
        if not 0.0 < abs(q) < 1.0:
            raise ValueError(f"need 0 < |q| < 1, got q = {q!r}")
        log_q = cmath.log(q) if self.log_q is None else complex(self.log_q)
        if abs(cmath.exp(log_q) - q) > 1e-13 * abs(q):
            raise ValueError("log_q is not a logarithm of q")
        for name in ("eps_tail", "eps_term", "rank_tol", "residual_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if int(self.n_max) < 100:
            raise ValueError("n_max must be at least 100")
        if int(self.w_consec) < 1:
            raise ValueError("w_consec must be at least 1")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "log_q", log_q)
        object.__setattr__(self, "n_max", int(self.n_max))
        object.__setattr__(self, "w_consec", int(self.w_consec))
        object.__setattr__(self, "branch", BranchPolicy(self.branch))
        table = np.exp(np.arange(self.n_max + 2) * log_q)
        table.setflags(write=False)
        object.__setattr__(self, "_powers", table)

    @property
    def abs_q(self) -> float:
        return abs(self.q)

    def replace(self, **changes) -> "QContext":
        return dataclasses.replace(self, **changes)

    def powers(self, count: int) -> np.ndarray:
        """Read-only array ``[q^0, ..., q^(count-1)]``."""
        if count > self.n_max + 1:
            raise BudgetExceeded(
                f"{count} powers requested, n_max is {self.n_max}",
                diagnostics={"requested": count, "n_max": self.n_max},
            )
        return self._powers[:count]

    def pow(self, w) -> complex:
        return q_power(self, w)


def q_power(ctx: QContext, w) -> complex:
    """``q**w`` as ``exp(w * log_q)``."""
    return cmath.exp(complex(w) * ctx.log_q)


def c_power(policy: BranchPolicy, x, mu) -> complex:
    """``x**mu`` under the given branch policy."""
    x = complex(x)
    if x == 0:
        raise ZeroBase("zero base in x**mu")
    if BranchPolicy(policy) is BranchPolicy.REAL_POSITIVE_ONLY:
        if x.imag != 0.0 or x.real <= 0.0:
            raise BranchViolation(f"base {x!r} is not positive real")
        return cmath.exp(complex(mu) * math.log(x.real))
    return cmath.exp(complex(mu) * cmath.log(x))


def _is_lattice_zero(factor: complex, aq: complex) -> bool:
    return abs(factor) <= LATTICE_SNAP * max(1.0, abs(aq))


def truncation_index(ctx: QContext, magnitude: float) -> int:
    """Number of factors of ``(a;q)_inf`` needed for |a| = ``magnitude``.

    The remaining factors satisfy |sum log(1 - a q^j)| <= 2|a||q|^J/(1-|q|),
    and J is the smallest index making that bound at most ``eps_tail``.
    """
    if magnitude == 0.0:
        return 0
    aq = ctx.abs_q
    target = ctx.eps_tail * (1.0 - aq) / 2.0
    if magnitude <= target:
        return 0
    J = math.ceil(math.log(target / magnitude) / math.log(aq))
    while magnitude * aq**J > target:
        J += 1
    if J > ctx.n_max:
        raise BudgetExceeded(
            f"infinite product needs {J} factors, n_max is {ctx.n_max}",
            diagnostics={"needed": J, "n_max": ctx.n_max, "abs_a": magnitude},
        )
    return J


def poch_finite(ctx: QContext, a, n: int) -> complex:
    """``(a; q)_n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = complex(a)
    out = 1.0 + 0.0j
    for qj in ctx.powers(n):
        aq = a * qj
        f = 1.0 - aq
        if _is_lattice_zero(f, aq):
            return 0j
        out *= f
    return out


def poch_inf(ctx: QContext, a) -> complex:
    """``(a; q)_inf`` by truncated product."""
    a = complex(a)
    if a == 0:
        return 1.0 + 0.0j
    J = truncation_index(ctx, abs(a))
    aq = a * ctx.powers(J)
    f = 1.0 - aq
    if np.any(np.abs(f) <= LATTICE_SNAP * np.maximum(1.0, np.abs(aq))):
        return 0j
    return complex(np.prod(f))


def poch_inf_multi(ctx: QContext, args: Iterable) -> complex:
    """``(a_1, ..., a_k; q)_inf``."""
    out = 1.0 + 0.0j
    for a in args:
        out *= poch_inf(ctx, a)
        if out == 0:
            return 0j
    return out


def poch_ratio(ctx: QContext, num: Sequence, den: Sequence) -> complex:
    """``(num; q)_inf / (den; q)_inf`` computed factor-pair by factor-pair.

    Pairing numerator and denominator factors index by index keeps the
    partial products close to the final magnitude, which matters when
    the arguments are huge (e.g. ``q^n xi`` with very negative ``n``).
    A vanishing numerator factor wins over a vanishing denominator factor
    (the term is treated as an exact zero); otherwise a vanishing
    denominator raises :class:`AtPole`.
    """
    num = [complex(a) for a in num]
    den = [complex(b) for b in den]
    k = max(len(num), len(den))
    if k == 0:
        return 1.0 + 0.0j
    num += [0j] * (k - len(num))
    den += [0j] * (k - len(den))
    top = max(max(abs(a) for a in num), max(abs(b) for b in den))
    J = truncation_index(ctx, top)
    if J == 0:
        return 1.0 + 0.0j
    p = ctx.powers(J)
    an = np.outer(num, p)
    ad = np.outer(den, p)
    fn = 1.0 - an
    fd = 1.0 - ad
    if np.any(np.abs(fn) <= LATTICE_SNAP * np.maximum(1.0, np.abs(an))):
        return 0j
    if np.any(np.abs(fd) <= LATTICE_SNAP * np.maximum(1.0, np.abs(ad))):
        raise AtPole("denominator q-Pochhammer symbol vanishes")
    return complex(np.prod(fn / fd))


def theta(ctx: QContext, t) -> complex:
    """Jacobi theta ``(t, q/t, q; q)_inf``."""
    t = complex(t)
    if t == 0:
        raise ZeroArgument("theta is undefined at t = 0")
    return poch_inf(ctx, t) * poch_inf(ctx, ctx.q / t) * poch_inf(ctx, ctx.q)


def lattice_offset(ctx: QContext, z, base=1.0) -> tuple[int, float]:
    """Nearest ``n`` with ``z ~ base * q^n`` and the relative gap there."""
    z = complex(z)
    base = complex(base)
    if z == 0 or base == 0:
        raise ZeroArgument("lattice test needs nonzero arguments")
    w = cmath.log(z / base) / ctx.log_q
    n0 = int(round(w.real))
    best = (n0, math.inf)
    for n in (n0 - 1, n0, n0 + 1):
        gap = abs(z - base * q_power(ctx, n)) / abs(z)
        if gap < best[1]:
            best = (n, gap)
    return best


def in_inverse_lattice(ctx: QContext, b, tol: float = LATTICE_SNAP) -> bool:
    """True when ``b`` lies in ``{q^-n : n >= 0}`` up to ``tol``."""
    b = complex(b)
    if b == 0:
        return False
    n, gap = lattice_offset(ctx, 1.0 / b)
    return n >= 0 and gap <= tol


def phi(ctx: QContext, upper: Sequence, lower: Sequence, z) -> complex:
    """Unilateral basic hypergeometric series ``r phi s (upper; lower; q, z)``.

    Terms come from the ratio recursion; summation stops once ``w_consec``
    consecutive terms fall below ``eps_term`` times the running sum.  An
    upper parameter on ``q^-m`` terminates the series exactly.
    """
    upper = [complex(a) for a in upper]
    lower = [complex(b) for b in lower]
    z = complex(z)
    for b in lower:
        if in_inverse_lattice(ctx, b):
            raise LowerParamPole(f"lower parameter {b!r} lies on q^-n")
    extra = 1 + len(lower) - len(upper)
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    small = 0
    p = ctx.powers(ctx.n_max + 1)
    for n in range(ctx.n_max):
        qn = p[n]
        num = z
        for a in upper:
            aq = a * qn
            f = 1.0 - aq
            if _is_lattice_zero(f, aq):
                return total
            num *= f
        den = 1.0 - p[n + 1]
        for b in lower:
            den *= 1.0 - b * qn
        if extra:
            num *= (-qn) ** extra
        term = term * num / den
        total += term
        if abs(term) <= ctx.eps_term * abs(total):
            small += 1
            if small >= ctx.w_consec:
                return total
        else:
            small = 0
    raise BudgetExceeded(
        "basic hypergeometric series did not settle",
        partial=total,
        diagnostics={"terms": ctx.n_max, "last_term": abs(term)},
    )
