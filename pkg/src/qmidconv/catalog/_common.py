"""Shared helpers for closed-form catalog solutions."""

from __future__ import annotations

from typing import Sequence

from ..qseries import QContext, c_power, phi, poch_ratio, q_power
from ..qsystems import Gate, Poly


def qp(ctx: QContext, w) -> complex:
    return q_power(ctx, w)


def power(ctx: QContext, x, w) -> complex:
    return c_power(ctx.branch, x, w)


def hyper_block(ctx: QContext, num: Sequence, den: Sequence, upper: Sequence, lower: Sequence, z) -> complex:
    """(num)_inf / (den)_inf * phi(upper; lower; z), with an exact zero short-circuit."""
    pre = poch_ratio(ctx, num, den)
    if pre == 0:
        return 0j
    return pre * phi(ctx, upper, lower, z)


def lin(root, lead=1.0) -> Poly:
    """lead * (x - root)."""
    return Poly([-complex(lead) * root, lead])


def gate_positive(name: str, value) -> Gate:
    v = complex(value).real
    return Gate(name, v > 0, v)


def gate_below_one(name: str, value) -> Gate:
    v = abs(complex(value))
    return Gate(name, v < 1, 1.0 - v)
