"""The q-convolution of a matrix tuple and its middle-convolution quotient."""

from __future__ import annotations

import dataclasses
from typing import Sequence

import numpy as np

from . import qlinalg
from .errors import BadQuotient, DimensionMismatch
from .qseries import QContext, q_power
from .qsystems import SystemSpec

QUOTIENT_TOL = 1e-8


@dataclasses.dataclass(frozen=True)
class ConvolutionResult:
    F_inf: np.ndarray
    F: tuple
    Fhat: np.ndarray
    lam: complex
    source: SystemSpec

    @property
    def size(self) -> int:
        return self.F_inf.shape[0]

    def as_system(self) -> SystemSpec:
        """The convolved system with the same poles as the source."""
        return SystemSpec(self.F_inf, self.F, self.source.b)

    def matrices(self) -> tuple:
        return (self.F_inf,) + tuple(self.F)


def convolve(ctx: QContext, spec: SystemSpec, lam) -> ConvolutionResult:
    """Block construction: F_i keeps (B_0, ..., B_i - (1 - q^lam), ..., B_N) in block row i."""
    m, N = spec.m, spec.N
    shift = 1.0 - q_power(ctx, lam)
    blocks = [spec.B0] + list(spec.B)
    row = np.hstack(blocks)
    size = (N + 1) * m
    Fhat = np.vstack([row] * (N + 1))
    F = []
    for i in range(1, N + 1):
        Fi = np.zeros((size, size), dtype=complex)
        Fi[i * m:(i + 1) * m, :] = row
        Fi[i * m:(i + 1) * m, i * m:(i + 1) * m] -= shift * np.eye(m)
        F.append(Fi)
    F_inf = np.eye(size, dtype=complex) - Fhat
    return ConvolutionResult(F_inf, tuple(F), Fhat, complex(lam), spec)


@dataclasses.dataclass(frozen=True)
class SubspaceReport:
    K_basis: tuple
    L_basis: tuple
    K_dim: int
    L_dim: int
    quotient_dim: int
    sum_basis: tuple

    def to_dict(self) -> dict:
        return {"K_dim": self.K_dim, "L_dim": self.L_dim, "quotient_dim": self.quotient_dim}


def subspaces(ctx: QContext, result: ConvolutionResult) -> SubspaceReport:
    """The invariant spaces: stacked kernels of B_0..B_N, and the (1 - q^lam)-eigenspace of Fhat."""
    spec = result.source
    m, size = spec.m, result.size
    blocks = [spec.B0] + list(spec.B)
    # Blocks are judged against the whole system, so a block that cancels to rounding level counts as zero.
    scale = max([1.0] + [float(np.abs(B).max()) for B in blocks + [spec.B_inf]])
    K = []
    for i, Bi in enumerate(blocks):
        for v in qlinalg.kernel_basis(Bi, ctx.rank_tol, scale):
            w = np.zeros(size, dtype=complex)
            w[i * m:(i + 1) * m] = v
            K.append(w)
    shifted = result.Fhat - (1.0 - q_power(ctx, result.lam)) * np.eye(size)
    L = qlinalg.kernel_basis(shifted, ctx.rank_tol, max(1.0, float(np.abs(result.Fhat).max())))
    both = qlinalg.column_space_basis(K + L, ctx.rank_tol)
    return SubspaceReport(tuple(K), tuple(L), len(K), len(L), size - len(both), tuple(both))


def invariance_defect(result: ConvolutionResult, basis: Sequence) -> float:
    """Largest span residual of F v over all matrices F of the tuple and basis vectors v."""
    worst = 0.0
    for M in result.matrices():
        for v in basis:
            image = M @ v
            if np.linalg.norm(image) <= 1e-14 * max(1.0, np.abs(M).max()):
                continue
            worst = max(worst, qlinalg.span_residual(basis, image))
    return worst


def default_quotient_basis(ctx: QContext, report: SubspaceReport, size: int) -> np.ndarray:
    """P whose leading columns complete K + L orthonormally and whose trailing columns span it."""
    sub = list(report.sum_basis)
    comp = qlinalg.complete_basis(sub, size, ctx.rank_tol)
    return np.column_stack(comp + sub)


def middle_convolve(ctx: QContext, result: ConvolutionResult, P=None, report: SubspaceReport | None = None):
    """Quotient of the convolved tuple by K + L.

    Returns ``(F_inf_bar, (F_1_bar, ..., F_N_bar))`` as the leading blocks of
    ``P^-1 F P``. When ``P`` is omitted it is built by completing an
    orthonormal basis of K + L.
    """
    size = result.size
    if report is None:
        report = subspaces(ctx, result)
    d = report.quotient_dim
    if d == size:
        return result.F_inf.copy(), tuple(F.copy() for F in result.F)
    if P is None:
        P = default_quotient_basis(ctx, report, size)
    P = qlinalg.as_matrix(P)
    if P.shape != (size, size):
        raise DimensionMismatch(f"P has shape {P.shape}, expected {(size, size)}")
    conj = qlinalg.conjugate_tuple(P, result.matrices(), ctx.rank_tol)
    for M in conj:
        scale = max(np.abs(M).max(), 1e-300)
        leak = np.abs(M[:d, d:]).max() / scale
        if leak > QUOTIENT_TOL:
            raise BadQuotient(f"conjugated matrix is not block triangular (leak {leak:.3g})")
    reduced = tuple(M[:d, :d].copy() for M in conj)
    return reduced[0], reduced[1:]
