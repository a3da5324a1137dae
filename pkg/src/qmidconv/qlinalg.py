"""Small dense complex matrices: checked arithmetic, rank and kernels.

Matrices are plain complex ``numpy`` arrays of shape ``(rows, cols)``.
Every helper returns a fresh array, so callers can treat them as values.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, SingularMatrix

DEFAULT_RANK_TOL = 1e-10


def as_matrix(entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Build a complex matrix from nested lists, an array, or a flat row-major list."""
    arr = np.array(entries, dtype=complex)
    if rows is not None and cols is not None:
        if arr.size != rows * cols:
            raise DimensionMismatch(f"{arr.size} entries cannot fill {rows}x{cols}")
        arr = arr.reshape(rows, cols)
    if arr.ndim != 2 or 0 in arr.shape:
        raise DimensionMismatch(f"expected a non-empty 2-d matrix, got shape {arr.shape}")
    return arr


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def zeros(rows: int, cols: int | None = None) -> np.ndarray:
    return np.zeros((rows, rows if cols is None else cols), dtype=complex)


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    return a + b


def sub(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot subtract {b.shape} from {a.shape}")
    return a - b


def mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def scalar_mul(c, a) -> np.ndarray:
    return complex(c) * as_matrix(a)


def singular_values(a) -> np.ndarray:
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def rank(a, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    s = singular_values(a)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))


def inverse(a, rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"cannot invert non-square {a.shape}")
    s = singular_values(a)
    if s[0] == 0 or s[-1] <= rank_tol * s[0]:
        raise SingularMatrix(f"matrix is numerically singular (sigma_min/sigma_max = {s[-1] / s[0] if s[0] else 0:.3g})")
    return np.linalg.inv(a)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # largest component (lowest index among near-ties) becomes real positive
    mags = np.abs(v)
    j = int(np.argmax(mags >= mags.max() * (1 - 1e-9)))
    return v * (abs(v[j]) / v[j])


def _greedy_orthonormal(proj: np.ndarray, count: int) -> list[np.ndarray]:
    """Pick ``count`` orthonormal vectors from the columns of an orthogonal projector.

    Columns are taken greedily by largest residual norm, lowest index first
    on ties, so the result depends only on the projected subspace.
    """
    out: list[np.ndarray] = []
    work = proj.copy()
    for _ in range(count):
        norms = np.linalg.norm(work, axis=0)
        j = int(np.argmax(norms >= norms.max() * (1 - 1e-9)))
        v = work[:, j] / norms[j]
        v = _fix_phase(v)
        out.append(v)
        work = work - np.outer(v, v.conj() @ work)
    return out


def kernel_basis(a, rank_tol: float = DEFAULT_RANK_TOL, scale: float = 0.0) -> list[np.ndarray]:
    """Orthonormal basis of the numerical null space of ``a``.

    Singular values at or below ``rank_tol`` times the largest one count as
    zero. A block of a larger system can pass that system's magnitude as
    ``scale`` so that a block which is zero up to rounding is recognized as
    such. The basis is canonical: it is read off the null-space projector.
    """
    a = as_matrix(a)
    n = a.shape[1]
    u, s, vh = np.linalg.svd(a)
    top = max(s[0] if s.size else 0.0, scale)
    r = int(np.sum(s > rank_tol * top)) if top > 0 else 0
    null = vh[r:].conj().T
    if null.shape[1] == 0:
        return []
    proj = null @ null.conj().T
    return _greedy_orthonormal(proj, n - r)


def column_space_basis(vectors: Sequence, rank_tol: float = DEFAULT_RANK_TOL) -> list[np.ndarray]:
    """Orthonormal basis for the span of ``vectors``."""
    vectors = [np.asarray(v, dtype=complex) for v in vectors]
    if not vectors:
        return []
    m = np.column_stack(vectors)
    u, s, _ = np.linalg.svd(m)
    if s.size == 0 or s[0] == 0:
        return []
    r = int(np.sum(s > rank_tol * s[0]))
    span = u[:, :r]
    return _greedy_orthonormal(span @ span.conj().T, r)


def complete_basis(vectors: Sequence, n: int, rank_tol: float = DEFAULT_RANK_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the orthogonal complement of span(``vectors``) in C^n."""
    span = column_space_basis(vectors, rank_tol) if len(vectors) else []
    proj = identity(n)
    for v in span:
        proj = proj - np.outer(v, v.conj())
    return _greedy_orthonormal(proj, n - len(span))


def span_residual(basis: Sequence, v) -> float:
    """Relative least-squares distance from ``v`` to span(``basis``)."""
    v = np.asarray(v, dtype=complex)
    nv = np.linalg.norm(v)
    if nv == 0:
        return 0.0
    if len(basis) == 0:
        return 1.0
    m = np.column_stack([np.asarray(b, dtype=complex) for b in basis])
    coef, *_ = np.linalg.lstsq(m, v, rcond=None)
    return float(np.linalg.norm(m @ coef - v) / nv)


def conjugate_tuple(p, mats: Iterable, rank_tol: float = DEFAULT_RANK_TOL) -> tuple[np.ndarray, ...]:
    """``P^-1 M P`` for every ``M``."""
    p = as_matrix(p)
    p_inv = inverse(p, rank_tol)
    out = []
    for m in mats:
        m = as_matrix(m)
        if m.shape != p.shape:
            raise DimensionMismatch(f"cannot conjugate {m.shape} by {p.shape}")
        out.append(p_inv @ m @ p)
    return tuple(out)
