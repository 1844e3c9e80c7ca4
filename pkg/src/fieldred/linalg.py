"""Dense linear algebra over a table-driven finite field."""

from __future__ import annotations

import numpy as np

from .gf import FiniteField

__all__ = ["matmul", "rref", "rank", "nullspace", "combine"]


def matmul(F: FiniteField, X, M) -> np.ndarray:
    """Row-vector product ``X @ M`` over ``F`` for 2-d ``X``."""
    X = np.asarray(X, dtype=np.int64)
    M = np.asarray(M, dtype=np.int64)
    if F.is_prime:
        return (X @ M) % F.order
    out = np.zeros((X.shape[0], M.shape[1]), dtype=np.int64)
    for i in range(X.shape[1]):
        out = F.add[out, F.mul[X[:, i, None], M[i][None, :]]]
    return out


def combine(F: FiniteField, coeffs, rows) -> np.ndarray:
    """All linear combinations: ``coeffs`` (m x k) applied to ``rows`` (k x n)."""
    return matmul(F, coeffs, rows)


def rref(F: FiniteField, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    A = np.array(A, dtype=np.int64, copy=True)
    if A.ndim == 1:
        A = A[None, :]
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.mul[F.inv[A[r, c]], A[r]]
        factors = A[:, c].copy()
        factors[r] = 0
        if factors.any():
            A = F.sub[A, F.mul[factors[:, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: FiniteField, A) -> int:
    return len(rref(F, A)[1])


def nullspace(F: FiniteField, A, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : A x^T = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        n = ncols if ncols is not None else A.shape[-1]
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(F, A)
    n = R.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, pc in enumerate(pivots):
            basis[j, pc] = F.neg[R[i, f]]
    return basis
