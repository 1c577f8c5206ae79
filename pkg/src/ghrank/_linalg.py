"""Row reduction over GF(q) on numpy arrays of element codes."""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


def rref(spec: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    A = np.array(M, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = spec.mul(spec.inv(A[r, c]), A[r])
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            A[hit] = spec.sub(A[hit], spec.mul(factors[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(spec: FieldSpec, M) -> int:
    return len(rref(spec, M)[1])


def nullspace(spec: FieldSpec, M, ncols: int | None = None) -> np.ndarray:
    """Basis (in reduced form) of ``{x : M x^T = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    if ncols is None:
        ncols = M.shape[1]
    if M.size == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(spec, M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        out[i, pivots] = spec.neg(R[:, f])
    if not free:
        return out
    return rref(spec, out)[0]


def in_span(spec: FieldSpec, basis, v) -> bool:
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, len(v))
    return rank(spec, np.vstack([basis, np.asarray(v)[None, :]])) == rank(spec, basis)


def span_elements(spec: FieldSpec, basis) -> np.ndarray:
    """All q^k vectors of the span of the ``k`` rows of ``basis``."""
    basis = np.asarray(basis, dtype=np.int64)
    n = basis.shape[1]
    out = np.zeros((1, n), dtype=np.int64)
    for b in basis:
        scaled = spec.mul(np.arange(spec.q)[:, None], b[None, :])
        out = spec.add(out[:, None, :], scaled[None, :, :]).reshape(-1, n)
    return out
