"""Generalized Hadamard matrices: validity, normalization and equivalence moves."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence, Union

import numpy as np

from .gf import FieldSpec


class Validity(enum.Enum):
    UNCHECKED = "unchecked"
    VALID = "valid"
    INVALID = "invalid"


class MalformedMatrixError(ValueError):
    """The array cannot be a GH matrix at all (shape, entries, field)."""


class InvalidGhError(ValueError):
    """An operation that needs a GH matrix received one failing the difference test."""


class GhMatrix:
    """An ``n x n`` array over GF(q) claimed to be a GH matrix H(q, n/q).

    Rows are stored as a read-only ``int64`` array of element codes.
    """

    def __init__(self, spec: FieldSpec, rows, validated: Validity = Validity.UNCHECKED):
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise MalformedMatrixError(f"GH matrix must be square, got shape {arr.shape}")
        n = arr.shape[0]
        if n == 0 or n % spec.q:
            raise MalformedMatrixError(f"order {n} is not a positive multiple of q={spec.q}")
        if arr.min() < 0 or arr.max() >= spec.q:
            raise MalformedMatrixError(f"entries must be element codes in [0, {spec.q - 1}]")
        arr.setflags(write=False)
        self.spec = spec
        self.rows = arr
        self.n = n
        self.lam = n // spec.q
        self.validated = validated

    def __repr__(self) -> str:
        return f"GhMatrix(q={self.spec.q}, n={self.n}, lambda={self.lam}, {self.validated.value})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GhMatrix):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.rows, other.rows)

    def __hash__(self) -> int:
        return hash((self.spec, self.rows.tobytes()))

    @property
    def is_normalized(self) -> bool:
        return not self.rows[0].any() and not self.rows[:, 0].any()

    def row_set(self) -> set[tuple[int, ...]]:
        return {tuple(r) for r in self.rows.tolist()}

    def with_rows(self, rows, validated: Validity = Validity.UNCHECKED) -> "GhMatrix":
        return GhMatrix(self.spec, rows, validated)


@dataclass
class ValidityReport:
    valid: bool
    pair: tuple[int, int] | None = None  # 0-based rows of the first violation
    histogram: dict[int, int] = dc_field(default_factory=dict)

    def describe(self) -> str:
        if self.valid:
            return "valid"
        i, j = self.pair
        counts = ", ".join(f"{k}:{v}" for k, v in sorted(self.histogram.items()))
        return f"invalid: rows {i + 1} and {j + 1} have difference counts {{{counts}}}"


def is_gh(M: GhMatrix) -> ValidityReport:
    """Test the difference condition on every row pair, in row-major pair order."""
    spec, rows, lam = M.spec, M.rows, M.lam
    q = spec.q
    for i in range(M.n - 1):
        diffs = spec.sub(rows[i][None, :], rows[i + 1 :])
        offsets = diffs + q * np.arange(diffs.shape[0])[:, None]
        counts = np.bincount(offsets.ravel(), minlength=q * diffs.shape[0]).reshape(-1, q)
        bad = np.flatnonzero((counts != lam).any(axis=1))
        if bad.size:
            j = int(bad[0])
            hist = {int(a): int(c) for a, c in enumerate(counts[j]) if c}
            return ValidityReport(False, (i, i + 1 + j), hist)
    return ValidityReport(True)


def checked(M: GhMatrix) -> GhMatrix:
    """Return ``M`` marked valid, running the test if needed; raise if invalid."""
    if M.validated is Validity.VALID:
        return M
    if M.validated is Validity.UNCHECKED:
        report = is_gh(M)
        if report.valid:
            return M.with_rows(M.rows, Validity.VALID)
        raise InvalidGhError(report.describe())
    raise InvalidGhError("matrix is not a GH matrix")


def normalize(M: GhMatrix) -> GhMatrix:
    """Zero the first row, then the first column, with column and row translations."""
    M = checked(M)
    spec = M.spec
    rows = spec.sub(M.rows, M.rows[0][None, :])
    rows = spec.sub(rows, rows[:, :1])
    return M.with_rows(rows, Validity.VALID)


def transpose(M: GhMatrix) -> GhMatrix:
    M = checked(M)
    return M.with_rows(M.rows.T, Validity.VALID)


@dataclass(frozen=True)
class RowPerm:
    """New row ``k`` is old row ``perm[k]``."""

    perm: tuple[int, ...]


@dataclass(frozen=True)
class ColPerm:
    """New column ``k`` is old column ``perm[k]``."""

    perm: tuple[int, ...]


@dataclass(frozen=True)
class AddToRow:
    index: int
    alpha: int


@dataclass(frozen=True)
class AddToCol:
    index: int
    alpha: int


Move = Union[RowPerm, ColPerm, AddToRow, AddToCol]


def _check_perm(perm: Sequence[int], n: int) -> np.ndarray:
    arr = np.asarray(perm, dtype=np.int64)
    if arr.shape != (n,) or sorted(arr.tolist()) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {list(perm)}")
    return arr


def apply_moves(M: GhMatrix, moves: Sequence[Move]) -> GhMatrix:
    """Apply equivalence moves in order; the result stays a GH matrix."""
    M = checked(M)
    spec, rows = M.spec, M.rows.copy()
    for mv in moves:
        if isinstance(mv, RowPerm):
            rows = rows[_check_perm(mv.perm, M.n)]
        elif isinstance(mv, ColPerm):
            rows = rows[:, _check_perm(mv.perm, M.n)]
        elif isinstance(mv, AddToRow):
            rows[mv.index] = spec.add(rows[mv.index], mv.alpha)
        elif isinstance(mv, AddToCol):
            rows[:, mv.index] = spec.add(rows[:, mv.index], mv.alpha)
        else:
            raise TypeError(f"unknown move {mv!r}")
    return M.with_rows(rows, Validity.VALID)


def translate(M: GhMatrix, v) -> GhMatrix:
    """Add the vector ``v`` to every row (a sequence of column translations)."""
    M = checked(M)
    return M.with_rows(M.spec.add(M.rows, np.asarray(v)[None, :]), Validity.VALID)


def translation_equivalent(A: GhMatrix, B: GhMatrix) -> np.ndarray | None:
    """Return ``v`` with rows(A) + v == rows(B) as sets, or ``None``."""
    if A.spec != B.spec or A.n != B.n:
        raise MalformedMatrixError("matrices differ in field or order")
    spec = A.spec
    target = B.row_set()
    a0 = A.rows[0]
    for b in B.rows:
        v = spec.sub(b, a0)
        if {tuple(r) for r in spec.add(A.rows, v[None, :]).tolist()} == target:
            return v
    return None
