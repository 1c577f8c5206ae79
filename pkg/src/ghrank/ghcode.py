"""The codes F_H and C_H of a GH matrix and their rank and kernel invariants.

Kernels are found by translation tests against the code itself.  The
p-kernel ``{x : x + C = C}`` is grown one generator at a time; once a word
``c`` is rejected, the whole coset ``c + G`` of the current p-kernel ``G`` is
rejected with it, so the number of full translation tests is about
``|C| / |K_p(C)|``.  The kernel proper is then the set of ``x`` in the
p-kernel with ``alpha * x`` in the p-kernel for every scalar ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _linalg
from .gf import FieldSpec
from .ghmatrix import GhMatrix, Validity, is_gh


def _word_keys(spec: FieldSpec, words: np.ndarray) -> np.ndarray:
    dtype = np.uint8 if spec.q <= 256 else np.uint16
    arr = np.ascontiguousarray(words, dtype=dtype)
    return arr.view(np.dtype((np.void, arr.shape[1] * arr.itemsize))).ravel()


class Code:
    """A deduplicated set of length-``n`` words over GF(q), sorted lexicographically."""

    def __init__(self, spec: FieldSpec, words, n: int | None = None):
        arr = np.asarray(words, dtype=np.int64)
        if n is None:
            n = arr.shape[-1]
        arr = arr.reshape(-1, n)
        if arr.shape[0] == 0:
            raise ValueError("a code must be nonempty")
        self.spec = spec
        self.n = n
        self.words = np.unique(arr, axis=0)
        self.words.setflags(write=False)
        keys = _word_keys(spec, self.words)
        self._order = np.argsort(keys, kind="stable")
        self._keys = keys[self._order]

    def __len__(self) -> int:
        return self.words.shape[0]

    def __repr__(self) -> str:
        return f"Code(q={self.spec.q}, n={self.n}, size={len(self)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.words, other.words)

    def __contains__(self, word) -> bool:
        return bool(self.index_of(np.asarray(word)[None, :])[0] >= 0)

    def index_of(self, words) -> np.ndarray:
        """Row index of each word in ``self.words``, or -1 when absent."""
        words = np.asarray(words, dtype=np.int64).reshape(-1, self.n)
        keys = _word_keys(self.spec, words)
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, len(self._keys) - 1)
        found = self._keys[pos] == keys
        return np.where(found, self._order[pos], -1)

    def contains_all(self, words) -> bool:
        return bool((self.index_of(words) >= 0).all())

    def has_zero(self) -> bool:
        return np.zeros(self.n, dtype=np.int64) in self


@dataclass
class LinearBasis:
    """A reduced row echelon basis over ``scalar_field``.

    ``ext_degree`` converts dimensions to GF(q) units: a basis over GF(p) of
    an F_p-additive code over GF(p^e) has ``ext_degree == e``.
    """

    scalar_field: FieldSpec
    rows: np.ndarray
    ext_degree: int = 1

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    @property
    def q_units(self) -> Fraction:
        return Fraction(self.dim, self.ext_degree)

    def contains(self, v) -> bool:
        if self.dim == 0:
            return not np.asarray(v).any()
        return _linalg.in_span(self.scalar_field, self.rows, v)


def f_code(H: GhMatrix) -> Code:
    return Code(H.spec, H.rows)


def c_code(H: GhMatrix) -> Code:
    """Union of the q translates ``F_H + alpha * 1`` of a normalized matrix."""
    if not H.is_normalized:
        raise ValueError("C_H is defined for normalized matrices; normalize first")
    alphas = np.arange(H.spec.q)
    words = H.spec.add(H.rows[None, :, :], alphas[:, None, None])
    return Code(H.spec, words.reshape(-1, H.n))


def _p_expand(spec: FieldSpec, words: np.ndarray) -> np.ndarray:
    """Replace each coordinate by its e base-p digits."""
    words = np.asarray(words, dtype=np.int64)
    return spec.digits(words).reshape(words.shape[0], -1)


def span_basis(C: Code) -> LinearBasis:
    return LinearBasis(C.spec, _linalg.rref(C.spec, C.words)[0])


def rank_q(C: Code) -> int:
    return span_basis(C).dim


def rank_p(C: Code) -> int:
    return _linalg.rank(C.spec.prime_subfield(), _p_expand(C.spec, C.words))


def _p_kernel(C: Code) -> tuple[np.ndarray, np.ndarray]:
    """Generators and all elements of ``{x : x + C = C}``."""
    spec, words = C.spec, C.words
    if not C.has_zero():
        raise ValueError("kernel computations assume the zero word is in the code")
    m, n = words.shape
    status = np.zeros(m, dtype=np.int8)
    group = np.zeros((1, n), dtype=np.int64)
    status[C.index_of(group)] = 1
    gens = []
    multiples = np.arange(spec.p)[:, None]
    for i in range(m):
        if status[i]:
            continue
        c = words[i]
        if C.contains_all(spec.add(words, c[None, :])):
            gens.append(c)
            steps = spec.mul(multiples, c[None, :])
            group = spec.add(group[:, None, :], steps[None, :, :]).reshape(-1, n)
            status[C.index_of(group)] = 1
        else:
            status[C.index_of(spec.add(group, c[None, :]))] = -1
    gens_arr = np.array(gens, dtype=np.int64).reshape(-1, n)
    return gens_arr, group


def _scalar_closed(C: Code, elements: np.ndarray, scalars) -> np.ndarray:
    """Mask of ``elements`` x with ``alpha * x`` in ``C`` for all ``alpha``."""
    keep = np.ones(elements.shape[0], dtype=bool)
    for a in scalars:
        keep &= C.index_of(C.spec.mul(int(a), elements)) >= 0
    return keep


def kernel_p(C: Code) -> LinearBasis:
    """GF(p) basis of the p-kernel, in the e*n-coordinate expansion."""
    gens, _ = _p_kernel(C)
    prime = C.spec.prime_subfield()
    if gens.shape[0] == 0:
        rows = np.zeros((0, C.n * C.spec.e), dtype=np.int64)
    else:
        rows = _linalg.rref(prime, _p_expand(C.spec, gens))[0]
    return LinearBasis(prime, rows, ext_degree=C.spec.e)


def kernel_elements(C: Code) -> np.ndarray:
    """All words of the kernel ``{x : alpha x + C = C for every alpha}``."""
    _, group = _p_kernel(C)
    G = Code(C.spec, group)
    return G.words[_scalar_closed(G, G.words, range(C.spec.q))]


def kernel_q(C: Code) -> LinearBasis:
    elems = kernel_elements(C)
    rows = _linalg.rref(C.spec, elems)[0]
    if C.spec.q ** rows.shape[0] != elems.shape[0]:
        raise RuntimeError("kernel is not a linear space; code data is inconsistent")
    return LinearBasis(C.spec, rows)


def dual_basis(C: Code) -> LinearBasis:
    B = span_basis(C)
    return LinearBasis(C.spec, _linalg.nullspace(C.spec, B.rows, C.n))


def in_dual(C: Code, v) -> bool:
    return not C.spec.dot(span_basis(C).rows, np.asarray(v)[None, :]).any()


def is_self_orthogonal(C: Code) -> bool:
    B = span_basis(C).rows
    gram = C.spec.dot(B[:, None, :], B[None, :, :])
    return not gram.any()


def is_self_dual(C: Code) -> bool:
    return 2 * rank_q(C) == C.n and is_self_orthogonal(C)


def _log_size(C: Code, base: int) -> Fraction | None:
    size, k = len(C), 0
    while size % C.spec.p == 0:
        size //= C.spec.p
        k += 1
    if size != 1:
        return None
    bits = Fraction(k)
    base_bits, b = 0, base
    while b > 1:
        b //= C.spec.p
        base_bits += 1
    return bits / base_bits


def dimension_q_units(C: Code) -> Fraction | None:
    """``log_q |C|``, or None when |C| is not a power of p."""
    return _log_size(C, C.spec.q)


def is_subfield_additive(C: Code, sub_degree: int) -> tuple[bool, int | Fraction | None]:
    """Closure under addition and under scalars of GF(p^sub_degree).

    Returns the dimension ``log_|K| |C|`` over the subfield K when additive.
    """
    sub = C.spec.subfield_elements(sub_degree)
    if not C.has_zero():
        return False, None
    gens, group = _p_kernel(C)
    if group.shape[0] != len(C):
        return False, None
    if not _scalar_closed(C, C.words, sub).all():
        return False, None
    dim = Fraction(gens.shape[0], sub_degree)
    return True, int(dim) if dim.denominator == 1 else dim


def puncture_by_kernel(C: Code, v) -> Code:
    """Keep the coordinates where the kernel vector ``v`` equals 1."""
    v = np.asarray(v, dtype=np.int64)
    ones = np.ones(C.n, dtype=np.int64)
    if _linalg.in_span(C.spec, ones[None, :], v):
        raise ValueError("puncturing vector lies in the span of the all-one vector")
    if not kernel_q(C).contains(v):
        raise ValueError("puncturing vector is not in the kernel of the code")
    coords = np.flatnonzero(v == 1)
    return Code(C.spec, C.words[:, coords])


def min_distance(C: Code) -> int:
    words = C.words
    if words.shape[0] < 2:
        raise ValueError("minimum distance needs at least two words")
    best = C.n
    for i in range(words.shape[0] - 1):
        best = min(best, int((words[i + 1 :] != words[i]).sum(axis=1).min()))
    return best


def gh_matrix_from_code(C: Code) -> GhMatrix | None:
    """Recover a normalized GH matrix H with ``c_code(H) == C``, if one exists."""
    rows = C.words[C.words[:, 0] == 0]
    if rows.shape[0] != C.n or C.n % C.spec.q:
        return None
    H = GhMatrix(C.spec, rows)
    if not H.is_normalized or not is_gh(H).valid:
        return None
    H = H.with_rows(rows, Validity.VALID)
    return H if c_code(H) == C else None


def is_gh_code(C: Code) -> bool:
    return gh_matrix_from_code(C) is not None
