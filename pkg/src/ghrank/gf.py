"""Exact arithmetic in GF(p^e).

Elements are integers in ``[0, q)``.  The base-``p`` digits of an element's
code are its coefficients in the polynomial basis ``1, x, ..., x^(e-1)`` of
``GF(p)[x]/(poly)``, least significant first.  All arithmetic accepts Python
ints or numpy integer arrays and broadcasts like numpy.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

# Conway polynomials, constant term first.  For e = 1 the polynomial is
# x - g with g the least primitive root mod p.
CONWAY_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (3, 1): (1, 1),
    (5, 1): (3, 1),
    (7, 1): (4, 1),
    (11, 1): (9, 1),
    (13, 1): (11, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
}

# full q x q tables are kept only up to this order
_TABLE_LIMIT = 256
_MAX_ORDER = 1 << 16


class FieldError(ValueError):
    """Raised for an invalid field description or an undefined operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, e)`` with ``q == p**e``; raise if impossible."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


class FieldSpec:
    """The finite field GF(p^e) with a fixed primitive polynomial.

    Instances are immutable; build them with :func:`field_new` or
    :func:`field_of_order`.
    """

    def __init__(self, p: int, e: int, poly: Sequence[int]):
        self.p = p
        self.e = e
        self.q = p**e
        self.poly = tuple(int(c) for c in poly)
        self._powers = p ** np.arange(e, dtype=np.int64)
        # digits[c] = base-p coefficient vector of code c
        codes = np.arange(self.q, dtype=np.int64)
        self._digits = (codes[:, None] // self._powers[None, :]) % p

        exp = np.zeros(self.q - 1, dtype=np.int64)
        coeffs = [1] + [0] * (e - 1)
        for i in range(self.q - 1):
            exp[i] = sum(c * int(w) for c, w in zip(coeffs, self._powers))
            top = coeffs[-1]
            coeffs = [0] + coeffs[:-1]
            coeffs = [(c - top * a) % p for c, a in zip(coeffs, self.poly[:-1])]
        if coeffs != [1] + [0] * (e - 1) or len(set(exp.tolist())) != self.q - 1:
            raise FieldError(f"polynomial {self.poly} is not primitive over GF({p})")
        self._exp = exp
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(self.q - 1)
        self._log = log

        self.omega = int(exp[1]) if self.q > 2 else 1
        self.elem_order = (0,) + tuple(int(c) for c in exp)

        self._neg = self._from_digits((-self._digits) % p)
        self._inv = np.zeros(self.q, dtype=np.int64)
        self._inv[exp] = exp[(-np.arange(self.q - 1)) % (self.q - 1)]
        if self.q <= _TABLE_LIMIT:
            self._add_table = self._slow_add(codes[:, None], codes[None, :])
            self._mul_table = self._slow_mul(codes[:, None], codes[None, :])
        else:
            self._add_table = self._mul_table = None
        for arr in (self._digits, self._exp, self._log, self._neg, self._inv):
            arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, e={self.e}, poly={list(self.poly)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.poly) == (other.p, other.e, other.poly)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.poly))

    # -- encoding helpers -------------------------------------------------

    def _from_digits(self, digits):
        return (np.asarray(digits, dtype=np.int64) * self._powers).sum(axis=-1)

    def digits(self, a):
        """Base-p coefficient vectors, shape ``a.shape + (e,)``."""
        return self._digits[np.asarray(a, dtype=np.int64)]

    def from_digits(self, digits):
        return self._from_digits(digits)

    def prime_subfield(self) -> "FieldSpec":
        return field_new(self.p, 1)

    def subfield_elements(self, degree: int) -> np.ndarray:
        """Codes of the subfield GF(p^degree), i.e. the roots of x^(p^degree) - x."""
        if degree < 1 or self.e % degree:
            raise FieldError(f"{degree} does not divide the extension degree {self.e}")
        codes = np.arange(self.q)
        return codes[self.pow(codes, self.p**degree) == codes]

    # -- arithmetic ---------------------------------------------------------

    def _slow_add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return self._from_digits((self._digits[a] + self._digits[b]) % self.p)

    def _slow_mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        zero = (a == 0) | (b == 0)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where(zero, 0, out)

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._slow_add(a, b)

    def neg(self, a):
        return self._neg[np.asarray(a, dtype=np.int64)]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._slow_mul(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def pow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            a, k = self.inv(a), -k
        if k == 0:
            return np.ones_like(a)
        out = self._exp[(self._log[a] * k) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def log(self, a):
        """Discrete logarithm base omega of nonzero elements."""
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldError("logarithm of zero")
        return self._log[a]

    def sum(self, a, axis=-1):
        """Field sum of ``a`` along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        # digits add a trailing axis, so negative axes must be made absolute
        d = self._digits[a].sum(axis=axis % a.ndim) % self.p
        return self._from_digits(d)

    def dot(self, u, v):
        """Euclidean inner product over the last axis."""
        return self.sum(self.mul(u, v), axis=-1)


@lru_cache(maxsize=None)
def _cached_field(p: int, e: int, poly: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, e, poly)


def field_new(p: int, e: int = 1, poly: Sequence[int] | None = None) -> FieldSpec:
    """Construct GF(p^e).

    ``poly`` is a monic primitive polynomial of degree ``e`` given constant
    term first.  Without it, the built-in Conway polynomial is used.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1:
        raise FieldError("extension degree must be at least 1")
    if p**e > _MAX_ORDER:
        raise FieldError(f"field order {p**e} exceeds the supported maximum {_MAX_ORDER}")
    if poly is None:
        try:
            poly = CONWAY_POLYNOMIALS[(p, e)]
        except KeyError:
            raise FieldError(f"no built-in polynomial for GF({p}^{e}); pass one explicitly") from None
    poly = tuple(int(c) for c in poly)
    if len(poly) != e + 1 or poly[-1] != 1:
        raise FieldError(f"polynomial {poly} is not monic of degree {e}")
    if any(not 0 <= c < p for c in poly):
        raise FieldError(f"polynomial coefficients must lie in [0, {p - 1}]")
    return _cached_field(p, e, poly)


def field_of_order(q: int) -> FieldSpec:
    """GF(q) with its built-in polynomial."""
    p, e = prime_power(q)
    return field_new(p, e)


def element_arith(spec: FieldSpec, op: str, a, b=None):
    """Dispatch one of ``add sub mul neg inv pow`` by name."""
    if op == "add":
        return spec.add(a, b)
    if op == "sub":
        return spec.sub(a, b)
    if op == "mul":
        return spec.mul(a, b)
    if op == "neg":
        return spec.neg(a)
    if op == "inv":
        return spec.inv(a)
    if op == "pow":
        return spec.pow(a, int(b))
    raise FieldError(f"unknown operation {op!r}")


def sum_of_squares(spec: FieldSpec) -> int:
    """The field element sum of x^2 over all x in GF(q)."""
    codes = np.arange(spec.q)
    return int(spec.sum(spec.mul(codes, codes)))
