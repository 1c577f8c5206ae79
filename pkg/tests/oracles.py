"""Slow pure-Python reference implementations used as test oracles.

Nothing here touches the numpy tables in ``ghrank.gf``; field arithmetic is
done by schoolbook polynomial multiplication modulo the defining polynomial.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache


class RefField:
    def __init__(self, p: int, e: int, poly):
        self.p, self.e, self.q = p, e, p**e
        self.poly = list(poly)  # constant term first, monic

    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def code(self, d) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def add(self, a: int, b: int) -> int:
        return self.code([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.code([(-x) % self.p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(self.digits(a)):
            for j, y in enumerate(self.digits(b)):
                prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * e - 2, e - 1, -1):
            c = prod[deg]
            if c:
                for i in range(e + 1):
                    prod[deg - e + i] = (prod[deg - e + i] - c * self.poly[i]) % p
        return self.code(prod[:e])


@lru_cache(maxsize=None)
def ref_field(spec) -> RefField:
    return RefField(spec.p, spec.e, spec.poly)


def vadd(F: RefField, u, v) -> tuple:
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vscale(F: RefField, c: int, u) -> tuple:
    return tuple(F.mul(c, a) for a in u)


def naive_is_gh(F: RefField, rows) -> bool:
    n = len(rows)
    if n % F.q:
        return False
    lam = n // F.q
    want = Counter({a: lam for a in range(F.q)})
    for i, j in itertools.combinations(range(n), 2):
        if Counter(F.sub(a, b) for a, b in zip(rows[i], rows[j])) != want:
            return False
    return True


def naive_normalize(F: RefField, rows) -> list[tuple]:
    first = rows[0]
    rows = [tuple(F.sub(a, b) for a, b in zip(r, first)) for r in rows]
    return [tuple(F.sub(a, r[0]) for a in r) for r in rows]


def naive_c_code(F: RefField, rows) -> set[tuple]:
    n = len(rows[0])
    return {vadd(F, r, (a,) * n) for r in rows for a in range(F.q)}


def naive_span(F: RefField, words, scalars=None) -> set[tuple]:
    """Closure of ``words`` under addition and multiplication by ``scalars``."""
    scalars = range(F.q) if scalars is None else scalars
    words = list(words)
    n = len(words[0])
    span = {(0,) * n}
    for w in words:
        if w in span:
            continue
        multiples = {vscale(F, c, w) for c in scalars}
        # close the additive group generated by the multiples
        new = set(span)
        frontier = set(span)
        while frontier:
            nxt = set()
            for x in frontier:
                for m in multiples:
                    y = vadd(F, x, m)
                    if y not in new:
                        new.add(y)
                        nxt.add(y)
            frontier = nxt
        span = new
    return span


def log_int(base: int, size: int) -> int:
    k = 0
    while base**k < size:
        k += 1
    assert base**k == size, (base, size)
    return k


def naive_rank(F: RefField, code) -> int:
    return log_int(F.q, len(naive_span(F, code)))


def naive_p_rank(F: RefField, code) -> int:
    return log_int(F.p, len(naive_span(F, code, scalars=range(F.p))))


def naive_kernel(F: RefField, code) -> set[tuple]:
    """Every x with alpha*x + C == C for all alpha (x ranges over C since 0 in C)."""
    code = set(code)
    out = set()
    for x in code:
        if all({vadd(F, vscale(F, a, x), c) for c in code} == code for a in range(1, F.q)):
            out.add(x)
    return out


def naive_p_kernel(F: RefField, code) -> set[tuple]:
    code = set(code)
    return {x for x in code if {vadd(F, x, c) for c in code} == code}


def naive_min_distance(code) -> int:
    return min(sum(a != b for a, b in zip(u, v)) for u, v in itertools.combinations(code, 2))


def naive_dot(F: RefField, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc
