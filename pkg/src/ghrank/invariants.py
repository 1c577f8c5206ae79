"""Invariant profiles of GH matrices and checks of the rank and kernel bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ghcode
from .ghmatrix import GhMatrix, checked, normalize

PASS = "PASS"
FAIL = "FAIL"
NOT_APPLICABLE = "N/A"

# every claim id verify_bounds can emit, in output order
CLAIM_IDS = (
    "rank-c-vs-f",
    "kernel-c-vs-f",
    "kernel-bounds",
    "dual-all-one",
    "dual-first-unit",
    "rank-le-n-minus-1",
    "self-orthogonal",
    "rank-le-half-n",
    "rank-range",
    "rank-given-kernel",
    "self-dual",
    "kernel-min-cofactor",
    "kernel-max-cofactor",
)


def p_adic_split(n: int, p: int) -> tuple[int, int]:
    """``(t, s)`` with ``n == p**t * s`` and ``p`` not dividing ``s``."""
    t = 0
    while n % p == 0:
        n //= p
        t += 1
    return t, n


@dataclass
class InvariantProfile:
    q: int
    p: int
    e: int
    lam: int
    n: int
    t: int  # n = p^t * s, gcd(p, s) = 1
    s: int
    h: int | None  # t / e when integral
    rank: int
    ker: int
    rank_f: int
    ker_f: int
    rank_p: int
    ker_p: int  # GF(p) dimension
    self_orthogonal: bool  # of the span of F_H
    self_dual: bool  # of C_H
    min_distance: int
    ones_in_dual: bool
    first_unit_in_dual: bool

    @property
    def ker_p_q_units(self) -> Fraction:
        return Fraction(self.ker_p, self.e)

    def key(self) -> tuple:
        """Invariants used for nonequivalence, in comparison order."""
        return (self.rank, self.ker, self.rank_p, self.ker_p, self.min_distance)


def profile(H: GhMatrix) -> InvariantProfile:
    H = normalize(checked(H))
    spec = H.spec
    F = ghcode.f_code(H)
    C = ghcode.c_code(H)
    rank_c, rank_f = ghcode.rank_q(C), ghcode.rank_q(F)
    ker_c, ker_f = ghcode.kernel_q(C).dim, ghcode.kernel_q(F).dim
    if rank_c != rank_f + 1 or ker_c != ker_f + 1:
        raise RuntimeError(
            f"rank/kernel of C_H ({rank_c}, {ker_c}) and F_H ({rank_f}, {ker_f}) are inconsistent"
        )
    t, s = p_adic_split(H.n, spec.p)
    ones = np.ones(H.n, dtype=np.int64)
    unit = np.zeros(H.n, dtype=np.int64)
    unit[0] = 1
    return InvariantProfile(
        q=spec.q,
        p=spec.p,
        e=spec.e,
        lam=H.lam,
        n=H.n,
        t=t,
        s=s,
        h=t // spec.e if t % spec.e == 0 else None,
        rank=rank_c,
        ker=ker_c,
        rank_f=rank_f,
        ker_f=ker_f,
        rank_p=ghcode.rank_p(C),
        ker_p=ghcode.kernel_p(C).dim,
        self_orthogonal=ghcode.is_self_orthogonal(F),
        self_dual=ghcode.is_self_dual(C),
        min_distance=ghcode.min_distance(C),
        ones_in_dual=ghcode.in_dual(F, ones),
        first_unit_in_dual=ghcode.in_dual(F, unit),
    )


@dataclass(frozen=True)
class BoundVerdict:
    claim: str
    verdict: str
    detail: str


def _check(claim: str, ok: bool, detail: str) -> BoundVerdict:
    return BoundVerdict(claim, PASS if ok else FAIL, detail)


def _na(claim: str, why: str) -> BoundVerdict:
    return BoundVerdict(claim, NOT_APPLICABLE, why)


def verify_bounds(P: InvariantProfile) -> list[BoundVerdict]:
    """Evaluate every rank/kernel claim whose hypotheses ``P`` satisfies."""
    out = []
    q, n, r, k = P.q, P.n, P.rank, P.ker
    out.append(_check("rank-c-vs-f", r == P.rank_f + 1, f"rank(C)={r}, rank(F)={P.rank_f}"))
    out.append(_check("kernel-c-vs-f", k == P.ker_f + 1, f"ker(C)={k}, ker(F)={P.ker_f}"))

    top = 1 + Fraction(P.t, P.e)
    kp = P.ker_p_q_units
    out.append(
        _check("kernel-bounds", 1 <= k <= kp <= top, f"1 <= {k} <= {kp} <= 1+{P.t}/{P.e} = {top}")
    )
    out.append(_check("dual-all-one", P.ones_in_dual, "all-one vector orthogonal to F_H"))
    out.append(_check("dual-first-unit", P.first_unit_in_dual, "(1,0,...,0) orthogonal to F_H"))
    out.append(_check("rank-le-n-minus-1", r <= n - 1, f"{r} <= {n - 1}"))

    so_hyp = q > 3 or (q == 3 and P.lam % 3 == 0)
    if so_hyp:
        out.append(_check("self-orthogonal", P.self_orthogonal, "span of F_H is self-orthogonal"))
        out.append(_check("rank-le-half-n", r <= n // 2, f"{r} <= {n // 2}"))
    else:
        why = f"needs q > 3 or 3 | lambda (q={q}, lambda={P.lam})"
        out.append(_na("self-orthogonal", why))
        out.append(_na("rank-le-half-n", why))

    h = P.h
    power = h is not None and P.s == 1
    if power and ((q > 3 and h >= 1) or (q == 3 and h >= 2)):
        hi = q**h // 2
        out.append(_check("rank-range", h + 1 <= r <= hi, f"{h + 1} <= {r} <= {hi}"))
    else:
        out.append(_na("rank-range", "needs n = q^h with q > 3, or q = 3 and h >= 2"))

    if power and q > 2 and h >= 1:
        if k == 1:
            hi = q**h // 2
            ok, detail = h + 2 <= r <= hi, f"k=1: {h + 2} <= {r} <= {hi}"
        elif 2 <= k <= h:
            hi = k + q ** (h + 1 - k) - 1
            ok, detail = h + 2 <= r <= hi, f"k={k}: {h + 2} <= {r} <= {hi}"
        else:
            ok, detail = k == h + 1 and r == h + 1, f"k={k}: rank {r} must equal {h + 1}"
        out.append(_check("rank-given-kernel", ok, detail))
    else:
        out.append(_na("rank-given-kernel", "needs n = q^h with q > 2"))

    if P.self_dual:
        out.append(_check("self-dual", q % 2 == 0 and k == 1, f"self-dual with q={q}, ker={k}"))
    else:
        out.append(_na("self-dual", "code is not self-dual"))

    # n = q^hq * sq with q not dividing sq
    hq, sq = 0, n
    while sq % q == 0:
        sq //= q
        hq += 1
    if sq != 1:
        out.append(_check("kernel-min-cofactor", k <= 1 or hq >= 2, f"ker={k}, n={q}^{hq}*{sq}"))
        out.append(_check("kernel-max-cofactor", k <= hq, f"{k} <= {hq}"))
    else:
        why = "needs n = q^h * s with s > 1 not a multiple of q"
        out.append(_na("kernel-min-cofactor", why))
        out.append(_na("kernel-max-cofactor", why))
    return out


@dataclass(frozen=True)
class Certificate:
    """The first differing invariant, plus every other invariant that differs."""

    invariant: str
    first: int
    second: int
    differences: tuple[tuple[str, int, int], ...] = ()

    def __str__(self) -> str:
        return f"{self.invariant} {self.first} != {self.second}"

    def differs_in(self, invariant: str) -> bool:
        return any(name == invariant for name, _, _ in self.differences)


_CERT_FIELDS = ("rank", "ker", "rank_p", "ker_p", "min_distance")


def nonequivalence_certificate(A: GhMatrix, B: GhMatrix) -> Certificate | None:
    """The first invariant on which A and B differ; None means inconclusive."""
    if A.spec != B.spec or A.n != B.n:
        raise ValueError("matrices differ in field or order")
    pa, pb = profile(A), profile(B)
    diffs = tuple((name, a, b) for name, a, b in zip(_CERT_FIELDS, pa.key(), pb.key()) if a != b)
    if not diffs:
        return None
    return Certificate(*diffs[0], differences=diffs)
