"""Generators of GH matrices: multiplication tables, Kronecker sums and switching.

All builders return normalized matrices marked valid.  Kronecker sums of valid
inputs are valid by construction; switched matrices are re-checked.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _linalg
from .gf import FieldSpec
from .ghcode import c_code, kernel_elements, kernel_q
from .ghmatrix import (
    ColPerm,
    GhMatrix,
    InvalidGhError,
    Validity,
    apply_moves,
    checked,
    is_gh,
    normalize,
    translation_equivalent,
)


class InfeasibleError(ValueError):
    """No GH matrix with the requested parameters exists (or none is built here)."""


def s_q(spec: FieldSpec) -> GhMatrix:
    """Multiplication table of GF(q) in the order 0, 1, w, ..., w^(q-2)."""
    order = np.array(spec.elem_order)
    return GhMatrix(spec, spec.mul(order[:, None], order[None, :]), Validity.VALID)


def s_q_swapped(spec: FieldSpec) -> GhMatrix:
    """S_q with its second and third columns exchanged."""
    if spec.q < 3:
        raise ValueError("the swapped multiplication table needs q >= 3")
    perm = list(range(spec.q))
    perm[1], perm[2] = 2, 1
    return apply_moves(s_q(spec), [ColPerm(tuple(perm))])


def kronecker(H: GhMatrix, Bs: GhMatrix | Sequence[GhMatrix]) -> GhMatrix:
    """Block matrix whose block (i, j) is ``h_ij + B_i``.

    A single ``B`` is used for every block row.
    """
    H = checked(H)
    if isinstance(Bs, GhMatrix):
        Bs = [Bs] * H.n
    Bs = [checked(B) for B in Bs]
    if len(Bs) != H.n:
        raise ValueError(f"need {H.n} inner matrices, got {len(Bs)}")
    if any(B.spec != H.spec for B in Bs):
        raise ValueError("all matrices must be over the same field")
    m = Bs[0].n
    if any(B.n != m for B in Bs):
        raise ValueError("inner matrices must share one order")
    stack = np.stack([B.rows for B in Bs])  # (n, m, m) indexed [i, r, c]
    big = H.spec.add(H.rows[:, None, :, None], stack[:, :, None, :])
    return GhMatrix(H.spec, big.reshape(H.n * m, H.n * m), Validity.VALID)


def sylvester(spec: FieldSpec, t: int) -> GhMatrix:
    """The t-fold Kronecker sum of S_q, a GH matrix H(q, q^(t-1))."""
    if t < 1:
        raise ValueError("t must be at least 1")
    S = s_q(spec)
    out = S
    for _ in range(t - 1):
        out = kronecker(S, out)
    return out


def sylvester_generators(spec: FieldSpec, h: int) -> np.ndarray:
    """Rows v_1..v_h of S^h; v_i takes each field element on runs of length q^(h-i)."""
    S = sylvester(spec, h)
    return np.stack([S.rows[spec.q ** (h - i)] for i in range(1, h + 1)])


def coordinate_blocks(generators) -> list[np.ndarray]:
    """Groups of coordinates on which all generator columns coincide, by first index."""
    gens = np.asarray(generators, dtype=np.int64)
    n = gens.shape[1]
    if gens.shape[0] == 0:
        return [np.arange(n)]
    groups: dict[tuple[int, ...], list[int]] = {}
    for c in range(n):
        groups.setdefault(tuple(gens[:, c].tolist()), []).append(c)
    return sorted((np.array(g) for g in groups.values()), key=lambda g: int(g[0]))


def block_vector(n: int, block: np.ndarray) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    e[block] = 1
    return e


@dataclass
class SwitchPlan:
    """Replace each coset ``K + x_j`` of the rows by ``K + x_j + e_j``."""

    kernel_generators: np.ndarray
    coset_reps: list[np.ndarray]
    block_vectors: list[np.ndarray]


def switch(H: GhMatrix, plan: SwitchPlan) -> GhMatrix:
    H = checked(H)
    spec, n = H.spec, H.n
    if len(plan.coset_reps) != len(plan.block_vectors):
        raise ValueError("need one block vector per coset representative")
    if not plan.coset_reps:
        return H
    gens = np.asarray(plan.kernel_generators, dtype=np.int64).reshape(-1, n)
    K = _linalg.span_elements(spec, gens) if gens.shape[0] else np.zeros((1, n), dtype=np.int64)
    blocks = coordinate_blocks(gens)
    block_sets = {tuple(b.tolist()) for b in blocks}
    index = {tuple(r): i for i, r in enumerate(H.rows.tolist())}

    rows = H.rows.copy()
    used: set[int] = set()
    for x, e in zip(plan.coset_reps, plan.block_vectors):
        x = np.asarray(x, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        if tuple(np.flatnonzero(e).tolist()) not in block_sets or set(e.tolist()) - {0, 1}:
            raise ValueError("block vector must be the indicator of one coordinate block of K")
        coset = spec.add(K, x[None, :])
        if not coset.any(axis=1).all():
            raise ValueError("coset representative lies in K")
        idx = [index.get(tuple(w)) for w in coset.tolist()]
        if any(i is None for i in idx):
            raise ValueError("rows of H do not contain the whole coset K + x")
        if used.intersection(idx):
            raise ValueError("coset representatives must lie in distinct cosets of K")
        used.update(idx)
        rows[idx] = spec.add(H.rows[idx], e[None, :])

    out = GhMatrix(spec, rows)
    report = is_gh(out)
    if not report.valid:
        raise InvalidGhError(f"switching broke the GH property: {report.describe()}")
    return out.with_rows(rows, Validity.VALID)


def _first_cosets(S: GhMatrix, K: np.ndarray, count: int) -> list[np.ndarray]:
    """Lexicographically least representatives of ``count`` distinct nontrivial cosets."""
    spec = S.spec
    covered = {tuple(r) for r in K.tolist()}
    reps = []
    for row in sorted(map(tuple, S.rows.tolist())):
        if len(reps) == count:
            break
        if row in covered:
            continue
        x = np.array(row, dtype=np.int64)
        reps.append(x)
        covered.update(map(tuple, spec.add(K, x[None, :]).tolist()))
    if len(reps) < count:
        raise InfeasibleError(f"only {len(reps)} nontrivial cosets available, {count} requested")
    return reps


def switched_sylvester(spec: FieldSpec, h: int, kernel_gens: int, switches: int) -> GhMatrix:
    """Switch ``switches`` cosets of span(v_1..v_kernel_gens) in S^h onto successive blocks."""
    S = sylvester(spec, h)
    gens = sylvester_generators(spec, h)[:kernel_gens]
    blocks = coordinate_blocks(gens)
    if switches + 1 > len(blocks):
        raise InfeasibleError(f"{switches} switches need {switches + 1} blocks, only {len(blocks)} exist")
    K = _linalg.span_elements(spec, gens)
    reps = _first_cosets(S, K, switches)
    es = [block_vector(S.n, blocks[j + 1]) for j in range(switches)]
    return switch(S, SwitchPlan(gens, reps, es))


def kernel_range(spec: FieldSpec, h: int, seeded: bool = False) -> list[int]:
    """Kernel dimensions realizable by GH codes of length q^h (or q^h * s when seeded)."""
    if seeded:
        return list(range(1, h + 1))
    if spec.q == 3 and h == 2:
        return [2, 3]
    return list(range(1, h + 2))


def _check_seed(spec: FieldSpec, seed: GhMatrix) -> GhMatrix:
    seed = normalize(checked(seed))
    if seed.spec != spec:
        raise ValueError("seed matrix is over a different field")
    s = seed.lam
    if spec.e != 1:
        raise InfeasibleError("seeded construction needs a prime field")
    if s == 1 or s % spec.q == 0:
        raise InfeasibleError(f"seed must be H(q, s) with s > 1 not a multiple of q, got s = {s}")
    return seed


def _inequivalent_partner(A: GhMatrix) -> GhMatrix:
    """A column transposition of A that is not translation equivalent to A."""
    for i, j in itertools.combinations(range(1, A.n), 2):
        perm = list(range(A.n))
        perm[i], perm[j] = j, i
        B = normalize(apply_moves(A, [ColPerm(tuple(perm))]))
        if translation_equivalent(A, B) is None:
            return B
    raise InfeasibleError("every column transposition of the seed is translation equivalent to it")


def _ker_one_q3_h3(spec: FieldSpec) -> GhMatrix:
    """S_3 + [pi(H2), H3, H3] for a coordinate permutation pi of the kernel-2 matrix H2."""
    H2 = switched_sylvester(spec, 2, 1, 1)
    H3 = sylvester(spec, 2)
    kern = kernel_elements(c_code(H2))
    n = H2.n
    ones = np.ones(n, dtype=np.int64)

    def candidates():
        for shift in range(1, n):
            yield tuple((np.arange(n) + shift) % n)
        for perm in itertools.permutations(range(n)):
            yield perm

    for perm in candidates():
        P = normalize(apply_moves(H2, [ColPerm(perm)]))
        moved = kernel_elements(c_code(P))
        common = {tuple(r) for r in kern.tolist()} & {tuple(r) for r in moved.tolist()}
        if len(common) != spec.q:
            continue
        H = normalize(kronecker(s_q(spec), [P, H3, H3]))
        if kernel_q(c_code(H)).dim == 1:
            return H
    raise InfeasibleError("no coordinate permutation gives a trivial kernel intersection")


def _build_unseeded(spec: FieldSpec, h: int, k: int) -> GhMatrix:
    q = spec.q
    if k == h + 1:
        return sylvester(spec, h)
    S = s_q(spec)
    if h == 2:
        if k == 2:
            return switched_sylvester(spec, 2, 1, 1)
        # k == 1, q > 3
        return normalize(kronecker(S, [s_q_swapped(spec)] + [S] * (q - 1)))
    if k >= 2:
        if k - 1 in kernel_range(spec, h - 1):
            return normalize(kronecker(S, _build_unseeded(spec, h - 1, k - 1)))
        # q = 3, h = 3, k = 2: no kernel-1 matrix of order 9
        return normalize(kronecker(S, [_build_unseeded(spec, 2, 2)] + [sylvester(spec, 2)] * (q - 1)))
    if 1 in kernel_range(spec, h - 1):
        low = _build_unseeded(spec, h - 1, 1)
        high = sylvester(spec, h - 1)
        return normalize(kronecker(S, [low] + [high] * (q - 1)))
    return _ker_one_q3_h3(spec)


def _build_seeded(spec: FieldSpec, h: int, k: int, seed: GhMatrix) -> GhMatrix:
    q = spec.q
    if h == 1:
        return seed
    S = s_q(spec)
    if k >= 2:
        return normalize(kronecker(S, _build_seeded(spec, h - 1, k - 1, seed)))
    low = _build_seeded(spec, h - 1, 1, seed)
    if h - 1 >= 2:
        high = _build_seeded(spec, h - 1, 2, seed)
    else:
        high = _inequivalent_partner(seed)
    return normalize(kronecker(S, [low] + [high] * (q - 1)))


def build_kernel_target(spec: FieldSpec, h: int, k: int, seed: GhMatrix | None = None) -> GhMatrix:
    """A GH matrix of order q^h (times s with a seed H(q, s)) whose code has kernel dimension k."""
    if spec.q <= 2:
        raise InfeasibleError("kernel targets are built for q > 2 only")
    if h < 2:
        raise InfeasibleError("kernel targets need h >= 2")
    feasible = kernel_range(spec, h, seeded=seed is not None)
    if k not in feasible:
        length = f"{spec.q}^{h}" if seed is None else f"{spec.q}^{h} * {seed.lam}"
        raise InfeasibleError(
            f"no GH code of length {length} over GF({spec.q}) has kernel dimension {k}; "
            f"feasible kernel dimensions are {feasible}"
        )
    if seed is None:
        return _build_unseeded(spec, h, k)
    return _build_seeded(spec, h, k, _check_seed(spec, seed))


def rank_range(spec: FieldSpec, h: int, k: int) -> list[int]:
    """Ranks reached by the switching builder for kernel dimension k at length q^h."""
    if spec.q <= 2 or h < 2 or not math.ceil((h + 2) / 2) <= k <= h:
        return []
    return list(range(h + 2, k + spec.q ** (h + 1 - k)))


def build_rank_kernel_target(spec: FieldSpec, h: int, k: int, r: int) -> GhMatrix:
    """Switch r - h - 1 cosets of span(v_1..v_(k-1)) in S^h to reach rank r, kernel k."""
    if spec.q <= 2:
        raise InfeasibleError("rank targets are built for q > 2 only")
    if h < 2:
        raise InfeasibleError("rank targets need h >= 2")
    lo_k = math.ceil((h + 2) / 2)
    if not lo_k <= k <= h:
        raise InfeasibleError(f"kernel dimension must lie in [{lo_k}, {h}] for h = {h}, got {k}")
    hi_r = k + spec.q ** (h + 1 - k) - 1
    if not h + 2 <= r <= hi_r:
        raise InfeasibleError(f"rank must lie in [{h + 2}, {hi_r}] for h = {h}, k = {k}; got {r}")
    blocks = spec.q ** (k - 1)
    if blocks < spec.q ** (h + 1 - k) + k - h - 2:
        raise InfeasibleError("not enough coordinate blocks for the required switches")
    return normalize(switched_sylvester(spec, h, k - 1, r - h - 1))
