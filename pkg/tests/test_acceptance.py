"""Acceptance criteria, one test per criterion.

Criteria 3 to 7 build matrices through ``_pool``; criteria 8 and 10 reuse
that pool, so the matrices they judge are exactly the ones generated there.
"""

from __future__ import annotations

import json
import math
import subprocess
import sys
from functools import lru_cache

import numpy as np
import pytest

from fixtures import KERNEL_VECTOR_9, SWITCHED_9, order_6, switched_9
from ghrank import _linalg
from ghrank import constructions as cons
from ghrank.cli import inv_report, main
from ghrank.gf import field_of_order
from ghrank.ghcode import (
    c_code,
    f_code,
    gh_matrix_from_code,
    is_self_orthogonal,
    kernel_q,
    puncture_by_kernel,
    rank_q,
)
from ghrank.ghmatrix import AddToCol, AddToRow, ColPerm, GhMatrix, RowPerm, apply_moves, is_gh, normalize, transpose
from ghrank.ghmio import parse_ghm, read_ghm, write_ghm
from ghrank.invariants import FAIL, NOT_APPLICABLE, PASS, profile, verify_bounds


def f(q):
    return field_of_order(q)


def rk(H):
    C = c_code(normalize(H))
    return rank_q(C), kernel_q(C).dim


# -- the pool of matrices generated by criteria 3 to 7 ----------------------------------


@lru_cache(maxsize=None)
def _switch_output() -> GhMatrix:
    plan = cons.SwitchPlan(
        kernel_generators=np.array([KERNEL_VECTOR_9]),
        coset_reps=[np.array([0, 1, 2, 0, 1, 2, 0, 1, 2])],
        block_vectors=[np.array([0, 0, 0, 1, 1, 1, 0, 0, 0])],
    )
    return cons.switch(cons.sylvester(f(3), 2), plan)


@lru_cache(maxsize=None)
def _q4_rank_targets() -> tuple[tuple[str, GhMatrix], ...]:
    F = f(4)
    return (
        ("sylvester q4 h2", cons.sylvester(F, 2)),
        ("rank 4 kernel 2 q4", cons.build_rank_kernel_target(F, 2, 2, 4)),
        ("rank 5 kernel 2 q4", cons.build_rank_kernel_target(F, 2, 2, 5)),
    )


def _factors(q: int) -> list[tuple[str, GhMatrix]]:
    F = f(q)
    out = [("S_q", cons.s_q(F)), ("S'_q", cons.s_q_swapped(F))]
    out += [(f"S^{t}", cons.sylvester(F, t)) for t in (2, 3)]  # S^1 is S_q
    if q == 3:
        out += [("switched 9", switched_9()), ("order 6", order_6())]
    return out


@lru_cache(maxsize=None)
def _kronecker_cases() -> tuple:
    """50 seeded-random pairs and triples of order at most 256, distinct as matrices."""
    rng = np.random.default_rng(20240501)
    cases, seen = [], set()
    while len(cases) < 50:
        q = int(rng.choice([3, 4, 5]))
        facs = _factors(q)
        arity = int(rng.choice([2, 3]))
        picks = [facs[i] for i in rng.integers(len(facs), size=arity)]
        if math.prod(M.n for _, M in picks) > 256:
            continue
        M = picks[0][1]
        for _, B in picks[1:]:
            M = cons.kronecker(M, B)
        M = normalize(M)
        if M in seen:
            continue
        seen.add(M)
        cases.append((q, tuple(picks), M))
    return tuple(cases)


KERNEL_SWEEP = [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2)]


@lru_cache(maxsize=None)
def _kernel_sweep() -> tuple:
    out = []
    for q, h in KERNEL_SWEEP:
        F = f(q)
        for k in cons.kernel_range(F, h):
            out.append((q, h, k, cons.build_kernel_target(F, h, k)))
    return tuple(out)


@lru_cache(maxsize=None)
def _seeded_kernel_sweep() -> tuple:
    """Lengths 3^h * 2 built on the order-6 seed."""
    F = f(3)
    return tuple(
        (h, k, cons.build_kernel_target(F, h, k, seed=order_6()))
        for h in (2, 3)
        for k in cons.kernel_range(F, h, seeded=True)
    )


@lru_cache(maxsize=None)
def _self_orthogonality_population() -> tuple:
    """Every constructed matrix with q in {4, 5, 7}, or q = 3 and 3 | lambda."""
    mats = []
    for q in (4, 5, 7):
        F = f(q)
        mats += [(f"S_{q}", cons.s_q(F)), (f"S'_{q}", cons.s_q_swapped(F))]
        for h in (1, 2, 3):
            if q**h > 256:
                continue
            mats.append((f"S^{h} q{q}", cons.sylvester(F, h)))
            if h < 2:
                continue
            for k in cons.kernel_range(F, h):
                mats.append((f"kernel {k} q{q} h{h}", cons.build_kernel_target(F, h, k)))
            for k in range(math.ceil((h + 2) / 2), h + 1):
                for r in cons.rank_range(F, h, k):
                    mats.append((f"rank {r} kernel {k} q{q} h{h}", cons.build_rank_kernel_target(F, h, k, r)))
    F3 = f(3)
    for h in (2, 3, 4):
        mats.append((f"S^{h} q3", cons.sylvester(F3, h)))
        for k in cons.kernel_range(F3, h):
            if 3**h <= 81:
                mats.append((f"kernel {k} q3 h{h}", cons.build_kernel_target(F3, h, k)))
        for k in range(math.ceil((h + 2) / 2), h + 1):
            if 3**h <= 81:
                for r in cons.rank_range(F3, h, k):
                    mats.append((f"rank {r} kernel {k} q3 h{h}", cons.build_rank_kernel_target(F3, h, k, r)))
    return tuple(mats)


def _pool() -> list[tuple[str, GhMatrix]]:
    pool = [("switch output", _switch_output())]
    pool += list(_q4_rank_targets())
    for i, (q, picks, M) in enumerate(_kronecker_cases()):
        pool += [(f"kron {i}: " + " + ".join(lbl for lbl, _ in picks), M)]
        pool += [(f"kron {i} factor {lbl} q{q}", B) for lbl, B in picks]
    pool += [(f"kernel {k} q{q} h{h}", M) for q, h, k, M in _kernel_sweep()]
    pool += [(f"seeded kernel {k} h{h}", M) for h, k, M in _seeded_kernel_sweep()]
    pool += list(_self_orthogonality_population())
    pool += [("switched 9", switched_9()), ("order 6", order_6()), ("S_3", cons.s_q(f(3)))]
    seen, unique = set(), []
    for label, M in pool:
        key = (M.spec, M.rows.tobytes())
        if key not in seen:
            seen.add(key)
            unique.append((label, M))
    return unique


# -- criteria -------------------------------------------------------------------------


@pytest.mark.criterion(1)
def test_criterion_01_switched_9_fixture():
    H = switched_9()
    assert is_gh(H).valid
    P = profile(H)
    assert (P.rank, P.ker) == (4, 2)
    K = kernel_q(c_code(H))
    got = {tuple(w) for w in _linalg.span_elements(H.spec, K.rows).tolist()}
    want = {tuple(w) for w in _linalg.span_elements(H.spec, np.array([[1] * 9, KERNEL_VECTOR_9])).tolist()}
    assert got == want


@pytest.mark.criterion(2)
def test_criterion_02_order_6_fixture():
    H = order_6()
    assert is_gh(H).valid
    P = profile(H)
    assert P.rank == 5 and P.rank_f == 4
    assert P.ker == 1
    verdicts = {v.claim: v for v in verify_bounds(P)}
    assert verdicts["rank-le-n-minus-1"].verdict == PASS and P.rank == H.n - 1
    assert P.self_orthogonal is False


@pytest.mark.criterion(3)
def test_criterion_03_switching_reconstruction():
    assert _switch_output().row_set() == {tuple(r) for r in SWITCHED_9}


@pytest.mark.criterion(4)
def test_criterion_04_q4_rank_kernel_spot_checks():
    outs = dict(_q4_rank_targets())
    assert rk(outs["sylvester q4 h2"]) == (3, 3)
    assert rk(outs["rank 4 kernel 2 q4"]) == (4, 2)
    assert rk(outs["rank 5 kernel 2 q4"]) == (5, 2)
    with pytest.raises(cons.InfeasibleError):
        cons.build_rank_kernel_target(f(4), 2, 2, 6)
    for M in outs.values():
        assert is_gh(M).valid
        assert is_self_orthogonal(f_code(normalize(M)))


@pytest.mark.criterion(5)
def test_criterion_05_kronecker_formulas():
    cases = _kronecker_cases()
    assert len(cases) == 50
    failures = []
    for i, (q, picks, M) in enumerate(cases):
        parts = [rk(B) for _, B in picks]
        m = len(parts)
        want = (sum(r for r, _ in parts) - (m - 1), sum(k for _, k in parts) - (m - 1))
        got = rk(M)
        if got != want or not is_gh(M).valid:
            failures.append((i, [lbl for lbl, _ in picks], q, got, want))
    assert not failures, failures
    assert {len(p) for _, p, _ in cases} == {2, 3}


@pytest.mark.criterion(6)
def test_criterion_06_kernel_range_sweep():
    built = _kernel_sweep()
    for q, h, k, M in built:
        assert M.n == q**h and is_gh(M).valid
        assert rk(M)[1] == k, (q, h, k)
    for q, h in KERNEL_SWEEP:
        feasible = {k for qq, hh, k, _ in built if (qq, hh) == (q, h)}
        assert feasible == ({2, 3} if (q, h) == (3, 2) else set(range(1, h + 2)))
        for k in sorted({0, 1, h + 2, h + 3} - feasible):
            with pytest.raises(cons.InfeasibleError):
                cons.build_kernel_target(f(q), h, k)
    for h, k, M in _seeded_kernel_sweep():
        assert M.n == 3**h * 2 and is_gh(M).valid
        assert rk(M)[1] == k, ("seeded", h, k)
    for h in (2, 3):
        with pytest.raises(cons.InfeasibleError):
            cons.build_kernel_target(f(3), h, h + 1, seed=order_6())


@pytest.mark.criterion(7)
def test_criterion_07_self_orthogonality():
    pop = _self_orthogonality_population()
    pop += tuple((f"kron {i}", M) for i, (q, _, M) in enumerate(_kronecker_cases()) if q > 3 or M.lam % 3 == 0)
    bad = []
    for label, M in pop:
        assert M.spec.q > 3 or M.lam % 3 == 0
        N = normalize(M)
        if not is_self_orthogonal(f_code(N)) or rank_q(c_code(N)) > M.n // 2:
            bad.append(label)
    assert not bad, bad
    assert len(pop) > 50
    for M in (cons.s_q(f(3)), order_6()):
        assert M.lam in (1, 2)
        assert not is_self_orthogonal(f_code(M))
        assert profile(M).self_orthogonal is False


@pytest.mark.criterion(8)
def test_criterion_08_bound_suite():
    pool = _pool()
    assert len(pool) >= 100
    failures = []
    applicable = 0
    for label, M in pool:
        for v in verify_bounds(profile(M)):
            if v.verdict == FAIL:
                failures.append(f"{label}: {v.claim} ({v.detail})")
            elif v.verdict == PASS:
                applicable += 1
            if v.claim in ("kernel-bounds", "dual-all-one", "dual-first-unit"):
                assert v.verdict != NOT_APPLICABLE
    assert applicable > 0
    assert not failures, failures


@lru_cache(maxsize=None)
def _puncture_population() -> tuple:
    """GH codes of length 3^h * 2 with kernel at least 2, from two H(3, 2) seeds."""
    F = f(3)
    seed = order_6()
    other = normalize(transpose(seed))
    out = []
    for h in (2, 3, 4):
        for k in range(2, h + 1):
            out.append((f"seeded h{h} k{k}", cons.build_kernel_target(F, h, k, seed=seed)))
    for t in (1, 2):
        out.append((f"S^{t} + transposed seed", normalize(cons.kronecker(cons.sylvester(F, t), other))))
    for t in (1, 3):
        out.append((f"S^{t} + seed", normalize(cons.kronecker(cons.sylvester(F, t), seed))))
    return tuple(out)


@pytest.mark.criterion(9)
def test_criterion_09_puncturing():
    codes = _puncture_population()
    assert len(codes) >= 10
    for label, M in codes[:10]:
        assert M.n <= 256
        C = c_code(M)
        K = kernel_q(C)
        assert K.dim >= 2, label
        ones = np.ones(C.n, dtype=np.int64)
        vectors = [v for v in K.rows if not _linalg.in_span(C.spec, ones[None, :], v)]
        assert vectors
        for v in vectors:
            P = puncture_by_kernel(C, v)
            assert P.n == C.n // C.spec.q, label
            assert gh_matrix_from_code(P) is not None, label
            assert kernel_q(P).dim == K.dim - 1, label


def _round_trip_population() -> list[GhMatrix]:
    mats = [M for _, M in _pool()]
    rng = np.random.default_rng(10)
    extra = []
    for M in mats[:40]:
        n, q = M.n, M.spec.q
        moves = [
            RowPerm(tuple(rng.permutation(n).tolist())),
            ColPerm(tuple(rng.permutation(n).tolist())),
            AddToRow(int(rng.integers(n)), int(rng.integers(q))),
            AddToCol(int(rng.integers(n)), int(rng.integers(q))),
        ]
        extra.append(apply_moves(M, moves))
    return mats + extra


@pytest.mark.criterion(10)
def test_criterion_10_round_trip_and_determinism(tmp_path, capsys):
    mats = _round_trip_population()
    assert len(mats) >= 100
    for i, M in enumerate(mats[:120]):
        data = write_ghm(M)
        path = tmp_path / f"m{i:03d}.ghm"
        path.write_bytes(data)
        back = read_ghm(path)
        assert back == M
        assert write_ghm(back) == path.read_bytes() == data
        assert parse_ghm(data) == M

    for i in (0, 1, 2, 50, 100):
        path = tmp_path / f"m{i:03d}.ghm"
        outputs = []
        for _ in range(3):
            main(["inv", str(path), "--json"])
            outputs.append(capsys.readouterr().out)
        assert len(set(outputs)) == 1
        doc, _ = inv_report(read_ghm(path))
        assert json.loads(outputs[0]) == json.loads(json.dumps(doc))

    # separate interpreter processes print the same bytes
    path = tmp_path / "m001.ghm"
    runs = [
        subprocess.run([sys.executable, "-m", "ghrank.cli", "inv", str(path), "--json"], capture_output=True, check=False)
        for _ in range(2)
    ]
    assert runs[0].stdout == runs[1].stdout and runs[0].stdout
