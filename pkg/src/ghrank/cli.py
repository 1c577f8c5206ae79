"""Command-line interface.

Exit status: 0 on success, 1 for a mathematical verdict failure (invalid GH
matrix, failed bound, infeasible target), 2 for usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
from collections import defaultdict
from pathlib import Path

import numpy as np

from . import _linalg, ghcode
from . import constructions as cons
from .claims import run_claims
from .gf import FieldError, field_of_order
from .ghmatrix import InvalidGhError, MalformedMatrixError, is_gh, normalize
from .ghmio import (
    CatalogRecord,
    GhmFormatError,
    load_index,
    read_ghm,
    store_index,
    write_ghm,
)
from .invariants import FAIL, profile, verify_bounds

EXIT_OK, EXIT_VERDICT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit_matrix(M, out: str | None) -> None:
    data = write_ghm(M)
    if out is None or out == "-":
        sys.stdout.write(data.decode("ascii"))
    else:
        Path(out).write_bytes(data)


def _figure_path(arg: str) -> Path:
    path = Path(arg)
    return path if path.suffix else path.with_suffix(".png")


def _field(q: int):
    try:
        return field_of_order(q)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def cmd_gen(args) -> int:
    if args.kind == "sylvester":
        M = cons.sylvester(_field(args.q), args.t)
    elif args.kind == "kron":
        H = read_ghm(args.H)
        Bs = [read_ghm(f) for f in args.B.split(",")]
        M = cons.kronecker(H, Bs[0] if len(Bs) == 1 else Bs)
    else:
        spec = _field(args.q)
        if args.rank is not None:
            if args.seed:
                raise UsageError("--seed cannot be combined with --rank")
            M = cons.build_rank_kernel_target(spec, args.h, args.kernel, args.rank)
        else:
            seed = read_ghm(args.seed) if args.seed else None
            M = cons.build_kernel_target(spec, args.h, args.kernel, seed=seed)
    _emit_matrix(M, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    M = read_ghm(args.file)
    report = is_gh(M)
    print(f"gh\t{report.describe()}")
    print(f"normalized\t{'yes' if M.is_normalized else 'no'}")
    if not report.valid:
        return EXIT_VERDICT
    so = ghcode.is_self_orthogonal(ghcode.f_code(normalize(M)))
    print(f"self_orthogonal\t{'yes' if so else 'no'}")
    return EXIT_OK


def inv_report(M) -> tuple[dict, list]:
    P = profile(M)
    bounds = verify_bounds(P)
    doc = {
        "q": P.q,
        "lambda": P.lam,
        "n": P.n,
        "rank": P.rank,
        "ker": P.ker,
        "rank_p_int": P.rank_p,
        "ker_p_int": P.ker_p,
        "ker_p_q_units": str(P.ker_p_q_units),
        "self_orthogonal": P.self_orthogonal,
        "self_dual": P.self_dual,
        "min_distance": P.min_distance,
        "bounds": [{"claim": b.claim, "verdict": b.verdict, "detail": b.detail} for b in bounds],
    }
    return doc, bounds


def cmd_inv(args) -> int:
    doc, bounds = inv_report(read_ghm(args.file))
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for key, val in doc.items():
            if key != "bounds":
                print(f"{key}\t{val}")
        print()
        print("claim\tverdict\tdetail")
        for b in bounds:
            print(f"{b.claim}\t{b.verdict}\t{b.detail}")
    return EXIT_VERDICT if any(b.verdict == FAIL for b in bounds) else EXIT_OK


def cmd_puncture(args) -> int:
    H = normalize(read_ghm(args.file))
    C = ghcode.c_code(H)
    basis = ghcode.kernel_q(C)
    ones = np.ones(C.n, dtype=np.int64)
    outside = [row for row in basis.rows if not _linalg.in_span(C.spec, ones[None, :], row)]
    if args.vector is not None:
        if not 0 <= args.vector < basis.dim:
            raise UsageError(f"kernel basis has {basis.dim} vectors; index {args.vector} out of range")
        v = basis.rows[args.vector]
    else:
        if not outside:
            print("kernel is spanned by the all-one vector; nothing to puncture", file=sys.stderr)
            return EXIT_VERDICT
        v = min(outside, key=lambda r: tuple(r.tolist()))
    try:
        P = ghcode.puncture_by_kernel(C, v)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    M = ghcode.gh_matrix_from_code(P)
    if M is None:
        print("punctured code is not a GH code", file=sys.stderr)
        return EXIT_VERDICT
    _emit_matrix(M, args.output)
    after = ghcode.kernel_q(P).dim
    print(f"vector\t{' '.join(map(str, v.tolist()))}", file=sys.stderr)
    print(f"length\t{C.n} -> {P.n}", file=sys.stderr)
    print(f"kernel\t{basis.dim} -> {after}", file=sys.stderr)
    return EXIT_OK


def _record_for(path: Path) -> CatalogRecord:
    return CatalogRecord.from_profile(path.name, profile(read_ghm(path)))


def cmd_catalog(args) -> int:
    directory = Path(args.dir)
    if args.action == "add":
        directory.mkdir(parents=True, exist_ok=True)
        records = {r.file: r for r in load_index(directory)}
        sources = [Path(f) for f in args.files] or sorted(directory.glob("*.ghm"))
        for src in sources:
            dest = directory / src.name
            if src.resolve() != dest.resolve():
                if dest.exists() and dest.read_bytes() != src.read_bytes():
                    raise UsageError(f"{dest} already exists with different content")
                shutil.copyfile(src, dest)
            records[dest.name] = _record_for(dest)
            print(f"added\t{dest.name}")
        store_index(directory, list(records.values()))
        return EXIT_OK
    records = sorted(load_index(directory), key=CatalogRecord.sort_key)
    if args.action == "list":
        sys.stdout.write((directory / "index.tsv").read_text() if records else "")
        if args.plot:
            from .plotting import rank_kernel_grid

            for q, n in sorted({(r.q, r.n) for r in records}):
                pairs = [(r.rank, r.ker) for r in records if (r.q, r.n) == (q, n)]
                path = _figure_path(args.plot)
                if len({(r.q, r.n) for r in records}) > 1:
                    path = path.with_name(f"{path.stem}_q{q}_n{n}{path.suffix}")
                rank_kernel_grid(pairs, path, title=f"GF({q}), n = {n}")
                print(f"figure\t{path}", file=sys.stderr)
        return EXIT_OK
    groups = defaultdict(list)
    for r in records:
        groups[r.profile_key()].append(r.file)
    print("group\tq\tn\trank\tker\trank_p\tker_p\tself_orthogonal\tmin_distance\tfiles")
    for i, (key, files) in enumerate(sorted(groups.items()), 1):
        q, n, rank, ker, rank_p, ker_p, so, md = key
        print(f"{i}\t{q}\t{n}\t{rank}\t{ker}\t{rank_p}\t{ker_p}\t{'yes' if so else 'no'}\t{md}\t{','.join(files)}")
    return EXIT_OK


def cmd_verify_claims(args) -> int:
    tally, made = run_claims(_field(args.q), args.h)
    sys.stdout.write(tally.format())
    for line in tally.failures:
        print(f"FAIL {line}", file=sys.stderr)
    if args.plot:
        from .plotting import rank_kernel_grid, verdict_bars

        path = _figure_path(args.plot)
        verdict_bars({c: tally.counts[c] for c in tally.counts}, path, title=f"claims, q={args.q}, h={args.h}")
        top = [(m.profile.rank, m.profile.ker) for m in made if m.matrix.n == args.q**args.h]
        grid = path.with_name(f"{path.stem}_rank_kernel{path.suffix}")
        rank_kernel_grid(top, grid, title=f"constructed H({args.q}, {args.q}^{args.h - 1})")
        print(f"figure\t{path}\nfigure\t{grid}", file=sys.stderr)
    return EXIT_OK if tally.ok else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a GH matrix")
    gsub = gen.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("sylvester")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--t", type=int, required=True)
    g.add_argument("-o", "--output")
    g = gsub.add_parser("kron")
    g.add_argument("-H", required=True, help="outer matrix file")
    g.add_argument("-B", required=True, help="inner matrix file, or comma-separated list")
    g.add_argument("-o", "--output")
    g = gsub.add_parser("target")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--h", type=int, required=True)
    g.add_argument("--kernel", type=int, required=True)
    g.add_argument("--rank", type=int)
    g.add_argument("--seed", help="GH matrix H(q, s) file for lengths q^h * s")
    g.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="test the GH property")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("inv", help="rank/kernel profile and bound verdicts")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("puncture", help="puncture C_H on the ones of a kernel vector")
    p.add_argument("file")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--vector", type=int, help="index into the kernel basis")
    how.add_argument("--auto", action="store_true", help="least kernel basis vector outside <1> (default)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_puncture)

    p = sub.add_parser("catalog", help="maintain a directory of .ghm files")
    p.add_argument("action", choices=["add", "list", "dedup"])
    p.add_argument("dir")
    p.add_argument("files", nargs="*", help="files to add (default: every .ghm in DIR)")
    p.add_argument("--plot", help="write a rank/kernel figure (list only)")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-claims", help="sweep the constructions and tally every claim")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--plot", help="write verdict and rank/kernel figures")
    p.set_defaults(func=cmd_verify_claims)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except cons.InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except InvalidGhError as exc:
        print(f"invalid GH matrix: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except (UsageError, GhmFormatError, MalformedMatrixError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
