"""The ``.ghm`` text format and the tab-separated catalog index.

A ``.ghm`` file::

    ghm 1
    q=4 p=2 e=2 lambda=1 n=4
    poly=1,1,1
    0 0 0 0
    ...

The ``poly`` line is written only for e > 1 and is required there.  Body
entries are element codes (base-p coefficient encoding).
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import asdict, dataclass
from pathlib import Path

from .gf import FieldError, field_new
from .ghmatrix import GhMatrix, MalformedMatrixError
from .invariants import InvariantProfile


class GhmFormatError(ValueError):
    pass


def write_ghm(M: GhMatrix) -> bytes:
    spec = M.spec
    lines = ["ghm 1", f"q={spec.q} p={spec.p} e={spec.e} lambda={M.lam} n={M.n}"]
    if spec.e > 1:
        lines.append("poly=" + ",".join(map(str, spec.poly)))
    lines.extend(" ".join(map(str, row)) for row in M.rows.tolist())
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_ghm(data: bytes | str) -> GhMatrix:
    """Parse a ``.ghm`` document; shape is validated, GH-ness is not."""
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise GhmFormatError("file is not ASCII") from exc
    lines = [ln.strip() for ln in data.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0].split() != ["ghm", "1"]:
        raise GhmFormatError("missing or unsupported header; expected 'ghm 1'")
    if len(lines) < 2:
        raise GhmFormatError("missing parameter line")
    try:
        params = dict(tok.split("=", 1) for tok in lines[1].split())
        q, p, e = int(params["q"]), int(params["p"]), int(params["e"])
        lam, n = int(params["lambda"]), int(params["n"])
    except (KeyError, ValueError) as exc:
        raise GhmFormatError(f"bad parameter line: {lines[1]!r}") from exc
    if q != p**e:
        raise GhmFormatError(f"q={q} is not p^e = {p}^{e}")
    if n != q * lam:
        raise GhmFormatError(f"n={n} is not q*lambda = {q * lam}")
    body = lines[2:]
    poly = None
    if body and body[0].startswith("poly="):
        try:
            poly = [int(c) for c in body[0][5:].split(",")]
        except ValueError as exc:
            raise GhmFormatError(f"bad poly line: {body[0]!r}") from exc
        body = body[1:]
    elif e > 1:
        raise GhmFormatError("poly line is required when e > 1")
    if len(body) != n:
        raise GhmFormatError(f"expected {n} rows, found {len(body)}")
    rows = []
    for i, ln in enumerate(body, 1):
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError as exc:
            raise GhmFormatError(f"row {i}: non-integer entry") from exc
        if len(row) != n:
            raise GhmFormatError(f"row {i}: expected {n} entries, found {len(row)}")
        bad = [x for x in row if not 0 <= x < q]
        if bad:
            raise GhmFormatError(f"row {i}: entry {bad[0]} outside [0, {q - 1}]")
        rows.append(row)
    try:
        spec = field_new(p, e, poly)
        return GhMatrix(spec, rows)
    except (FieldError, MalformedMatrixError) as exc:
        raise GhmFormatError(str(exc)) from exc


def read_ghm(path: str | os.PathLike) -> GhMatrix:
    return parse_ghm(Path(path).read_bytes())


def save_ghm(M: GhMatrix, path: str | os.PathLike) -> None:
    Path(path).write_bytes(write_ghm(M))


# -- catalog ----------------------------------------------------------------

INDEX_NAME = "index.tsv"


@dataclass(frozen=True)
class CatalogRecord:
    file: str
    q: int
    lam: int
    n: int
    rank: int
    ker: int
    rank_p: int
    ker_p: int
    self_orthogonal: bool
    min_distance: int

    @classmethod
    def from_profile(cls, file: str, P: InvariantProfile) -> "CatalogRecord":
        return cls(file, P.q, P.lam, P.n, P.rank, P.ker, P.rank_p, P.ker_p,
                   P.self_orthogonal, P.min_distance)

    def sort_key(self) -> tuple:
        return (self.q, self.n, self.rank, self.ker, self.file)

    def profile_key(self) -> tuple:
        return (self.q, self.n, self.rank, self.ker, self.rank_p, self.ker_p,
                self.self_orthogonal, self.min_distance)


COLUMNS = ["file", "q", "lambda", "n", "rank", "ker", "rank_p", "ker_p",
           "self_orthogonal", "min_distance"]


def format_index(records: list[CatalogRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(COLUMNS)
    for rec in sorted(records, key=CatalogRecord.sort_key):
        row = list(asdict(rec).values())
        row[8] = "yes" if rec.self_orthogonal else "no"
        w.writerow(row)
    return buf.getvalue()


def parse_index(text: str) -> list[CatalogRecord]:
    reader = csv.reader(io.StringIO(text), delimiter="\t")
    header = next(reader, None)
    if header != COLUMNS:
        raise GhmFormatError(f"catalog index header mismatch: {header}")
    out = []
    for row in reader:
        if not row:
            continue
        vals: list = [row[0]] + [int(x) for x in row[1:8]] + [row[8] == "yes", int(row[9])]
        out.append(CatalogRecord(*vals))
    names = [r.file for r in out]
    if len(set(names)) != len(names):
        raise GhmFormatError("catalog index has duplicate file names")
    return out


def load_index(directory: str | os.PathLike) -> list[CatalogRecord]:
    path = Path(directory) / INDEX_NAME
    if not path.exists():
        return []
    return parse_index(path.read_text())


def store_index(directory: str | os.PathLike, records: list[CatalogRecord]) -> None:
    (Path(directory) / INDEX_NAME).write_text(format_index(records))

