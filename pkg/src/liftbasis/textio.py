"""Text formats.

Dense matrix::

    2 3
    1 0 4
    -2 1 0

Sparse stream: one row per line as ``col:value`` pairs (an empty line is a
zero row); a line holding a single ``.`` ends a finite stream.  Lines
starting with ``#`` are ignored in both formats.

Lift document (written by ``lift``, read by ``verify``): keyword lines
``modulus p nu``, ``input r c`` and ``lifted r c`` each followed by a dense
block, ``units ...``, ``pivots ...`` and optional verification lines.
The structured (JSON) variant carries the same fields; see README.
"""

from __future__ import annotations

import json
from typing import IO, Iterable, Iterator, Sequence

from .arith import Modulus
from .errors import FormatError
from .matrix import IntMatrix, RowStream, SparseRow


def _content_lines(lines: Iterable[str]) -> Iterator[str]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


def _ints(line: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise FormatError(f"expected integers, got {line!r}") from None


def format_matrix(m: IntMatrix) -> str:
    lines = [f"{m.nrows} {m.ncols}"]
    lines += [" ".join(str(x) for x in row) for row in m.rows()]
    return "\n".join(lines) + "\n"


def _read_block(it: Iterator[str], header: Sequence[int]) -> IntMatrix:
    if len(header) != 2 or min(header) < 0:
        raise FormatError(f"bad matrix header {header}")
    r, c = header
    if c == 0:
        # zero-width rows are written as blank lines, which the reader skips
        return IntMatrix([[] for _ in range(r)], ncols=0)
    rows = []
    for i in range(r):
        try:
            row = _ints(next(it))
        except StopIteration:
            raise FormatError(f"matrix ended after {i} of {r} rows") from None
        if len(row) != c:
            raise FormatError(f"row {i} has {len(row)} entries, expected {c}")
        rows.append(row)
    return IntMatrix(rows, ncols=c)


def parse_matrix(text: str) -> IntMatrix:
    it = _content_lines(text.splitlines())
    try:
        header = _ints(next(it))
    except StopIteration:
        raise FormatError("empty matrix text") from None
    m = _read_block(it, header)
    extra = next(it, None)
    if extra is not None:
        raise FormatError(f"trailing data after matrix: {extra!r}")
    return m


def parse_sparse_row(line: str) -> SparseRow:
    entries = []
    for tok in line.split():
        col, sep, val = tok.partition(":")
        if not sep:
            raise FormatError(f"expected col:value, got {tok!r}")
        try:
            entries.append((int(col), int(val)))
        except ValueError:
            raise FormatError(f"bad sparse entry {tok!r}") from None
    try:
        return SparseRow(entries)
    except IndexError as exc:
        raise FormatError(str(exc)) from None


def format_sparse_row(row: SparseRow) -> str:
    return " ".join(f"{c}:{v}" for c, v in row.items())


def iter_stream_rows(lines: Iterable[str]) -> Iterator[SparseRow]:
    """Yield rows until a ``.`` line; running out of lines first is an error."""
    for line in lines:
        line = line.strip()
        if line.startswith("#"):
            continue
        if line == ".":
            return
        yield parse_sparse_row(line)
    raise FormatError("stream ended without the '.' terminator")


def read_stream(handle: IO[str] | Iterable[str], finite: bool = True) -> RowStream:
    return RowStream(iter_stream_rows(handle), finite=finite)


def format_stream(rows: Iterable[SparseRow], finite: bool = True) -> str:
    out = [format_sparse_row(r) for r in rows]
    if finite:
        out.append(".")
    return "\n".join(out) + "\n"


def _bool(x: bool) -> str:
    return "true" if x else "false"


def format_report_lines(report) -> list[str]:
    lines = [
        f"verification {'ok' if report.ok else 'FAILED'}",
        "congruence_ok " + " ".join(_bool(x) for x in report.congruence_ok),
        f"unimodular_ok {_bool(report.unimodular_ok)}",
        f"basis_mod_q_ok {_bool(report.basis_mod_q_ok)}",
        f"units_ok {_bool(report.units_ok)}",
    ]
    lines += [f"detail {d}" for d in report.details]
    return lines


def format_lift_document(input: IntMatrix, lifted: IntMatrix, units, pivots, mod: Modulus, report=None) -> str:
    parts = [f"modulus {mod.p} {mod.nu}", "input " + format_matrix(input).rstrip()]
    parts.append("lifted " + format_matrix(lifted).rstrip())
    parts.append("units " + " ".join(str(u) for u in units))
    parts.append("pivots " + " ".join(str(j) for j in pivots))
    if report is not None:
        parts += format_report_lines(report)
    return "\n".join(parts) + "\n"


def lift_document_json(input: IntMatrix, lifted: IntMatrix, units, pivots, mod: Modulus, report=None, **extra) -> str:
    doc = {
        "modulus": {"p": mod.p, "nu": mod.nu, "q": mod.q},
        "input": input.tolist(),
        "lifted": lifted.tolist(),
        "units": list(units),
        "pivots": list(pivots),
        "verification": report.as_dict() if report is not None else None,
    }
    doc.update(extra)
    return json.dumps(doc) + "\n"


def parse_lift_document(text: str) -> dict:
    """Read a lift document (text or JSON) into a dict with keys
    ``modulus`` (Modulus), ``input``, ``lifted`` (IntMatrix), ``units``,
    ``pivots`` (lists of int)."""
    if text.lstrip().startswith("{"):
        try:
            raw = json.loads(text)
            mod = Modulus(raw["modulus"]["p"], raw["modulus"]["nu"])
            ncols = len(raw["input"][0]) if raw["input"] else 0
            return {
                "modulus": mod,
                "input": IntMatrix(raw["input"], ncols=ncols),
                "lifted": IntMatrix(raw["lifted"], ncols=ncols),
                "units": [int(u) for u in raw["units"]],
                "pivots": [int(j) for j in raw["pivots"]],
            }
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"bad structured lift document: {exc}") from None

    doc: dict = {}
    it = _content_lines(text.splitlines())
    for line in it:
        key, _, rest = line.partition(" ")
        if key == "modulus":
            p, nu = _ints(rest)
            doc["modulus"] = Modulus(p, nu)
        elif key in ("input", "lifted"):
            doc[key] = _read_block(it, _ints(rest))
        elif key in ("units", "pivots"):
            doc[key] = _ints(rest)
        elif key in ("verification", "congruence_ok", "unimodular_ok", "basis_mod_q_ok", "units_ok", "detail",
                     "loops", "stabilized_at"):
            continue
        else:
            raise FormatError(f"unknown lift document line {line!r}")
    missing = {"input", "lifted", "units"} - doc.keys()
    if missing:
        raise FormatError(f"lift document lacks {sorted(missing)}")
    return doc
