"""CSV emission and parsing for sweep results.

Schema: header ``kbar,phi_d,kicks,energy,method``; floats printed with 17
significant digits (lossless for IEEE double round-trips); rows in canonical
order (kicks-major, then method, then phi_d, then kbar ascending); ``\\n``
newlines; UTF-8.
"""

from __future__ import annotations

from typing import List

from .errors import DomainError, KickedRotorError
from .result import Row, SweepResult

HEADER = "kbar,phi_d,kicks,energy,method"


def format_rows(result: SweepResult) -> str:
    """Render the CSV document as a string (header plus one line per row)."""
    lines = [HEADER]
    for r in result.rows:
        lines.append(f"{r.kbar:.17g},{r.phi_d:.17g},{r.kicks:d},"
                     f"{r.energy:.17g},{r.method}")
    return "\n".join(lines) + "\n"


def emit_csv(result: SweepResult, path: str) -> None:
    """Write the result's rows to ``path``; empty results yield a header-only file."""
    text = format_rows(result)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise KickedRotorError(f"cannot write CSV to {path!r}: {exc}") from exc


def parse_csv_text(text: str) -> List[Row]:
    """Invert :func:`format_rows`; round-trips every row exactly."""
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        raise DomainError("csv", f"expected header {HEADER!r}")
    rows: List[Row] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise DomainError("csv", f"line {lineno}: expected 5 fields, got {len(parts)}")
        try:
            rows.append(Row(kbar=float(parts[0]), phi_d=float(parts[1]),
                            kicks=int(parts[2]), energy=float(parts[3]),
                            method=parts[4]))
        except ValueError as exc:
            raise DomainError("csv", f"line {lineno}: {exc}") from None
    return rows


def parse_csv(path: str) -> List[Row]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_csv_text(fh.read())
    except OSError as exc:
        raise KickedRotorError(f"cannot read CSV from {path!r}: {exc}") from exc
