"""Text, JSON, JSONL, and CSV serialization for ringoids.

The text layout is: a line with the carrier size n, then n rows for the
addition table, a blank line, then n rows for the multiplication table.
Lines starting with '#' carry provenance and are skipped on input.
"""

from __future__ import annotations

import csv
import json
import io

from .tables import CayleyTable, Ringoid, classify


class ParseError(ValueError):
    """Input rejection with a 1-based line/column position."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


def _data_lines(text: str):
    """Yield (lineno, stripped line) skipping blanks only at comments."""
    for i, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        yield i, raw


def _parse_row(lineno: int, raw: str, n: int) -> tuple[int, ...]:
    vals = []
    col = 1
    rest = raw
    for tok in raw.split():
        col = raw.index(tok, col - 1) + 1
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(lineno, col, f"expected an integer, got {tok!r}")
        if not 0 <= v < n:
            raise ParseError(lineno, col, f"entry {v} outside 0..{n - 1}")
        vals.append(v)
        col += len(tok)
    if len(vals) != n:
        raise ParseError(lineno, 1, f"expected {n} entries, got {len(vals)}")
    return tuple(vals)


def parse_tables_text(text: str) -> tuple[CayleyTable, CayleyTable]:
    """Read the two raw tables without checking distributivity."""
    lines = list(_data_lines(text))
    pos = 0
    while pos < len(lines) and not lines[pos][1].strip():
        pos += 1
    if pos == len(lines):
        raise ParseError(1, 1, "empty input")
    lineno, raw = lines[pos]
    tok = raw.split()
    if len(tok) != 1:
        raise ParseError(lineno, 1, "first line must be the carrier size")
    try:
        n = int(tok[0])
    except ValueError:
        raise ParseError(lineno, 1, f"carrier size must be an integer, got {tok[0]!r}")
    if n < 1:
        raise ParseError(lineno, 1, "carrier size must be positive")
    pos += 1

    def read_block() -> tuple[tuple[int, ...], ...]:
        nonlocal pos
        rows = []
        while pos < len(lines) and not lines[pos][1].strip():
            pos += 1
        for _ in range(n):
            if pos >= len(lines) or not lines[pos][1].strip():
                where = lines[pos - 1][0] + 1 if pos > 0 else 1
                raise ParseError(where, 1, f"expected {n} table rows")
            ln, raw = lines[pos]
            rows.append(_parse_row(ln, raw, n))
            pos += 1
        return tuple(rows)

    plus = read_block()
    times = read_block()
    while pos < len(lines):
        if lines[pos][1].strip():
            raise ParseError(lines[pos][0], 1, "trailing content after the two tables")
        pos += 1
    return CayleyTable(plus), CayleyTable(times)


def parse_text(text: str) -> Ringoid:
    plus, times = parse_tables_text(text)
    return Ringoid(plus, times)


def render_text(r: Ringoid, provenance: str | None = None) -> str:
    out = []
    if provenance:
        out.append(f"# {provenance}")
    out.append(str(r.n))
    out.extend(" ".join(str(v) for v in row) for row in r.plus.rows)
    out.append("")
    out.extend(" ".join(str(v) for v in row) for row in r.times.rows)
    return "\n".join(out) + "\n"


def _tables_from_obj(obj) -> tuple[CayleyTable, CayleyTable]:
    if not isinstance(obj, dict):
        raise ParseError(1, 1, "top-level JSON value must be an object")
    for key in ("n", "plus", "times"):
        if key not in obj:
            raise ParseError(1, 1, f"missing key {key!r}")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise ParseError(1, 1, "n must be a positive integer")
    tabs = []
    for key in ("plus", "times"):
        rows = obj[key]
        if (not isinstance(rows, list) or len(rows) != n
                or any(not isinstance(row, list) or len(row) != n for row in rows)):
            raise ParseError(1, 1, f"{key} must be an {n}x{n} array")
        for row in rows:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise ParseError(1, 1, f"{key} entry {v!r} outside 0..{n - 1}")
        tabs.append(CayleyTable(tuple(tuple(row) for row in rows)))
    return tabs[0], tabs[1]


def parse_tables_json(text: str) -> tuple[CayleyTable, CayleyTable]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, e.colno, e.msg)
    return _tables_from_obj(obj)


def parse_json(text: str) -> Ringoid:
    plus, times = parse_tables_json(text)
    return Ringoid(plus, times)


def render_json(r: Ringoid) -> str:
    obj = {
        "n": r.n,
        "plus": [list(row) for row in r.plus.rows],
        "times": [list(row) for row in r.times.rows],
    }
    return json.dumps(obj, separators=(",", ":"))


def looks_like_json(text: str) -> bool:
    for ch in text.lstrip():
        return ch == "{"
    return False


def parse_auto(text: str) -> tuple[CayleyTable, CayleyTable]:
    """Dispatch on the first non-blank character."""
    if looks_like_json(text):
        return parse_tables_json(text)
    return parse_tables_text(text)


def jsonl_record(r: Ringoid, canonical: bool = True) -> str:
    obj = {
        "n": r.n,
        "plus": [list(row) for row in r.plus.rows],
        "times": [list(row) for row in r.times.rows],
        "canonical": canonical,
        "flags": classify(r.plus, r.times).as_dict(),
    }
    return json.dumps(obj, separators=(",", ":"))


def write_jsonl(fp, ringoids, provenance: str | None = None) -> None:
    if provenance:
        fp.write(f"# {provenance}\n")
    for r in ringoids:
        fp.write(jsonl_record(r) + "\n")


def read_jsonl(fp) -> list[Ringoid]:
    out = []
    for lineno, raw in enumerate(fp, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(lineno, e.colno, e.msg)
        plus, times = _tables_from_obj(obj)
        out.append(Ringoid(plus, times))
    return out


CSV_FIELDS = ("order", "class", "filter", "count", "seconds")


def write_csv_summary(fp, rows, provenance: str | None = None) -> None:
    """rows: iterable of dicts keyed by CSV_FIELDS."""
    if provenance:
        fp.write(f"# {provenance}\n")
    w = csv.DictWriter(fp, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        row = dict(row)
        row["seconds"] = f"{float(row['seconds']):.3f}"
        w.writerow(row)


def read_csv_summary(text: str) -> list[dict]:
    body = "\n".join(l for l in text.splitlines() if not l.startswith("#"))
    out = []
    for row in csv.DictReader(io.StringIO(body)):
        row["order"] = int(row["order"])
        row["count"] = int(row["count"])
        row["seconds"] = float(row["seconds"])
        out.append(row)
    return out
