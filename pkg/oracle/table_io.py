"""
Cayley-table file format.

    cayley 1
    <n>
    <n lines of n whitespace-separated 0-based indices>
    # label <i> <name>      (optional, any number)
"""

from pathlib import Path
from typing import List, Union

import numpy as np

from errors import DocumentParseError
from oracle.cayley import CayleyTable, validate_loop

FORMAT_TAG = "cayley 1"


def write_table(t: CayleyTable) -> str:
    lines = [FORMAT_TAG, str(t.n)]
    lines.extend(" ".join(str(int(v)) for v in row) for row in t.table)
    lines.extend(f"# label {i} {name}" for i, name in enumerate(t.labels) if name)
    return "\n".join(lines) + "\n"


def read_table(text: str, validate: bool = True) -> CayleyTable:
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_TAG:
        raise DocumentParseError(f"Line 1: expected '{FORMAT_TAG}'")
    if len(lines) < 2:
        raise DocumentParseError("Line 2: missing table order")
    try:
        n = int(lines[1].strip())
    except ValueError:
        raise DocumentParseError(f"Line 2: invalid table order {lines[1]!r}")
    if n < 1:
        raise DocumentParseError(f"Line 2: table order must be positive, got {n}")
    if len(lines) < 2 + n:
        raise DocumentParseError(f"Truncated table: expected {n} rows, found {max(len(lines) - 2, 0)}")

    rows: List[List[int]] = []
    for number, line in enumerate(lines[2:2 + n], start=3):
        try:
            row = [int(token) for token in line.split()]
        except ValueError:
            raise DocumentParseError(f"Line {number}: non-integer entry")
        if len(row) != n:
            raise DocumentParseError(f"Line {number}: expected {n} entries, found {len(row)}")
        rows.append(row)

    labels = [""] * n
    has_labels = False
    for number, line in enumerate(lines[2 + n:], start=3 + n):
        stripped = line.strip()
        if not stripped:
            continue
        parts = stripped.split(maxsplit=3)
        if parts[:2] != ["#", "label"] or len(parts) != 4:
            if stripped.startswith("#"):
                continue
            raise DocumentParseError(f"Line {number}: unexpected content after the table")
        try:
            index = int(parts[2])
        except ValueError:
            raise DocumentParseError(f"Line {number}: invalid label index {parts[2]!r}")
        if not 0 <= index < n:
            raise DocumentParseError(f"Line {number}: label index {index} outside 0..{n - 1}")
        labels[index] = parts[3]
        has_labels = True

    table = CayleyTable(np.array(rows), tuple(labels) if has_labels else ())
    if validate:
        check = validate_loop(table)
        if not check.passed:
            cell = " ".join(check.witness or [])
            raise DocumentParseError(f"Not a loop table at {cell}: {check.detail}")
    return table


def save_table(t: CayleyTable, path: Union[str, Path]) -> None:
    Path(path).write_text(write_table(t))
