"""Minimal CSV tables with exact round-tripping.

Numbers are rendered in shortest round-trip form (Python's repr), rationals
as ``numerator/denominator``, booleans as ``true``/``false``.  Re-parsing a
rendered table reproduces the original cell values exactly, which is what
the golden-file style tests rely on.  Separator is always ``,`` and the
decimal point ``.`` regardless of locale.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError

__all__ = ["Cell", "CsvTable"]

Cell = int | float | Fraction | bool | str

_INT_RE = re.compile(r"^[+-]?\d+$")


def _render_cell(cell: Cell) -> str:
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, float):
        return repr(float(cell))  # normalizes float subclasses (numpy scalars)
    if isinstance(cell, (int, Fraction)):
        return str(int(cell)) if isinstance(cell, int) else str(cell)
    text = str(cell)
    if "," in text or "\n" in text:
        raise DomainError(f"cell value {text!r} would break the CSV layout")
    return text


def _parse_cell(text: str) -> Cell:
    if text == "true":
        return True
    if text == "false":
        return False
    if _INT_RE.match(text):
        return int(text)
    if "/" in text:
        try:
            return Fraction(text)
        except ValueError:
            return text
    try:
        return float(text)
    except ValueError:
        return text


@dataclass(frozen=True)
class CsvTable:
    header: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]

    def __init__(self, header: Iterable[str], rows: Iterable[Iterable[Cell]]):
        head = tuple(str(h) for h in header)
        body = tuple(tuple(row) for row in rows)
        for row in body:
            if len(row) != len(head):
                raise DomainError(
                    f"ragged table: row of length {len(row)} under {len(head)} columns"
                )
        object.__setattr__(self, "header", head)
        object.__setattr__(self, "rows", body)

    def render(self) -> str:
        lines = [",".join(self.header)]
        lines.extend(",".join(_render_cell(c) for c in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "CsvTable":
        lines = [line for line in text.splitlines() if line]
        if not lines:
            raise DomainError("empty CSV text")
        header = tuple(lines[0].split(","))
        rows = tuple(tuple(_parse_cell(c) for c in line.split(",")) for line in lines[1:])
        return cls(header=header, rows=rows)
