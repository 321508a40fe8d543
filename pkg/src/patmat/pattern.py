"""Dense pattern matrices over {0, *, ?} with semiring algebra.

A pattern matrix fixes, for every position, whether the entry is zero,
nonzero, or arbitrary.  The set of real matrices consistent with a pattern
is its pattern class.  Addition and multiplication of pattern matrices
(entrywise / semiring product) over-approximate the corresponding
operations on pattern-class members.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, TextParseError
from .symbols import QUEST, STAR, ZERO, Symbol, add_symbol, mul_symbol

__all__ = [
    "PatternMatrix",
    "identity_pattern",
    "hstack",
    "vstack",
    "parse_pattern_text",
]


@dataclass(frozen=True)
class PatternMatrix:
    """Immutable dense matrix of Symbols, stored row-major.

    Zero-sized dimensions are permitted; they arise as degenerate block
    components (for example a system with no states or no inputs).
    """

    rows: int
    cols: int
    entries: tuple[Symbol, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} pattern needs {self.rows * self.cols}"
                f" entries, got {len(self.entries)}"
            )
        if not all(isinstance(e, Symbol) for e in self.entries):
            raise TypeError("pattern entries must be Symbols")

    # -- construction ------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Symbol | str]]) -> "PatternMatrix":
        """Build from nested sequences of Symbols or '0'/'*'/'?' tokens."""
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        entries = tuple(
            e if isinstance(e, Symbol) else Symbol.from_token(e)
            for r in rows
            for e in r
        )
        return cls(nrows, ncols, entries)

    @classmethod
    def from_text(cls, text: str) -> "PatternMatrix":
        """Parse the whitespace-separated text format (see parse_pattern_text)."""
        return parse_pattern_text(text)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PatternMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def filled(cls, rows: int, cols: int, symbol: Symbol) -> "PatternMatrix":
        return cls(rows, cols, (symbol,) * (rows * cols))

    # -- access ------------------------------------------------------

    def __getitem__(self, index: tuple[int, int]) -> Symbol:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Symbol, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[Symbol, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_rows(self) -> list[list[Symbol]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # -- algebra -----------------------------------------------------

    def __add__(self, other: "PatternMatrix") -> "PatternMatrix":
        if not isinstance(other, PatternMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(
                f"cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols}"
            )
        entries = tuple(
            add_symbol(a, b) for a, b in zip(self.entries, other.entries)
        )
        return PatternMatrix(self.rows, self.cols, entries)

    def __matmul__(self, other: "PatternMatrix") -> "PatternMatrix":
        if not isinstance(other, PatternMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by"
                f" {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    acc = add_symbol(acc, mul_symbol(ri[k], other[k, j]))
                    if acc is QUEST:
                        break  # absorbing for addition
                out.append(acc)
        return PatternMatrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "PatternMatrix":
        entries = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return PatternMatrix(self.cols, self.rows, entries)

    # -- text format -------------------------------------------------

    def to_text(self) -> str:
        return "\n".join(" ".join(s.token for s in self.row(i)) for i in range(self.rows))

    def __str__(self) -> str:
        return self.to_text()


def identity_pattern(n: int) -> PatternMatrix:
    """n x n pattern with * on the diagonal and 0 elsewhere."""
    if n < 0:
        raise DimensionError(f"negative size {n}")
    entries = tuple(
        STAR if i == j else ZERO for i in range(n) for j in range(n)
    )
    return PatternMatrix(n, n, entries)


def hstack(blocks: Iterable[PatternMatrix]) -> PatternMatrix:
    """Concatenate blocks left to right; all row counts must agree."""
    blocks = list(blocks)
    if not blocks:
        raise DimensionError("hstack of no blocks")
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        shapes = ", ".join(f"{b.rows}x{b.cols}" for b in blocks)
        raise DimensionError(f"hstack row counts differ: {shapes}")
    entries = []
    for i in range(rows):
        for b in blocks:
            entries.extend(b.row(i))
    return PatternMatrix(rows, sum(b.cols for b in blocks), tuple(entries))


def vstack(blocks: Iterable[PatternMatrix]) -> PatternMatrix:
    """Concatenate blocks top to bottom; all column counts must agree."""
    blocks = list(blocks)
    if not blocks:
        raise DimensionError("vstack of no blocks")
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        shapes = ", ".join(f"{b.rows}x{b.cols}" for b in blocks)
        raise DimensionError(f"vstack column counts differ: {shapes}")
    entries = []
    for b in blocks:
        entries.extend(b.entries)
    return PatternMatrix(sum(b.rows for b in blocks), cols, tuple(entries))


def parse_pattern_text(text: str) -> PatternMatrix:
    """Parse the pattern text format.

    One row per line, entries are the tokens 0, * and ? separated by
    whitespace.  Blank lines and text after # are ignored.
    """
    rows: list[list[Symbol]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [Symbol.from_token(tok) for tok in line.split()]
        except ValueError as exc:
            raise TextParseError(str(exc), lineno) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise TextParseError(
                f"row has {len(row)} entries, expected {width}", lineno
            )
        rows.append(row)
    if not rows:
        raise TextParseError("no pattern rows found")
    return PatternMatrix.from_rows(rows)
