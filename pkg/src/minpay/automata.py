"""Rule-60 cellular automaton, Pascal's triangle mod r, and grid comparison.

Grids are left-justified: row ``t`` is time (or the Pascal row index) and
column ``n`` is space, so rule 60 reads ``s[t+1, n] = s[t, n] ^ s[t, n-1]``
and row ``t`` of Pascal's triangle occupies columns ``0..t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import GridNotFromRule60


@dataclass(frozen=True, eq=False)
class BinaryGrid:
    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.uint8)
        if cells.ndim != 2 or 0 in cells.shape:
            raise ValueError("a grid needs positive dimensions")
        if cells.max(initial=0) > 1:
            raise ValueError("grid cells must be 0 or 1")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    def crop(self, rows: int, cols: Optional[int] = None) -> BinaryGrid:
        cols = rows if cols is None else cols
        out = np.zeros((rows, cols), dtype=np.uint8)
        r, c = min(rows, self.rows), min(cols, self.cols)
        out[:r, :c] = self.cells[:r, :c]
        return BinaryGrid(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryGrid):
            return NotImplemented
        return compare_grids(self, other).equal

    def __str__(self) -> str:
        return "\n".join("".join("#" if v else "." for v in row) for row in self.cells)


# other elementary rules known to draw discrete Sierpinski gaskets
SIERPINSKI_RULES = (60, 90, 102, 22, 154)


def rule_table(rule: int) -> dict[tuple[int, int, int], int]:
    """Wolfram numbering: bit ``4l + 2c + r`` of ``rule`` is the next state."""
    if not 0 <= rule <= 255:
        raise ValueError("elementary rules are numbered 0..255")
    return {
        (l, c, r): (rule >> (4 * l + 2 * c + r)) & 1
        for l in (0, 1)
        for c in (0, 1)
        for r in (0, 1)
    }


def evolve(rule: int, initial: Sequence[int], steps: int) -> BinaryGrid:
    """Run an elementary CA with fixed zero boundaries for ``steps`` rows."""
    table = np.array([(rule >> k) & 1 for k in range(8)], dtype=np.uint8)
    row = np.asarray(initial, dtype=np.uint8)
    out = np.zeros((steps, len(row)), dtype=np.uint8)
    for t in range(steps):
        out[t] = row
        left = np.concatenate(([0], row[:-1]))
        right = np.concatenate((row[1:], [0]))
        row = table[4 * left + 2 * row + right]
    return BinaryGrid(out)


def rule60(steps: int, initial: Optional[Sequence[int]] = None) -> BinaryGrid:
    """``steps x steps`` evolution of rule 60 from a single 1 in column 0."""
    if steps < 1:
        raise ValueError("need at least one step")
    if initial is None:
        initial = np.zeros(steps, dtype=np.uint8)
        initial[0] = 1
    return evolve(60, initial, steps)


def pascal_mod(r: int, rows: int) -> BinaryGrid:
    """Cell ``(n, k)`` is 1 iff ``binomial(n, k)`` is not divisible by ``r``."""
    if r < 2 or rows < 1:
        raise ValueError("need r >= 2 and rows >= 1")
    out = np.zeros((rows, rows), dtype=np.uint8)
    row = np.zeros(rows, dtype=np.int64)
    row[0] = 1
    for n in range(rows):
        out[n] = row != 0
        row[1:] = (row[1:] + row[:-1]) % r
    return BinaryGrid(out)


def map_delayplot_to_triangle(points) -> BinaryGrid:
    """Shear ``(x, y)`` onto ``(x + y, x)``, turning the plot into a triangle."""
    arr = points.array()
    if len(arr) == 0:
        return BinaryGrid(np.zeros((1, 1), dtype=np.uint8))
    rows = int((arr[:, 0] + arr[:, 1]).max()) + 1
    out = np.zeros((rows, rows), dtype=np.uint8)
    out[arr[:, 0] + arr[:, 1], arr[:, 0]] = 1
    return BinaryGrid(out)


@dataclass(frozen=True)
class GridDiff:
    equal: bool
    diff_count: int


def compare_grids(a: BinaryGrid, b: BinaryGrid) -> GridDiff:
    """Cellwise comparison after zero-padding both grids to a common shape."""
    rows, cols = max(a.rows, b.rows), max(a.cols, b.cols)
    diff = int((a.crop(rows, cols).cells != b.crop(rows, cols).cells).sum())
    return GridDiff(diff == 0, diff)


STAIRCASE = np.array([[1, 0], [1, 1]], dtype=np.uint8)


def subdivide_grid(g: BinaryGrid) -> BinaryGrid:
    """Replace each 1 by the 2x2 staircase and each 0 by a 2x2 block of zeros."""
    if g.rows != g.cols:
        raise GridNotFromRule60(f"expected a square rule-60 grid, got {g.rows}x{g.cols}")
    return BinaryGrid(np.kron(g.cells, STAIRCASE))
