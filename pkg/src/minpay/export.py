"""Text formats: CSV series and point sets, JSON stats, PBM/PGM/SVG rasters.

Everything is plain text written with ``\\n`` line endings so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from typing import TextIO

import numpy as np

from .automata import BinaryGrid


def series_csv(run, out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["t", "price", "change_value", "purse_size"])
    for row in zip(range(run.steps), run.prices.tolist(), run.change_values.tolist(),
                   run.purse_sizes.tolist()):
        w.writerow(row)


def points_csv(plot, out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "y"])
    w.writerows(plot.array().tolist())


def read_points_csv(text: str) -> set[tuple[int, int]]:
    rows = list(csv.reader(io.StringIO(text)))
    return {(int(x), int(y)) for x, y in rows[1:]}


def stats_json(stats) -> str:
    return json.dumps(stats.to_dict(), indent=2, sort_keys=True) + "\n"


def plot_to_grid(plot) -> BinaryGrid:
    """Raster of a delay plot with ``y`` pointing up (row 0 is the top)."""
    cells = np.zeros((plot.size, plot.size), dtype=np.uint8)
    arr = plot.array()
    if len(arr):
        cells[plot.size - 1 - arr[:, 1], arr[:, 0]] = 1
    return BinaryGrid(cells)


def pbm(grid: BinaryGrid) -> str:
    lines = ["P1", f"{grid.cols} {grid.rows}"]
    lines.extend(" ".join(map(str, row)) for row in grid.cells.tolist())
    return "\n".join(lines) + "\n"


def read_pbm(text: str) -> BinaryGrid:
    tokens = [t for line in text.splitlines() if not line.startswith("#") for t in line.split()]
    if not tokens or tokens[0] != "P1":
        raise ValueError("not a plain PBM file")
    cols, rows = int(tokens[1]), int(tokens[2])
    bits = "".join(tokens[3:])
    if len(bits) != rows * cols:
        raise ValueError("PBM size does not match its header")
    return BinaryGrid(np.array([int(b) for b in bits], dtype=np.uint8).reshape(rows, cols))


def pgm(counts: np.ndarray) -> str:
    """Plain PGM of a non-negative integer matrix, e.g. delay-plot visit counts."""
    counts = np.asarray(counts, dtype=np.int64)
    top = max(int(counts.max(initial=0)), 1)
    lines = ["P2", f"{counts.shape[1]} {counts.shape[0]}", str(top)]
    lines.extend(" ".join(map(str, row)) for row in counts.tolist())
    return "\n".join(lines) + "\n"


def svg(grid: BinaryGrid, scale: int = 4) -> str:
    """Filled cells as unit squares."""
    w, h = grid.cols * scale, grid.rows * scale
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {grid.cols} {grid.rows}" shape-rendering="crispEdges">',
        f'<rect width="{grid.cols}" height="{grid.rows}" fill="white"/>',
    ]
    rows, cols = np.nonzero(grid.cells)
    for r, c in zip(rows.tolist(), cols.tolist()):
        parts.append(f'<rect x="{c}" y="{r}" width="1" height="1"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
