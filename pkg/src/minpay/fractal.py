"""Delay plots of the change series and the lattice they are confined to.

For a multiplicable currency, the change counts at every denomination level
satisfy ``c_i(t) + c_i(t+1) <= ratio_i - 1``, so the pairs of consecutive
change values fall inside a staircase-shaped subset of the
``banknote x banknote`` lattice. ``admissible_set`` builds that subset from
the digit condition; ``admissible_set_recursive`` builds it by repeatedly
replacing each block with its lower-left staircase of sub-blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .changemaking import repr_table
from .currency import CurrencySpec, classify, ratios
from .errors import EmptySet, NotMultiplicable, ScaleOverflow, SeriesTooShort


@dataclass(frozen=True)
class DelayPlot:
    points: frozenset[tuple[int, int]]
    size: int  # coordinates lie in [0, size)
    source: str = "simulated"

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point) -> bool:
        return tuple(point) in self.points

    def array(self) -> np.ndarray:
        """Points as an ``(n, 2)`` integer array in lexicographic order."""
        if not self.points:
            return np.zeros((0, 2), dtype=np.int64)
        return np.array(sorted(self.points), dtype=np.int64)

    def issubset(self, other: DelayPlot) -> bool:
        return self.points <= other.points

    def transpose(self) -> DelayPlot:
        return DelayPlot(frozenset((y, x) for x, y in self.points), self.size, self.source)


def _from_codes(codes: np.ndarray, size: int, source: str) -> DelayPlot:
    codes = np.unique(codes)
    xs, ys = np.divmod(codes, size)
    return DelayPlot(frozenset(zip(xs.tolist(), ys.tolist())), size, source)


def delay_plot_series(z, size: int) -> DelayPlot:
    z = np.asarray(z, dtype=np.int64)
    if len(z) < 2:
        raise SeriesTooShort("a delay plot needs at least two values")
    return _from_codes(z[:-1] * size + z[1:], size, "simulated")


def delay_plot(run) -> DelayPlot:
    """``{(z(t), z(t+1))}`` for the change values of a simulation run."""
    return delay_plot_series(run.change_values, run.currency.banknote)


def visit_counts(z, size: int) -> np.ndarray:
    """``counts[x, y]``: how often the pair ``(z(t), z(t+1)) = (x, y)`` occurred."""
    z = np.asarray(z, dtype=np.int64)
    if len(z) < 2:
        raise SeriesTooShort("a delay plot needs at least two values")
    codes = np.bincount(z[:-1] * size + z[1:], minlength=size * size)
    return codes.reshape(size, size)


def _require_multiplicable(currency: CurrencySpec) -> None:
    if not classify(currency).multiplicable:
        raise NotMultiplicable(f"{currency.name} is not multiplicable")


def digit_mask(currency: CurrencySpec, bounds=None) -> np.ndarray:
    """Boolean ``B x B`` matrix of pairs passing the per-level digit test.

    ``bounds`` defaults to ``ratio_i - 1``. Non-representable amounts are
    never admissible.
    """
    table = repr_table(currency)
    B = currency.banknote
    if bounds is None:
        bounds = [r - 1 for r in ratios(currency)]
    ok = np.zeros((B, B), dtype=bool)
    reach = table.min_count >= 0
    ok[np.ix_(reach, reach)] = True
    digits = table.vectors
    for i, bound in enumerate(bounds):
        col = digits[:, i]
        ok &= (col[:, None] + col[None, :]) <= bound
    return ok


def admissible_set(currency: CurrencySpec) -> DelayPlot:
    _require_multiplicable(currency)
    xs, ys = np.nonzero(digit_mask(currency))
    return DelayPlot(frozenset(zip(xs.tolist(), ys.tolist())), currency.banknote, "predicted")


def staircase_blocks(currency: CurrencySpec) -> list[np.ndarray]:
    """Block origins after each subdivision level, starting with the whole square."""
    _require_multiplicable(currency)
    origins = np.zeros((1, 2), dtype=np.int64)
    stages = [origins]
    for r, coin in zip(ratios(currency), currency.coins):
        offsets = np.array([(a, b) for a in range(r) for b in range(r - a)], dtype=np.int64)
        origins = (origins[:, None, :] + coin * offsets[None, :, :]).reshape(-1, 2)
        stages.append(origins)
    return stages


def admissible_set_recursive(currency: CurrencySpec) -> DelayPlot:
    """Staircase substitution down to blocks the size of the smallest coin."""
    origins = staircase_blocks(currency)[-1]
    return DelayPlot(
        frozenset(map(tuple, origins.tolist())), currency.banknote, "predicted"
    )


def violations(plot: DelayPlot, reference: DelayPlot) -> set[tuple[int, int]]:
    return set(plot.points - reference.points)


def naive_digit_violations(plot: DelayPlot, currency: CurrencySpec) -> int:
    """Points breaking the digit test with bounds ``gap // coin - 1``.

    For non-multiplicable currencies the gaps are not integral and the
    staircase picture does not apply; this counts how badly it fails.
    """
    mask = digit_mask(currency)
    arr = plot.array()
    if len(arr) == 0:
        return 0
    return int((~mask[arr[:, 0], arr[:, 1]]).sum())


def predicted_dimension(r: int) -> float:
    """Similarity dimension of the staircase set for coins growing by ``r``."""
    if r < 2:
        raise ValueError("ratio must be at least 2")
    return 1.0 + math.log((r + 1) / 2) / math.log(r)


@dataclass(frozen=True)
class BoxCount:
    sizes: tuple[int, ...]
    counts: tuple[int, ...]
    slope: float


def box_count_dimension(points: DelayPlot, base: int, levels: int) -> BoxCount:
    """Box counts on origin-anchored grids of side ``base**k``, ``k = 0..levels``.

    The slope is the least-squares fit of ``ln count`` against ``ln(1/side)``.
    """
    if len(points) == 0:
        raise EmptySet("no points to count")
    if base < 2 or levels < 1:
        raise ValueError("need base >= 2 and levels >= 1")
    if base**levels > points.size:
        raise ScaleOverflow(f"{base}**{levels} exceeds the lattice side {points.size}")
    arr = points.array()
    sizes, counts = [], []
    for k in range(levels + 1):
        side = base**k
        boxes = np.unique((arr[:, 0] // side) * (points.size // side + 1) + arr[:, 1] // side)
        sizes.append(side)
        counts.append(len(boxes))
    x = -np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    slope = float(np.polyfit(x, y, 1)[0])
    return BoxCount(tuple(sizes), tuple(counts), slope)
