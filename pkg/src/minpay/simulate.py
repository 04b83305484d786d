"""Seeded shopping simulations and coin-count statistics.

Random numbers come from numpy's ``PCG64`` bit generator seeded with the
run's integer seed (``numpy.random.Generator(numpy.random.PCG64(seed))``).
Prices are drawn in one batch before any payment is made, so a run is fully
determined by ``(currency, price model, steps, seed)``.

Because the purse always holds the least-coin representation of its value,
the whole run is a function of the residue walk
``v(t) = (v(t-1) - price(t)) mod banknote``; ``run`` evaluates it with
array operations. ``run_stepwise`` replays the same prices one
``minimal_payment`` at a time and serves as its cross-check.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy import stats as _stats

from .changemaking import CoinVector, repr_table
from .currency import CurrencySpec, classify, ratios
from .errors import DomainError, TooFewSteps, TransactionInvariantError
from .payment import minimal_payment

RNG_ALGORITHM = "numpy.random.PCG64"
CHUNK = 1 << 18


@dataclass(frozen=True)
class PriceModel:
    """Price distribution. ``kind`` is ``uniform``, ``triangular`` or ``constant``.

    uniform: integers on ``[1, banknote]`` (in steps of the coin gcd).
    triangular: continuous triangular density on ``[0, banknote]`` with mode
    ``peak``, sampled by inverse CDF and rounded up into ``[1, banknote]``.
    constant: always ``price``.
    """

    kind: str = "uniform"
    peak: Optional[float] = None
    price: Optional[int] = None

    @classmethod
    def uniform(cls) -> PriceModel:
        return cls("uniform")

    @classmethod
    def triangular(cls, peak: float) -> PriceModel:
        return cls("triangular", peak=float(peak))

    @classmethod
    def constant(cls, price: int) -> PriceModel:
        return cls("constant", price=int(price))

    def __post_init__(self):
        if self.kind not in ("uniform", "triangular", "constant"):
            raise DomainError(f"unknown price model {self.kind!r}")
        if self.kind == "triangular" and self.peak is None:
            raise DomainError("triangular prices need a peak")
        if self.kind == "constant" and (self.price is None or self.price < 0):
            raise DomainError("constant prices need a non-negative price")

    def check(self, currency: CurrencySpec) -> None:
        if self.kind == "constant" and self.price % currency.gcd:
            raise DomainError(f"price {self.price} is not a multiple of {currency.gcd}")
        if self.kind == "triangular" and not 0 <= self.peak <= currency.banknote:
            raise DomainError(f"peak {self.peak:g} outside [0, {currency.banknote}]")

    def draw(self, rng: np.random.Generator, currency: CurrencySpec, size: int) -> np.ndarray:
        self.check(currency)
        B, g = currency.banknote, currency.gcd
        if self.kind == "uniform":
            return g * rng.integers(1, B // g, size=size, endpoint=True, dtype=np.int64)
        if self.kind == "constant":
            return np.full(size, self.price, dtype=np.int64)
        u = rng.random(size)
        x = triangular_quantile(u, 0.0, float(B), self.peak)
        prices = g * np.ceil(x / g).astype(np.int64)
        return np.clip(prices, g, B)

    def describe(self) -> str:
        if self.kind == "triangular":
            return f"triangular(peak={self.peak:g})"
        if self.kind == "constant":
            return f"constant({self.price})"
        return "uniform"


def triangular_quantile(u: np.ndarray, lo: float, hi: float, mode: float) -> np.ndarray:
    """Inverse CDF of the triangular distribution on ``[lo, hi]``."""
    width = hi - lo
    split = (mode - lo) / width
    left = lo + np.sqrt(u * width * (mode - lo))
    right = hi - np.sqrt((1.0 - u) * width * (hi - mode))
    return np.where(u < split, left, right)


@dataclass(eq=False)
class SimulationRun:
    currency: CurrencySpec
    model: PriceModel
    seed: Optional[int]
    steps: int
    prices: np.ndarray
    change_values: np.ndarray  # z(t): value of the change received at step t
    purse_sizes: np.ndarray
    purse_values: np.ndarray
    final_purse: CoinVector
    change_violations: int = 0  # change not least-coin
    digit_violations: int = 0  # consecutive change counts above ratio - 1
    extra: dict = field(default_factory=dict)

    def same_as(self, other: SimulationRun) -> bool:
        return (
            self.steps == other.steps
            and self.final_purse == other.final_purse
            and all(
                np.array_equal(getattr(self, f), getattr(other, f))
                for f in ("prices", "change_values", "purse_sizes", "purse_values")
            )
        )


def draw_prices(currency: CurrencySpec, model: PriceModel, steps: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    return model.draw(rng, currency, steps)


def run(currency: CurrencySpec, model: PriceModel, steps: int, seed: int) -> SimulationRun:
    if steps < 1:
        raise DomainError("a run needs at least one step")
    prices = draw_prices(currency, model, steps, seed)
    result = run_prices(currency, prices, model=model)
    result.seed = seed
    return result


def run_prices(
    currency: CurrencySpec, prices: np.ndarray, model: Optional[PriceModel] = None
) -> SimulationRun:
    """Minimal payments for a given price stream, starting from an empty purse."""
    prices = np.asarray(prices, dtype=np.int64)
    if prices.ndim != 1 or len(prices) == 0:
        raise DomainError("prices must be a non-empty 1-d sequence")
    if (prices < 0).any():
        raise DomainError("negative price in stream")
    if (prices % currency.gcd).any():
        raise DomainError(f"prices must be multiples of {currency.gcd}")
    B = currency.banknote
    table = repr_table(currency)
    coins = np.asarray(currency.coins, dtype=np.int64)
    vectors, min_count = table.vectors, table.min_count
    multiplicable = classify(currency).multiplicable
    bound = np.asarray(ratios(currency), dtype=np.int64) - 1

    T = len(prices)
    change_values = np.empty(T, dtype=np.int64)
    purse_sizes = np.empty(T, dtype=np.int64)
    purse_values = np.empty(T, dtype=np.int64)
    value = 0
    last_change = np.zeros((1, currency.levels), dtype=np.int64)
    change_bad = digit_bad = 0

    for start in range(0, T, CHUNK):
        p = prices[start : start + CHUNK]
        v = (value - np.cumsum(p)) % B
        prev = np.concatenate(([value], v[:-1]))
        # a zero price leaves the purse untouched, the residue rule gives the same
        before, after = vectors[prev], vectors[v]
        paid = np.maximum(before - after, 0)
        change = np.maximum(after - before, 0)
        z = change @ coins
        tender = paid @ coins
        notes, rem = np.divmod(p - tender + z, B)
        if (rem != 0).any() or (notes < 0).any():
            raise TransactionInvariantError("money balance broken in simulation")
        if ((paid > 0) & (change > 0)).any():
            raise TransactionInvariantError("paid and change share a denomination")
        change_bad += int((change.sum(axis=1) != min_count[z]).sum())
        if multiplicable:
            pairs = np.concatenate((last_change, change))
            digit_bad += int(((pairs[:-1] + pairs[1:]) > bound).any(axis=1).sum())
        change_values[start : start + len(p)] = z
        purse_values[start : start + len(p)] = v
        purse_sizes[start : start + len(p)] = min_count[v]
        value = int(v[-1])
        last_change = change[-1:]

    return SimulationRun(
        currency=currency,
        model=model,
        seed=None,
        steps=T,
        prices=prices,
        change_values=change_values,
        purse_sizes=purse_sizes,
        purse_values=purse_values,
        final_purse=table[value],
        change_violations=change_bad,
        digit_violations=digit_bad,
    )


def transactions(currency: CurrencySpec, prices, strategy: Callable = minimal_payment):
    """Yield one ``Transaction`` per price, starting from an empty purse."""
    purse = CoinVector.zeros(currency)
    for price in prices:
        tx = strategy(purse, int(price), currency)
        yield tx
        purse = tx.after


def run_stepwise(currency: CurrencySpec, prices, model: Optional[PriceModel] = None) -> SimulationRun:
    """Reference loop over ``minimal_payment``; every transaction is checked."""
    z, sizes, values = [], [], []
    purse = CoinVector.zeros(currency)
    for tx in transactions(currency, prices):
        tx.check(currency)
        z.append(tx.change.value)
        sizes.append(tx.after.size)
        values.append(tx.after.value)
        purse = tx.after
    return SimulationRun(
        currency=currency,
        model=model,
        seed=None,
        steps=len(z),
        prices=np.asarray(prices, dtype=np.int64),
        change_values=np.asarray(z, dtype=np.int64),
        purse_sizes=np.asarray(sizes, dtype=np.int64),
        purse_values=np.asarray(values, dtype=np.int64),
        final_purse=purse,
    )


def strategy_purse_sizes(currency: CurrencySpec, prices, strategy: Callable) -> np.ndarray:
    return np.fromiter(
        (tx.after.size for tx in transactions(currency, prices, strategy)),
        dtype=np.int64,
        count=len(prices),
    )


@dataclass(frozen=True)
class CoinStats:
    mean: Fraction
    max: int
    histogram: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "mean": float(self.mean),
            "mean_exact": f"{self.mean.numerator}/{self.mean.denominator}",
            "max": self.max,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def coin_count_stats(run: SimulationRun) -> CoinStats:
    sizes = run.purse_sizes
    if len(sizes) == 0:
        raise DomainError("empty run")
    counts = np.bincount(sizes)
    hist = {int(k): int(n) for k, n in enumerate(counts) if n}
    return CoinStats(Fraction(int(sizes.sum()), len(sizes)), int(sizes.max()), hist)


def merge_stats(parts: list[CoinStats], weights: list[int]) -> CoinStats:
    hist: Counter = Counter()
    for s in parts:
        hist.update(s.histogram)
    total = sum(weights)
    mean = sum((s.mean * w for s, w in zip(parts, weights)), Fraction(0)) / total
    return CoinStats(mean, max(s.max for s in parts), dict(hist))


def expected_avg_coins(currency: CurrencySpec, method: str = "auto") -> Fraction:
    """Exact long-run mean purse size when every residue is equally likely.

    ``method="digits"`` uses the mixed-radix shortcut, sum of (ratio - 1)/2
    per level, valid only for multiplicable currencies. ``"table"`` averages
    the least-coin counts over all purse values. ``"auto"`` picks digits when
    it applies.
    """
    if method == "auto":
        method = "digits" if classify(currency).multiplicable else "table"
    if method == "digits":
        if not classify(currency).multiplicable:
            raise DomainError(f"{currency.name} is not multiplicable")
        return sum((Fraction(r - 1, 2) for r in ratios(currency)), Fraction(0))
    counts = repr_table(currency).min_count
    amounts = list(currency.amounts())
    return Fraction(int(counts[amounts].sum()), len(amounts))


@dataclass(frozen=True)
class UniformityCheck:
    chi2: float
    dof: int
    p_value: float
    uniform_ok: bool


def stationary_distribution_check(run: SimulationRun, alpha: float = 0.001) -> UniformityCheck:
    """Chi-squared test that purse values are uniform on the reachable amounts."""
    currency = run.currency
    B, g = currency.banknote, currency.gcd
    if run.steps < 100 * B:
        raise TooFewSteps(f"need at least {100 * B} steps, got {run.steps}")
    observed = np.bincount(run.purse_values, minlength=B)[::g].astype(float)
    expected = run.steps / len(observed)
    chi2 = float(((observed - expected) ** 2 / expected).sum())
    dof = len(observed) - 1
    p = float(_stats.chi2.sf(chi2, dof))
    return UniformityCheck(chi2, dof, p, p >= alpha)


def standard_error(run: SimulationRun) -> float:
    """Naive standard error of the mean purse size (iid approximation)."""
    return float(np.std(run.purse_sizes)) / math.sqrt(run.steps)
