"""Least-coin representations of amounts below the banknote.

The retailer's rule is to hand back change with as few coins as possible.
``repr_table`` precomputes that representation for every amount in
``[0, banknote)`` once per currency; everything downstream is a table lookup.
Ties between equally short representations are broken towards larger coins.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .currency import CurrencySpec
from .errors import GreedyStuck, NotMultipleOfGcd, OutOfRange

UNREACHABLE = -1


@dataclass(frozen=True)
class CoinVector:
    """Coin counts aligned with ``coins`` (largest denomination first)."""

    coins: tuple[int, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(n) for n in self.counts))
        if len(self.counts) != len(self.coins):
            raise ValueError("counts and coins differ in length")
        if any(n < 0 for n in self.counts):
            raise ValueError(f"negative coin count in {self.counts}")

    @classmethod
    def zeros(cls, currency: CurrencySpec) -> CoinVector:
        return cls(currency.coins, (0,) * currency.levels)

    @classmethod
    def of(cls, currency: CurrencySpec, counts: Iterable[int]) -> CoinVector:
        return cls(currency.coins, tuple(counts))

    @property
    def value(self) -> int:
        return sum(n * c for n, c in zip(self.counts, self.coins))

    @property
    def size(self) -> int:
        return sum(self.counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __add__(self, other: CoinVector) -> CoinVector:
        return CoinVector(self.coins, tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: CoinVector) -> CoinVector:
        return CoinVector(self.coins, tuple(a - b for a, b in zip(self, other)))

    def describe(self) -> str:
        parts = [f"{n}x{c}" for n, c in zip(self.counts, self.coins) if n]
        return " + ".join(parts) if parts else "nothing"


@dataclass(frozen=True, eq=False)
class ReprTable:
    """Least-coin representation of every amount in ``[0, banknote)``.

    ``min_count[a]`` is ``UNREACHABLE`` for amounts the coins cannot form
    (non-multiples of the gcd). ``vectors[a]`` holds the counts.
    """

    currency: CurrencySpec
    min_count: np.ndarray
    vectors: np.ndarray

    def __getitem__(self, amount: int) -> CoinVector:
        if self.min_count[amount] == UNREACHABLE:
            raise NotMultipleOfGcd(f"{amount} is not representable in {self.currency.name}")
        return CoinVector(self.currency.coins, tuple(self.vectors[amount].tolist()))

    def __len__(self) -> int:
        return len(self.min_count)

    def representable(self) -> np.ndarray:
        return np.flatnonzero(self.min_count != UNREACHABLE)

    def entries(self) -> Iterator[tuple[int, CoinVector]]:
        for a in self.representable():
            yield int(a), self[int(a)]


def least_coin_arrays(
    coins: Sequence[int], limit: int, allowed: Sequence[bool] | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Min coin counts and tie-broken vectors for amounts ``0..limit-1``.

    Only denominations flagged in ``allowed`` may be used. Among the
    shortest representations the one with lexicographically greatest
    counts (largest coin first) wins.
    """
    return _least_coin_arrays(tuple(coins), int(limit), tuple(allowed or (True,) * len(coins)))


@lru_cache(maxsize=256)
def _least_coin_arrays(coins, limit, allowed):
    k = len(coins)
    inf = limit + 1
    # suffix[i][a]: fewest coins forming a using only coins[i:]
    suffix = [[inf] * limit for _ in range(k + 1)]
    suffix[k][0] = 0
    for i in reversed(range(k)):
        below, row, d = suffix[i + 1], suffix[i], coins[i]
        row[:] = below
        if not allowed[i]:
            continue
        for a in range(d, limit):
            cand = row[a - d] + 1
            if cand < row[a]:
                row[a] = cand

    min_count = np.full(limit, UNREACHABLE, dtype=np.int64)
    vectors = np.zeros((limit, k), dtype=np.int64)
    for a in range(limit):
        best = suffix[0][a]
        if best >= inf:
            continue
        min_count[a] = best
        rest = a
        for i, d in enumerate(coins):
            need = suffix[i][rest]
            below = suffix[i + 1]
            c = rest // d if allowed[i] else 0
            while below[rest - c * d] != need - c:
                c -= 1
            vectors[a, i] = c
            rest -= c * d
    min_count.setflags(write=False)
    vectors.setflags(write=False)
    return min_count, vectors


@lru_cache(maxsize=64)
def repr_table(currency: CurrencySpec) -> ReprTable:
    min_count, vectors = least_coin_arrays(currency.coins, currency.banknote)
    return ReprTable(currency, min_count, vectors)


def _check_amount(amount: int, currency: CurrencySpec) -> None:
    if not 0 <= amount < currency.banknote:
        raise OutOfRange(f"amount {amount} outside [0, {currency.banknote})")
    if amount % currency.gcd:
        raise NotMultipleOfGcd(f"amount {amount} is not a multiple of {currency.gcd}")


def min_repr(amount: int, currency: CurrencySpec) -> CoinVector:
    _check_amount(amount, currency)
    return repr_table(currency)[amount]


def greedy_repr(amount: int, currency: CurrencySpec) -> CoinVector:
    _check_amount(amount, currency)
    counts = []
    rest = amount
    for c in currency.coins:
        counts.append(rest // c)
        rest %= c
    if rest:
        raise GreedyStuck(rest)
    return CoinVector(currency.coins, tuple(counts))


def is_canonical(currency: CurrencySpec) -> bool:
    """True when greedy descent is optimal for every amount below the banknote."""
    table = repr_table(currency)
    for a in currency.amounts():
        try:
            g = greedy_repr(a, currency)
        except GreedyStuck:
            return False
        if g.size != table.min_count[a]:
            return False
    return True


def counterexamples(currency: CurrencySpec) -> list[int]:
    """Amounts where greedy is stuck or uses more coins than necessary."""
    table = repr_table(currency)
    bad = []
    for a in currency.amounts():
        try:
            if greedy_repr(a, currency).size != table.min_count[a]:
                bad.append(a)
        except GreedyStuck:
            bad.append(a)
    return bad
