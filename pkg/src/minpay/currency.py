"""Currency systems: validation, classification and the built-in catalogue.

All amounts are integers in minor units. A currency is a strictly descending
list of coin denominations plus the smallest banknote ``banknote``; larger
banknotes never matter because the shopper is assumed to hold as many of the
smallest one as needed.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Any, Mapping, Optional

from .errors import (
    BanknoteTooSmall,
    CurrencyError,
    GcdViolation,
    NonDescending,
    NonPositive,
    UnknownCurrency,
    UnrepresentableAmount,
)


@dataclass(frozen=True)
class CurrencySpec:
    name: str
    coins: tuple[int, ...]
    banknote: int

    def __post_init__(self):
        object.__setattr__(self, "coins", tuple(int(c) for c in self.coins))
        object.__setattr__(self, "banknote", int(self.banknote))
        _check(self)

    @property
    def gcd(self) -> int:
        return reduce(math.gcd, self.coins)

    @property
    def levels(self) -> int:
        return len(self.coins)

    def upper_bounds(self) -> tuple[int, ...]:
        """Next larger denomination for each coin; the banknote for the largest."""
        return (self.banknote,) + self.coins[:-1]

    def amounts(self) -> range:
        """Every amount a purse can hold: multiples of the gcd below the banknote."""
        return range(0, self.banknote, self.gcd)

    def to_dict(self) -> dict:
        return {"name": self.name, "coins": list(self.coins), "banknote": self.banknote}

    def __str__(self) -> str:
        coins = ", ".join(str(c) for c in self.coins)
        return f"{self.name} (banknote {self.banknote}; coins {coins})"


@dataclass(frozen=True)
class CurrencyClass:
    multiplicable: bool
    geometric_ratio: Optional[int]
    gcd: int


def _check(spec: CurrencySpec) -> None:
    coins, banknote = spec.coins, spec.banknote
    if not coins:
        raise CurrencyError("a currency needs at least one coin")
    if any(c <= 0 for c in coins) or banknote <= 0:
        raise NonPositive("denominations must be positive")
    if any(a <= b for a, b in zip(coins, coins[1:])):
        raise NonDescending(f"coins must be strictly descending, got {list(coins)}")
    if banknote <= coins[0]:
        raise BanknoteTooSmall(f"banknote {banknote} must exceed the largest coin {coins[0]}")
    g = spec.gcd
    if banknote % g:
        raise GcdViolation(f"banknote {banknote} is not a multiple of the coin gcd {g}")
    # Every coin is a multiple of g, so g itself is formable only if it is a
    # coin; once it is, every multiple of g is. The sweep is therefore
    # equivalent to checking the smallest coin.
    if coins[-1] != g:
        raise UnrepresentableAmount(g)


def validate(raw: Mapping[str, Any]) -> CurrencySpec:
    """Build a currency from a ``{"name", "coins", "banknote"}`` mapping."""
    try:
        coins = [int(c) for c in raw["coins"]]
        banknote = int(raw["banknote"])
    except KeyError as exc:
        raise CurrencyError(f"currency description lacks {exc.args[0]!r}") from None
    except (TypeError, ValueError):
        raise CurrencyError("coins and banknote must be integers") from None
    return CurrencySpec(str(raw.get("name", "custom")), tuple(coins), banknote)


def load(path: str | Path) -> CurrencySpec:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CurrencyError(f"{path}: not valid JSON ({exc.msg})") from None
    if not isinstance(raw, dict):
        raise CurrencyError(f"{path}: expected a JSON object")
    return validate(raw)


def classify(spec: CurrencySpec) -> CurrencyClass:
    coins, banknote, g = spec.coins, spec.banknote, spec.gcd
    multiplicable = all(upper % c == 0 for c, upper in zip(coins, spec.upper_bounds()))
    ratio = None
    if multiplicable:
        r = banknote // coins[0] if len(coins) == 1 else coins[-2] // coins[-1]
        n = len(coins)
        if r >= 2 and coins == tuple(g * r**i for i in reversed(range(n))) and banknote == g * r**n:
            ratio = r
    return CurrencyClass(multiplicable=multiplicable, geometric_ratio=ratio, gcd=g)


def ratios(spec: CurrencySpec) -> tuple[int, ...]:
    """Per-level ratio (next larger denomination) // coin, largest coin first.

    Exact for multiplicable currencies; for the rest this is the integer part
    of each denomination gap.
    """
    return tuple(upper // c for c, upper in zip(spec.coins, spec.upper_bounds()))


def binary(n: int) -> CurrencySpec:
    return geometric(2, n, name=f"BINARY({n})")


def geometric(r: int, n: int, name: Optional[str] = None) -> CurrencySpec:
    if r < 2 or n < 1:
        raise CurrencyError("geometric currencies need r >= 2 and n >= 1")
    coins = tuple(r**i for i in reversed(range(n)))
    return CurrencySpec(name or f"GEOMETRIC({r},{n})", coins, r**n)


_FIXED = {
    "JPY": ((500, 100, 50, 10, 5, 1), 1000),
    "KRW": ((500, 100, 50, 10, 5, 1), 1000),
    "USD": ((50, 25, 10, 5, 1), 100),
    # 50 ore is the minor unit: 10, 5, 1 krona and 50 ore coins; 20 krona bill
    "SEK": ((20, 10, 2, 1), 40),
    "MODEL6": ((6, 2, 1), 12),
}

BUILTIN_NAMES = tuple(_FIXED) + ("BINARY(n)", "GEOMETRIC(r,n)")

_PARAM = re.compile(r"^\s*(BINARY|GEOMETRIC)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$", re.I)


def builtin(name: str) -> CurrencySpec:
    """Look up a currency by name, e.g. ``"JPY"``, ``"BINARY(4)"``, ``"GEOMETRIC(3,5)"``."""
    key = name.strip().upper()
    if key in _FIXED:
        coins, banknote = _FIXED[key]
        return CurrencySpec(key, coins, banknote)
    m = _PARAM.match(name)
    if m:
        family, a, b = m.group(1).upper(), m.group(2), m.group(3)
        if family == "BINARY" and b is None:
            return binary(int(a))
        if family == "GEOMETRIC" and b is not None:
            return geometric(int(a), int(b))
    raise UnknownCurrency(f"unknown currency {name!r}; known: {', '.join(BUILTIN_NAMES)}")
