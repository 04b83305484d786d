"""One payment step: the minimal-payment transition and its brute-force check.

The shopper holds coins worth less than one banknote. Paying ``price`` always
leaves a purse worth ``(before - price) mod banknote``, whatever coins change
hands, so the best the shopper can do is to end with the least-coin
representation of that residue. ``minimal_payment`` jumps straight there:
coins that decrease are paid, coins that increase come back as change.
``full_search_payment`` enumerates every legal tender instead and is kept
as an independent oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .changemaking import CoinVector, least_coin_arrays, repr_table
from .currency import CurrencySpec
from .errors import InvalidPurse, PriceNegative, PriceNotMultipleOfGcd, TransactionInvariantError


@dataclass(frozen=True)
class Transaction:
    price: int
    paid: CoinVector
    banknotes: int  # net banknotes handed over
    change: CoinVector
    before: CoinVector
    after: CoinVector

    def check(self, currency: CurrencySpec, disjoint: bool = True) -> None:
        """Raise ``TransactionInvariantError`` if the step is not a legal payment."""
        if disjoint and any(p and c for p, c in zip(self.paid, self.change)):
            raise TransactionInvariantError(f"paid and change share a denomination: {self}")
        if any(p > b for p, b in zip(self.paid, self.before)):
            raise TransactionInvariantError("paid more coins than the purse held")
        if self.after != self.before - self.paid + self.change:
            raise TransactionInvariantError("coins not conserved")
        if self.banknotes < 0:
            raise TransactionInvariantError("negative banknote count")
        balance = self.paid.value + self.banknotes * currency.banknote - self.price
        if self.change.value != balance:
            raise TransactionInvariantError(
                f"change {self.change.value} != tendered - price {balance}"
            )
        if self.change.value >= currency.banknote:
            raise TransactionInvariantError("coin change worth a banknote or more")
        if self.change.size != repr_table(currency).min_count[self.change.value]:
            raise TransactionInvariantError("change is not a least-coin representation")


def _check_inputs(purse: CoinVector, price: int, currency: CurrencySpec, bounded: bool = True):
    if price < 0:
        raise PriceNegative(f"price {price} is negative")
    if price % currency.gcd:
        raise PriceNotMultipleOfGcd(f"price {price} is not a multiple of {currency.gcd}")
    if purse.coins != currency.coins:
        raise InvalidPurse("purse denominations do not match the currency")
    if bounded and purse.value >= currency.banknote:
        raise InvalidPurse(f"purse worth {purse.value} holds a banknote's worth of coins")


def _identity(purse: CoinVector) -> Transaction:
    nothing = CoinVector(purse.coins, (0,) * len(purse))
    return Transaction(0, nothing, 0, nothing, purse, purse)


def minimal_payment(purse: CoinVector, price: int, currency: CurrencySpec) -> Transaction:
    _check_inputs(purse, price, currency)
    if price == 0:
        return _identity(purse)
    residue = (purse.value - price) % currency.banknote
    after = repr_table(currency)[residue]
    paid = CoinVector(purse.coins, tuple(max(b - a, 0) for b, a in zip(purse, after)))
    change = CoinVector(purse.coins, tuple(max(a - b, 0) for b, a in zip(purse, after)))
    banknotes, rem = divmod(price - paid.value + change.value, currency.banknote)
    assert rem == 0 and banknotes >= 0
    return Transaction(price, paid, banknotes, change, purse, after)


def full_search_payment(purse: CoinVector, price: int, currency: CurrencySpec) -> Transaction:
    """Best payment found by trying every coin subset and banknote count.

    Change must be a least-coin representation that avoids every
    denomination the shopper paid with. Among payments leaving the fewest
    coins, fewer coins paid and then fewer banknotes win.
    """
    _check_inputs(purse, price, currency)
    B = currency.banknote
    min_count = repr_table(currency).min_count
    best, best_key = None, None
    for counts in itertools.product(*(range(n + 1) for n in purse)):
        paid = CoinVector(purse.coins, counts)
        allowed = tuple(n == 0 for n in counts)
        restricted_count, restricted_vectors = least_coin_arrays(currency.coins, B, allowed)
        for k in range(math.ceil(price / B) + 2):
            tender = paid.value + k * B
            if tender < price:
                continue
            returned_notes, coin_value = divmod(tender - price, B)
            # condition (i): the retailer's change must be least-coin overall
            if restricted_count[coin_value] != min_count[coin_value]:
                continue
            after_size = purse.size - paid.size + int(min_count[coin_value])
            key = (after_size, paid.size, k)
            if best_key is None or key < best_key:
                change = CoinVector(purse.coins, tuple(restricted_vectors[coin_value].tolist()))
                best_key = key
                best = Transaction(
                    price, paid, k - returned_notes, change, purse, purse - paid + change
                )
    assert best is not None, "paying with banknotes alone is always legal"
    return best


def greedy_tender_payment(purse: CoinVector, price: int, currency: CurrencySpec) -> Transaction:
    """Baseline strategy: tender the cheapest coin subset covering the price.

    If the purse cannot cover the price the shopper pays with banknotes only.
    Change is the retailer's least-coin representation of the excess. The
    purse is unbounded here, unlike under the minimal strategy.
    """
    _check_inputs(purse, price, currency, bounded=False)
    B = currency.banknote
    table = repr_table(currency)
    if purse.value >= price:
        counts = _cheapest_cover(purse, price)
        paid = CoinVector(purse.coins, counts)
        notes = 0
    else:
        paid = CoinVector.zeros(currency)
        notes = -(-price // B)
    returned_notes, coin_value = divmod(paid.value + notes * B - price, B)
    change = table[coin_value]
    return Transaction(price, paid, notes - returned_notes, change, purse, purse - paid + change)


def _cheapest_cover(purse: CoinVector, price: int) -> tuple[int, ...]:
    # layers[i] is a bitset of the sums reachable with the first i denominations
    layers = [1]
    for d, n in zip(purse.coins, purse.counts):
        prev, cur = layers[-1], layers[-1]
        for j in range(1, n + 1):
            cur |= prev << (j * d)
        layers.append(cur)
    above = layers[-1] >> price
    target = price + (above & -above).bit_length() - 1
    counts = [0] * len(purse)
    for i in reversed(range(len(purse))):
        d = purse.coins[i]
        for j in range(purse.counts[i], -1, -1):
            rest = target - j * d
            if rest >= 0 and (layers[i] >> rest) & 1:
                counts[i] = j
                target = rest
                break
    assert target == 0
    return tuple(counts)
