"""Brute-force references, kept independent of the package's algorithms."""

import itertools
from math import comb


def all_representations(coins, limit):
    """Every count vector (largest coin first) worth less than ``limit``."""
    out = {}

    def rec(i, value, counts):
        if i == len(coins):
            out.setdefault(value, []).append(tuple(counts))
            return
        n = 0
        while value + n * coins[i] < limit:
            rec(i + 1, value + n * coins[i], counts + [n])
            n += 1

    rec(0, 0, [])
    return out


def least_coin_sets(coins, limit):
    """amount -> (fewest coins, all shortest vectors)."""
    reps = all_representations(coins, limit)
    result = {}
    for value, vectors in reps.items():
        best = min(sum(v) for v in vectors)
        result[value] = (best, [v for v in vectors if sum(v) == best])
    return result


def digits_no_carry(x, y, r):
    while x or y:
        if x % r + y % r >= r:
            return False
        x //= r
        y //= r
    return True


def binom_grid(r, rows):
    return [[1 if k <= n and comb(n, k) % r else 0 for k in range(rows)] for n in range(rows)]


def pairs_satisfying(coins, banknote, digit_of):
    """Brute-force scan of the lattice against the per-level inequalities."""
    uppers = (banknote,) + tuple(coins[:-1])
    bounds = [u // c - 1 for c, u in zip(coins, uppers)]
    pts = set()
    for x, y in itertools.product(range(banknote), repeat=2):
        dx, dy = digit_of(x), digit_of(y)
        if all(a + b <= m for a, b, m in zip(dx, dy, bounds)):
            pts.add((x, y))
    return pts


def brute_force_best_purse(purse, price, coins, banknote, shortest=None):
    """Fewest coins left after any legal payment, by plain enumeration.

    Retailer change must be one of the shortest representations of the coin
    part of the excess, and must avoid every denomination paid.
    """
    if shortest is None:
        shortest = least_coin_sets(coins, banknote)
    best = None
    for paid in itertools.product(*(range(n + 1) for n in purse)):
        paid_value = sum(n * c for n, c in zip(paid, coins))
        for k in range(price // banknote + 3):
            tender = paid_value + k * banknote
            if tender < price:
                continue
            coin_value = (tender - price) % banknote
            _, options = shortest[coin_value]
            for change in options:
                if any(p and c for p, c in zip(paid, change)):
                    continue
                left = sum(purse) - sum(paid) + sum(change)
                best = left if best is None else min(best, left)
    return best
