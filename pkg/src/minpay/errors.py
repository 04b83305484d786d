"""Exception hierarchy.

Everything raised for bad input or an impossible request derives from
``DomainError`` so the command line can map it to a single exit code.
"""


class DomainError(ValueError):
    pass


class CurrencyError(DomainError):
    pass


class NonDescending(CurrencyError):
    pass


class NonPositive(CurrencyError):
    pass


class BanknoteTooSmall(CurrencyError):
    pass


class GcdViolation(CurrencyError):
    pass


class UnrepresentableAmount(CurrencyError):
    def __init__(self, amount: int):
        super().__init__(f"amount {amount} cannot be formed from the coins")
        self.amount = amount


class UnknownCurrency(CurrencyError):
    pass


class NotMultiplicable(CurrencyError):
    pass


class OutOfRange(DomainError):
    pass


class NotMultipleOfGcd(DomainError):
    pass


class GreedyStuck(DomainError):
    def __init__(self, remaining: int):
        super().__init__(f"greedy descent stuck with {remaining} left")
        self.remaining = remaining


class PriceNegative(DomainError):
    pass


class PriceNotMultipleOfGcd(DomainError):
    pass


class InvalidPurse(DomainError):
    pass


class TransactionInvariantError(AssertionError):
    """A transaction broke conservation, disjointness or money balance."""


class TooFewSteps(DomainError):
    pass


class SeriesTooShort(DomainError):
    pass


class EmptySet(DomainError):
    pass


class ScaleOverflow(DomainError):
    pass


class GridNotFromRule60(DomainError):
    pass
