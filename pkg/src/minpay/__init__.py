"""Minimal payment: keep the fewest coins in the purse after every purchase."""

from .automata import BinaryGrid, compare_grids, map_delayplot_to_triangle, pascal_mod, rule60, subdivide_grid
from .changemaking import CoinVector, ReprTable, greedy_repr, is_canonical, min_repr, repr_table
from .currency import CurrencyClass, CurrencySpec, builtin, classify, validate
from .fractal import (
    DelayPlot,
    admissible_set,
    admissible_set_recursive,
    box_count_dimension,
    delay_plot,
    predicted_dimension,
)
from .payment import Transaction, full_search_payment, minimal_payment
from .simulate import (
    PriceModel,
    SimulationRun,
    coin_count_stats,
    expected_avg_coins,
    run,
    stationary_distribution_check,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryGrid", "compare_grids", "map_delayplot_to_triangle", "pascal_mod", "rule60",
    "subdivide_grid", "CoinVector", "ReprTable", "greedy_repr", "is_canonical", "min_repr",
    "repr_table", "CurrencyClass", "CurrencySpec", "builtin", "classify", "validate",
    "DelayPlot", "admissible_set", "admissible_set_recursive", "box_count_dimension",
    "delay_plot", "predicted_dimension", "Transaction", "full_search_payment",
    "minimal_payment", "PriceModel", "SimulationRun", "coin_count_stats",
    "expected_avg_coins", "run", "stationary_distribution_check",
]
