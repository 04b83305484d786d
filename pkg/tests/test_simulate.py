from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minpay import currency as cur
from minpay.changemaking import repr_table
from minpay.errors import DomainError, TooFewSteps
from minpay.payment import greedy_tender_payment, minimal_payment
from minpay.simulate import (
    PriceModel,
    coin_count_stats,
    draw_prices,
    expected_avg_coins,
    merge_stats,
    run,
    run_prices,
    run_stepwise,
    stationary_distribution_check,
    strategy_purse_sizes,
    triangular_quantile,
)

JPY = cur.builtin("JPY")
USD = cur.builtin("USD")
MODEL6 = cur.builtin("MODEL6")


def test_rng_is_pinned():
    # frozen from numpy.random.PCG64; changes here break golden outputs
    assert draw_prices(JPY, PriceModel.uniform(), 8, 42).tolist() == [90, 774, 655, 439, 434, 859, 86, 698]
    assert draw_prices(JPY, PriceModel.triangular(250), 8, 42).tolist() == [
        589, 352, 675, 524, 154, 865, 577, 600,
    ]


def test_deterministic_runs():
    a = run(USD, PriceModel.uniform(), 5000, 9)
    b = run(USD, PriceModel.uniform(), 5000, 9)
    c = run(USD, PriceModel.uniform(), 5000, 10)
    assert a.same_as(b)
    assert not a.same_as(c)


@pytest.mark.parametrize("name", ["JPY", "USD", "MODEL6", "SEK", "BINARY(4)"])
def test_vectorised_matches_stepwise(name):
    c = cur.builtin(name)
    r = run(c, PriceModel.uniform(), 3000, 5)
    assert r.same_as(run_stepwise(c, r.prices))


def test_vectorised_matches_stepwise_across_chunks(monkeypatch):
    from minpay import simulate

    monkeypatch.setattr(simulate, "CHUNK", 97)
    prices = draw_prices(JPY, PriceModel.triangular(100), 1000, 3)
    prices[::50] = 0
    r = run_prices(JPY, prices)
    assert r.same_as(run_stepwise(JPY, prices))
    assert r.digit_violations == 0


def test_model6_purse_states_are_the_twelve_amounts():
    r = run(MODEL6, PriceModel.uniform(), 10**5, 1)
    table = repr_table(MODEL6)
    assert set(r.purse_values.tolist()) == set(range(12))
    assert set(r.purse_sizes.tolist()) <= {int(n) for n in table.min_count}
    assert r.final_purse == table[int(r.purse_values[-1])]


def test_price_equal_to_banknote_leaves_purse_empty():
    r = run(JPY, PriceModel.constant(1000), 1, 0)
    assert r.change_values.tolist() == [0]
    assert r.final_purse.size == 0
    stats = coin_count_stats(run(USD, PriceModel.constant(100), 500, 0))
    assert stats.mean == 0 and stats.max == 0


def test_uniform_prices_cover_one_to_banknote():
    p = draw_prices(MODEL6, PriceModel.uniform(), 20000, 4)
    assert p.min() == 1 and p.max() == 12


def test_uniform_prices_respect_gcd():
    even = cur.CurrencySpec("even", (6, 4, 2), 12)
    p = draw_prices(even, PriceModel.uniform(), 1000, 4)
    assert set(p.tolist()) == {2, 4, 6, 8, 10, 12}


@pytest.mark.parametrize("peak", [0, 250, 500, 1000])
def test_triangular_prices_in_range(peak):
    p = draw_prices(JPY, PriceModel.triangular(peak), 20000, 4)
    assert p.min() >= 1 and p.max() <= 1000
    # mean of triangular(0, B, m) is (B + m) / 3
    assert abs(p.mean() - (1000 + peak) / 3) < 5


def test_triangular_quantile_matches_cdf():
    u = np.linspace(0, 1, 101)
    x = triangular_quantile(u, 0.0, 10.0, 3.0)
    cdf = np.where(x < 3, x**2 / (10 * 3), 1 - (10 - x) ** 2 / (10 * 7))
    assert np.allclose(cdf, u)


def test_price_model_errors():
    with pytest.raises(DomainError):
        PriceModel("lognormal")
    with pytest.raises(DomainError):
        PriceModel("triangular")
    with pytest.raises(DomainError):
        draw_prices(JPY, PriceModel.triangular(2000), 5, 0)
    with pytest.raises(DomainError):
        run(JPY, PriceModel.uniform(), 0, 0)
    with pytest.raises(DomainError):
        run_prices(JPY, [-5])


def test_expected_avg_coins_exact():
    assert expected_avg_coins(MODEL6) == 2
    assert expected_avg_coins(JPY) == Fraction(15, 2)
    assert expected_avg_coins(USD) == Fraction(21, 5)


@pytest.mark.parametrize("name", ["MODEL6", "JPY", "SEK", "BINARY(6)", "GEOMETRIC(5,3)"])
def test_expected_avg_paths_agree(name):
    c = cur.builtin(name)
    assert expected_avg_coins(c, "digits") == expected_avg_coins(c, "table")


def test_expected_avg_digits_rejects_usd():
    with pytest.raises(DomainError):
        expected_avg_coins(USD, "digits")


def test_model6_simulated_mean():
    stats = coin_count_stats(run(MODEL6, PriceModel.uniform(), 10**5, 2))
    assert abs(float(stats.mean) - 2) < 0.05
    assert stats.max == 4
    assert sum(stats.histogram.values()) == 10**5


@pytest.mark.parametrize("name", ["MODEL6", "USD", "SEK", "JPY", "BINARY(4)", "GEOMETRIC(3,3)"])
def test_mean_within_three_standard_errors(name):
    # residues are iid uniform under uniform prices, so the iid SE is exact
    c = cur.builtin(name)
    counts = repr_table(c).min_count[list(c.amounts())].astype(float)
    sd = counts.std()
    T = 10**5
    r = run(c, PriceModel.uniform(), T, 123)
    mean = float(coin_count_stats(r).mean)
    assert abs(mean - float(expected_avg_coins(c))) <= 3 * sd / T**0.5


def test_stationarity():
    r = run(MODEL6, PriceModel.uniform(), 10**5, 8)
    check = stationary_distribution_check(r)
    assert check.uniform_ok and check.dof == 11
    with pytest.raises(TooFewSteps):
        stationary_distribution_check(run(JPY, PriceModel.uniform(), 5000, 8))


def test_stationarity_detects_non_uniform():
    r = run(MODEL6, PriceModel.constant(1), 1200, 0)
    r.purse_values[:] = 3
    assert not stationary_distribution_check(r).uniform_ok


def test_merge_stats():
    a = coin_count_stats(run(USD, PriceModel.uniform(), 1000, 1))
    b = coin_count_stats(run(USD, PriceModel.uniform(), 3000, 2))
    m = merge_stats([a, b], [1000, 3000])
    assert m.mean == (a.mean * 1000 + b.mean * 3000) / 4000
    assert sum(m.histogram.values()) == 4000


def test_every_visited_purse_is_table_entry():
    r = run(USD, PriceModel.uniform(), 20000, 77)
    table = repr_table(USD)
    assert ((r.purse_values >= 0) & (r.purse_values < 100)).all()
    assert np.array_equal(r.purse_sizes, table.min_count[r.purse_values])
    assert r.change_violations == 0


def test_minimal_strategy_beats_greedy_tender_pathwise():
    prices = draw_prices(JPY, PriceModel.uniform(), 3000, 31)
    minimal = strategy_purse_sizes(JPY, prices, minimal_payment)
    greedy = strategy_purse_sizes(JPY, prices, greedy_tender_payment)
    assert (greedy >= minimal).all()
    assert greedy.mean() > minimal.mean()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 3000), min_size=1, max_size=60))
def test_run_prices_matches_stepwise_property(prices):
    assert run_prices(JPY, prices).same_as(run_stepwise(JPY, prices))
