from math import comb

import numpy as np
import pytest

from minpay import currency as cur
from minpay.automata import (
    SIERPINSKI_RULES,
    BinaryGrid,
    compare_grids,
    evolve,
    map_delayplot_to_triangle,
    pascal_mod,
    rule60,
    rule_table,
    subdivide_grid,
)
from minpay.errors import GridNotFromRule60
from minpay.fractal import DelayPlot, admissible_set
from oracles import binom_grid


def test_rule60_first_rows():
    g = rule60(3).cells.tolist()
    assert g == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]


def test_rule60_xor_recurrence():
    g = rule60(40).cells.astype(int)
    for t in range(39):
        prev = np.concatenate(([0], g[t, :-1]))
        assert np.array_equal(g[t + 1], g[t] ^ prev)


def test_rule60_is_binomial_parity():
    g = rule60(256).cells
    for t in range(256):
        assert [int(v) for v in g[t, : t + 1]] == [comb(t, c) % 2 for c in range(t + 1)]


def test_rule60_zero_initial():
    assert not rule60(10, initial=[0] * 10).cells.any()


def test_rule60_row_weight():
    g = rule60(256).cells
    for t in range(256):
        assert int(g[t].sum()) == 2 ** bin(t).count("1")


def test_rule_table():
    t = rule_table(60)
    for (l, c, r), out in t.items():
        assert out == l ^ c
    assert rule_table(90)[(1, 0, 0)] == 1 and rule_table(90)[(1, 0, 1)] == 0
    with pytest.raises(ValueError):
        rule_table(256)


def test_rule90_centered_gasket():
    n = 32
    init = [0] * (2 * n + 1)
    init[n] = 1
    g = evolve(90, init, n).cells
    for t in range(n):
        for k in range(-t, t + 1):
            expected = comb(t, (t + k) // 2) % 2 if (t + k) % 2 == 0 else 0
            assert g[t, n + k] == expected


def test_sierpinski_rules_listed():
    assert 60 in SIERPINSKI_RULES and 90 in SIERPINSKI_RULES


@pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
def test_pascal_mod_matches_binomials(r):
    assert pascal_mod(r, 60).cells.tolist() == binom_grid(r, 60)


def test_pascal_column_zero():
    for r in (2, 3, 7, 10):
        assert pascal_mod(r, 50).cells[:, 0].all()


@pytest.mark.parametrize("rows", [1, 2, 17, 64, 512])
def test_rule60_equals_pascal2(rows):
    assert compare_grids(rule60(rows), pascal_mod(2, rows)).equal


@pytest.mark.parametrize("n", range(1, 9))
def test_binary_triangle_is_pascal2(n):
    grid = map_delayplot_to_triangle(admissible_set(cur.binary(n)))
    assert grid.rows == 2**n
    assert compare_grids(grid, pascal_mod(2, 2**n)).equal


def test_ternary_triangle_is_pascal3():
    grid = map_delayplot_to_triangle(admissible_set(cur.geometric(3, 4)))
    assert compare_grids(grid, pascal_mod(3, 81)).equal


def _mapped(r, rows):
    n = 1
    while r**n < rows:
        n += 1
    return map_delayplot_to_triangle(admissible_set(cur.geometric(r, n))).crop(rows)


@pytest.mark.parametrize("r", [2, 3, 5, 7])
def test_prime_moduli_agree(r):
    assert compare_grids(_mapped(r, 100), pascal_mod(r, 100)).equal


@pytest.mark.parametrize("r", [4, 6, 8, 9])
def test_composite_moduli_differ(r):
    assert compare_grids(_mapped(r, 100), pascal_mod(r, 100)).diff_count > 0


def test_map_single_point():
    grid = map_delayplot_to_triangle(DelayPlot(frozenset({(0, 0)}), 4))
    assert grid.cells.tolist() == [[1]]


def test_compare_pads_to_common_shape():
    a = BinaryGrid(np.ones((2, 2)))
    b = BinaryGrid(np.ones((3, 1)))
    d = compare_grids(a, b)
    assert not d.equal and d.diff_count == 3


@pytest.mark.parametrize("n", [1, 4, 8, 16, 32])
def test_subdivision_is_scale_map(n):
    assert compare_grids(subdivide_grid(rule60(n)), rule60(2 * n)).equal


def test_subdivision_base_cases():
    assert subdivide_grid(BinaryGrid(np.ones((1, 1)))).cells.tolist() == [[1, 0], [1, 1]]
    z = subdivide_grid(BinaryGrid(np.zeros((3, 3))))
    assert z.rows == 6 and not z.cells.any()
    with pytest.raises(GridNotFromRule60):
        subdivide_grid(BinaryGrid(np.zeros((2, 3))))


def test_grid_validation():
    with pytest.raises(ValueError):
        BinaryGrid(np.full((2, 2), 2))
    with pytest.raises(ValueError):
        BinaryGrid(np.zeros((0, 2)))
    assert str(rule60(2)) == "#.\n##"
