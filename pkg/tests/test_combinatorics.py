import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionassurance.combinatorics import binom, hypergeom


def test_binom_matches_math_comb():
    for n in range(0, 25):
        for r in range(0, n + 1):
            assert binom(n, r) == math.comb(n, r)


def test_binom_is_zero_outside_range():
    assert binom(5, -1) == 0
    assert binom(5, 6) == 0
    assert binom(0, 1) == 0


@given(st.integers(0, 40), st.integers(-5, 45))
def test_binom_symmetry(n, r):
    assert binom(n, r) == binom(n, n - r)


@given(st.integers(1, 40), st.integers(0, 40))
def test_binom_pascal_rule(n, r):
    assert binom(n, r) == binom(n - 1, r - 1) + binom(n - 1, r)


@given(st.data())
@settings(max_examples=200)
def test_hypergeom_normalizes(data):
    total = data.draw(st.integers(1, 20))
    marked = data.draw(st.integers(0, total))
    drawn = data.draw(st.integers(0, total))
    acc = sum(
        hypergeom(total, marked, drawn, hits) for hits in range(0, drawn + 1)
    )
    assert acc == 1


def test_hypergeom_known_value():
    # 2 marked of 5, draw 2: P(both marked) = 1/C(5,2).
    assert hypergeom(5, 2, 2, 2) == Fraction(1, 10)
    assert hypergeom(5, 2, 2, 0) == Fraction(3, 10)
    assert hypergeom(5, 2, 2, 1) == Fraction(6, 10)


def test_hypergeom_rejects_negative_counts():
    with pytest.raises(ValueError):
        hypergeom(-1, 0, 0, 0)
    with pytest.raises(ValueError):
        hypergeom(5, -2, 1, 0)


def test_hypergeom_impossible_hits_is_zero():
    assert hypergeom(5, 2, 2, 3) == 0
    assert hypergeom(5, 0, 3, 1) == 0
