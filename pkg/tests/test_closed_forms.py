import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatgrid.closed_forms import grid_stratum, quotient_stratum


@given(st.integers(2, 40), st.integers(2, 40))
def test_grid_formula_obeys_gauss_bonnet(m, n):
    if m * n < 6:
        return
    f = grid_stratum(m, n)
    assert f.zeros * f.zero_order == 2 * f.genus - 2
    assert f.zeros in (0, math.gcd(m, n))


@given(st.integers(2, 20), st.integers(2, 20))
def test_quotient_formula_obeys_gauss_bonnet(a, b):
    m, n = 2 * a, 2 * b
    f = quotient_stratum(m, n)
    assert f.zeros * f.zero_order == 2 * f.genus - 2


def test_known_values():
    assert tuple(grid_stratum(5, 4)) == (6, 1, 10)
    assert tuple(grid_stratum(4, 4)) == (3, 4, 1)
    assert tuple(grid_stratum(3, 3)) == (1, 0, 0)
    assert tuple(quotient_stratum(8, 4)) == (5, 2, 4)
    assert tuple(quotient_stratum(4, 4)) == (1, 0, 0)
    with pytest.raises(ValueError):
        quotient_stratum(5, 4)
