import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import even_pairs
from flatgrid.obstruction import (
    TriangleParams,
    euler_phi,
    excluded_triangle_group,
    fields_equal,
    galois_witness,
    trace_field_generators,
    triangle_matrices,
    witness_residual,
)
from flatgrid.reports import PreconditionError


@given(st.integers(1, 2000))
def test_euler_phi_matches_gcd_count(k):
    assert euler_phi(k) == sum(1 for j in range(1, k + 1) if math.gcd(j, k) == 1)


def test_params_are_sorted():
    t = TriangleParams(10, 4)
    assert (t.m, t.n, t.gamma, t.x) == (4, 10, 2, 20)
    assert t.both_even and t.in_congruence_range
    assert not TriangleParams(6, 6).in_congruence_range


def brute_force_witness(m, n):
    """Cosine search over units mod 2 lcm(m, n), no congruence shortcuts."""
    mod = 2 * math.lcm(m, n)
    for k in range(1, mod):
        if math.gcd(k, mod) == 1 and witness_residual(m, n, k) < 1e-9:
            return k
    return None


@pytest.mark.parametrize("m,n", even_pairs(4, 24))
def test_witness_matches_cosine_search(m, n):
    assert galois_witness(m, n) == brute_force_witness(m, n)


def test_known_witnesses():
    assert galois_witness(6, 10) == 29
    assert galois_witness(4, 8) is None
    with pytest.raises(PreconditionError):
        galois_witness(5, 4)


def test_excluded_odd_never():
    assert not excluded_triangle_group(5, 4)
    assert not excluded_triangle_group(7, 9)


def test_fields_equal_m2():
    for n in range(3, 30):
        assert fields_equal(2, n) == (n % 2 == 1)


@pytest.mark.parametrize("m,n", [(5, 7), (4, 6), (3, 8), (2, 9)])
def test_triangle_matrices(m, n):
    import numpy as np

    fd = trace_field_generators(m, n)
    np.testing.assert_allclose(fd.x_power, -np.eye(2), atol=1e-12)
    # Y^n = (-1)^(n+1) I: the sign only holds projectively for odd n
    np.testing.assert_allclose(fd.y_power, (-1) ** (fd.n + 1) * np.eye(2), atol=1e-12)
    # XY is parabolic
    assert fd.xy_trace == pytest.approx(2.0, abs=1e-12)
    X, _ = triangle_matrices(m, n)
    assert np.trace(X) == pytest.approx(2 * math.cos(math.pi / m))
