"""Lattice constants and direction algebra."""

from fractions import Fraction

import numpy as np
import pytest

from qlbm import d2q9, opposite


def test_weights_match_table():
    lat = d2q9()
    assert lat.weights[0] == Fraction(4, 9)
    assert lat.weights[1:5] == (Fraction(1, 9),) * 4
    assert lat.weights[5:] == (Fraction(1, 36),) * 4
    assert sum(lat.weights) == 1


def test_velocity_ordering():
    lat = d2q9()
    assert lat.velocities[0] == (0, 0)
    assert lat.velocities[1:5] == ((0, 1), (1, 0), (0, -1), (-1, 0))
    assert lat.velocities[5] == (1, 1)
    assert lat.velocities[5:] == ((1, 1), (1, -1), (-1, 1), (-1, -1))


@pytest.mark.parametrize("i,j", [(0, 0), (1, 3), (5, 8)])
def test_opposite_examples(i, j):
    assert opposite(i) == j


def test_opposite_is_involution_and_negates():
    lat = d2q9()
    for i in range(9):
        j = opposite(i)
        assert opposite(j) == i
        assert lat.velocities[j] == tuple(-c for c in lat.velocities[i])


@pytest.mark.parametrize("bad", [-1, 9, 100])
def test_opposite_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        opposite(bad)


def test_moment_identities_exact():
    # first and second velocity moments of the weights, in exact arithmetic
    lat = d2q9()
    for axis in (0, 1):
        assert sum(w * e[axis] for w, e in zip(lat.weights, lat.velocities)) == 0
    for a in (0, 1):
        for b in (0, 1):
            second = sum(
                w * e[a] * e[b] for w, e in zip(lat.weights, lat.velocities)
            )
            assert second == (lat.cs2 if a == b else 0)
    assert lat.cs2 == Fraction(1, 3)


def test_float_views_consistent():
    lat = d2q9()
    assert lat.e.shape == (9, 2)
    assert lat.w.shape == (9,)
    np.testing.assert_allclose(lat.w.sum(), 1.0, rtol=0, atol=1e-15)
