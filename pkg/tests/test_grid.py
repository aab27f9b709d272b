"""Flat indexing, padding bookkeeping and roundtrips."""

import pytest

from qlbm import GridSpec, PaddingIndexError, coords_of, flat_index


def test_derived_sizes_3x8():
    g = GridSpec(3, 8)
    assert (g.n_g, g.n_f, g.n_q, g.padded_len, g.n_qa) == (24, 216, 8, 256, 9)


def test_derived_sizes_10x10():
    g = GridSpec(10, 10)
    assert (g.n_f, g.n_q, g.padded_len, g.n_qa) == (900, 10, 1024, 11)


@pytest.mark.parametrize("nx,ny", [(3, 8), (5, 10), (7, 16), (9, 24), (10, 10)])
def test_padding_bounds(nx, ny):
    g = GridSpec(nx, ny)
    assert g.padded_len >= g.n_f
    if g.padded_len != g.n_f:
        assert g.padded_len < 2 * g.n_f


def test_rejects_degenerate_grid():
    with pytest.raises(ValueError):
        GridSpec(0, 4)


@pytest.mark.parametrize(
    "x,y,i_e,expected", [(0, 0, 0, 0), (2, 1, 0, 5), (0, 0, 2, 48)]
)
def test_flat_index_examples(x, y, i_e, expected):
    assert flat_index(x, y, i_e, GridSpec(3, 8)) == expected


@pytest.mark.parametrize(
    "idx,coords", [(0, (0, 0, 0)), (5, (2, 1, 0)), (48, (0, 0, 2))]
)
def test_coords_of_examples(idx, coords):
    assert coords_of(idx, GridSpec(3, 8)) == coords


def test_roundtrip_exhaustive():
    g = GridSpec(5, 4)
    seen = set()
    for i_e in range(9):
        for y in range(g.ny):
            for x in range(g.nx):
                idx = flat_index(x, y, i_e, g)
                assert coords_of(idx, g) == (x, y, i_e)
                seen.add(idx)
    assert seen == set(range(g.n_f))


def test_flat_index_rejects_out_of_range():
    g = GridSpec(3, 8)
    for bad in [(-1, 0, 0), (3, 0, 0), (0, 8, 0), (0, 0, 9), (0, -1, 0)]:
        with pytest.raises(ValueError):
            flat_index(*bad, g)


def test_coords_of_distinguishes_padding():
    g = GridSpec(3, 8)
    with pytest.raises(PaddingIndexError):
        coords_of(g.n_f, g)
    with pytest.raises(PaddingIndexError):
        coords_of(g.padded_len - 1, g)
    with pytest.raises(ValueError):
        coords_of(g.padded_len, g)
    with pytest.raises(ValueError):
        coords_of(-1, g)
