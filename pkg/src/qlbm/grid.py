"""Grid bookkeeping: flat indexing of distribution functions and zero padding.

Distribution functions are laid out direction-major: the population moving
along direction ``i_e`` at node ``(x, y)`` sits at ``x + y*nx + i_e*nx*ny``.
The vector is zero-padded to the next power of two so it fits a qubit
register; padding indices are valid vector slots but carry no population.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import N_DIRECTIONS


class PaddingIndexError(IndexError):
    """Raised when a flat index falls in the zero-padding region."""


@dataclass(frozen=True)
class GridSpec:
    """Rectangular grid of nx columns and ny rows.

    Derived sizes: ``n_g`` grid points, ``n_f = 9*n_g`` populations,
    ``n_q = ceil(log2(n_f))`` register qubits, ``padded_len = 2**n_q``
    and ``n_qa = n_q + 1`` qubits including the ancilla.
    """

    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.nx}x{self.ny}")

    @property
    def n_g(self) -> int:
        return self.nx * self.ny

    @property
    def n_f(self) -> int:
        return N_DIRECTIONS * self.n_g

    @property
    def n_q(self) -> int:
        return (self.n_f - 1).bit_length()

    @property
    def padded_len(self) -> int:
        return 1 << self.n_q

    @property
    def n_qa(self) -> int:
        return self.n_q + 1


def flat_index(x: int, y: int, i_e: int, g: GridSpec) -> int:
    """Flat vector index of population ``i_e`` at node ``(x, y)``."""
    if not 0 <= x < g.nx:
        raise ValueError(f"x must be in 0..{g.nx - 1}, got {x}")
    if not 0 <= y < g.ny:
        raise ValueError(f"y must be in 0..{g.ny - 1}, got {y}")
    if not 0 <= i_e < N_DIRECTIONS:
        raise ValueError(f"direction must be in 0..8, got {i_e}")
    return x + y * g.nx + i_e * g.n_g


def coords_of(idx: int, g: GridSpec) -> tuple[int, int, int]:
    """Invert flat_index; padding indices are rejected explicitly."""
    if g.n_f <= idx < g.padded_len:
        raise PaddingIndexError(
            f"index {idx} lies in the padding region {g.n_f}..{g.padded_len - 1}"
        )
    if not 0 <= idx < g.n_f:
        raise ValueError(f"index must be in 0..{g.padded_len - 1}, got {idx}")
    i_e, rest = divmod(idx, g.n_g)
    y, x = divmod(rest, g.nx)
    return x, y, i_e
