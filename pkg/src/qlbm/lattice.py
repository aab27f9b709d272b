"""D2Q9 lattice constants and direction algebra.

The nine discrete velocities are ordered rest / axis / diagonal:

    index 0      : ( 0,  0)
    index 1..4   : ( 0,  1), ( 1,  0), ( 0, -1), (-1,  0)
    index 5..8   : ( 1,  1), ( 1, -1), (-1,  1), (-1, -1)

Weights and the sound speed are kept as exact rationals so that the lattice
identities (unit weight sum, isotropy, opposite-direction symmetry) hold
without floating-point noise; they are converted to floats only when an
operator matrix is assembled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

N_DIRECTIONS = 9

_VELOCITIES = (
    (0, 0),
    (0, 1), (1, 0), (0, -1), (-1, 0),
    (1, 1), (1, -1), (-1, 1), (-1, -1),
)

_W0 = Fraction(4, 9)
_W1 = Fraction(1, 9)
_W2 = Fraction(1, 36)
_WEIGHTS = (_W0, _W1, _W1, _W1, _W1, _W2, _W2, _W2, _W2)

_OPPOSITE = (0, 3, 4, 1, 2, 8, 7, 6, 5)

CS2 = Fraction(1, 3)


@dataclass(frozen=True)
class LatticeModel:
    """D2Q9 velocity set with exact rational weights."""

    velocities: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]
    opposite: tuple[int, ...]
    cs2: Fraction

    @property
    def e(self) -> np.ndarray:
        """Velocities as a (9, 2) integer array."""
        return np.array(self.velocities, dtype=np.int64)

    @property
    def w(self) -> np.ndarray:
        """Weights as a (9,) float array."""
        return np.array([float(wi) for wi in self.weights])


_D2Q9 = LatticeModel(
    velocities=_VELOCITIES,
    weights=_WEIGHTS,
    opposite=_OPPOSITE,
    cs2=CS2,
)


def d2q9() -> LatticeModel:
    """Return the D2Q9 lattice model."""
    return _D2Q9


def opposite(i: int) -> int:
    """Index of the direction with negated velocity, -e[i] = e[opposite(i)]."""
    if not 0 <= i < N_DIRECTIONS:
        raise ValueError(f"direction index must be in 0..8, got {i}")
    return _OPPOSITE[i]
