"""Exact statevector evolution of the dilated collision/streaming circuit.

One time step runs

    encode [df, df]  ->  V_c, D_c, U_c  ->  H on the ancilla
                     ->  V_s, D_s, U_s  ->  real part of the first block,

then rescales by ||phi|| alpha_c alpha_s / sqrt(2) and adds the classical
affine corrections.  The mid-circuit Hadamard is what makes this work: it
collapses the post-collision state back onto the ancilla-0 block, so the
streaming stage cannot fold the collision's imaginary leakage back into the
real component.  The deliberately broken variants (zero-padded encoding,
Hadamard omitted) are kept for tests that reproduce the contamination term

    U_s sqrt(I - D_s^2) V_s  U_c sqrt(I - D_c^2) V_c  df

appearing when the interference step is skipped.

Readout here takes amplitudes from the exact statevector.  Sampling is
provided for measurement-cost studies only: measured probabilities lose the
sign of negative post-collision populations, so a sampled readout cannot
drive the stepping loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .factorize import DecomposedOperator, DilatedOperator
from .operators import AffineCorrection, FORCING

_SQRT2 = np.sqrt(2.0)
_NORM_DRIFT_TOL = 1e-9


class EngineError(ValueError):
    """Raised on malformed statevector input."""


@dataclass
class QState:
    """Normalized complex statevector with its classical scale factors."""

    amps: np.ndarray
    norm_phi: float
    alpha_c: float = 1.0
    alpha_s: float = 1.0

    @property
    def dim(self) -> int:
        """Block length; the ancilla doubles it."""
        return len(self.amps) // 2


def encode(df: np.ndarray) -> QState:
    """Amplitude-encode a padded population vector appended to itself."""
    df = np.asarray(df, dtype=float)
    if df.ndim != 1:
        raise EngineError(f"expected a 1-D population vector, got shape {df.shape}")
    if not np.isfinite(df).all():
        raise EngineError("population vector contains non-finite entries")
    phi = np.concatenate([df, df]).astype(complex)
    norm = float(np.linalg.norm(phi))
    if norm == 0.0:
        raise EngineError("cannot encode the zero vector")
    return QState(amps=phi / norm, norm_phi=norm)


def apply_dilated(state: QState, m: DilatedOperator) -> QState:
    """Apply one dilated unitary; the norm must survive to rounding."""
    if len(state.amps) != 2 * m.dim:
        raise EngineError(
            f"operator dimension {2 * m.dim} does not match state {len(state.amps)}"
        )
    amps = m.apply(state.amps)
    if abs(np.linalg.norm(amps) - 1.0) > _NORM_DRIFT_TOL:
        raise EngineError("statevector norm drifted; operator is not unitary")
    return QState(amps, state.norm_phi, state.alpha_c, state.alpha_s)


def apply_hadamard_ancilla(state: QState) -> QState:
    """Hadamard on the ancilla: mixes the two blocks as (t+b, t-b)/sqrt(2)."""
    dim = state.dim
    top, bottom = state.amps[:dim], state.amps[dim:]
    amps = np.concatenate([top + bottom, top - bottom]) / _SQRT2
    return QState(amps, state.norm_phi, state.alpha_c, state.alpha_s)


def readout(state: QState, scale: float) -> np.ndarray:
    """Real part of the first ancilla block, rescaled to population units."""
    return state.amps[: state.dim].real * scale


def _pad(df: np.ndarray, n_f: int, dim: int) -> np.ndarray:
    df = np.asarray(df, dtype=float)
    if df.shape == (dim,):
        return df
    if df.shape != (n_f,):
        raise EngineError(f"expected population vector of length {n_f} or {dim}")
    padded = np.zeros(dim)
    padded[:n_f] = df
    return padded


def qlb_step(
    df: np.ndarray,
    coll: DecomposedOperator,
    strm: DecomposedOperator,
    corrections: tuple[AffineCorrection, ...] = (),
) -> np.ndarray:
    """One full quantum time step; returns the first n_f populations.

    Computes streaming(collision(df)) through the dilated circuit, then adds
    the affine pieces: the forcing vector is itself streamed (collide-then-
    stream ordering), the moving-wall term lands post-streaming as is.
    Padding amplitudes are re-zeroed by construction because only the first
    n_f entries survive to the next encode.
    """
    n_f, dim = coll.n_f, coll.dim
    state = encode(_pad(df, n_f, dim))
    state.alpha_c = coll.alpha
    state.alpha_s = strm.alpha
    for m in (coll.v_dil, coll.d_dil, coll.u_dil):
        state = apply_dilated(state, m)
    state = apply_hadamard_ancilla(state)
    for m in (strm.v_dil, strm.d_dil, strm.u_dil):
        state = apply_dilated(state, m)
    scale = state.norm_phi * coll.alpha * strm.alpha / _SQRT2
    out = readout(state, scale)[:n_f]
    for corr in corrections:
        if corr.kind == FORCING:
            out = out + strm.operator_action(corr.values)
        else:
            out = out + corr.values
    return out


def broken_step_zero_padding(
    df: np.ndarray, coll: DecomposedOperator, strm: DecomposedOperator
) -> np.ndarray:
    """Test-only: encode [df, 0] and skip the mid-circuit Hadamard.

    The real part returned differs from streaming(collision(df)) by exactly
    the contamination term; see the module docstring.
    """
    n_f, dim = coll.n_f, coll.dim
    padded = _pad(df, n_f, dim)
    phi = np.concatenate([padded, np.zeros(dim)]).astype(complex)
    norm = float(np.linalg.norm(phi))
    if norm == 0.0:
        raise EngineError("cannot encode the zero vector")
    state = QState(amps=phi / norm, norm_phi=norm, alpha_c=coll.alpha,
                   alpha_s=strm.alpha)
    for m in (coll.v_dil, coll.d_dil, coll.u_dil,
              strm.v_dil, strm.d_dil, strm.u_dil):
        state = apply_dilated(state, m)
    return readout(state, norm * coll.alpha * strm.alpha)[:n_f]


def broken_step_no_hadamard(
    df: np.ndarray, coll: DecomposedOperator, strm: DecomposedOperator
) -> np.ndarray:
    """Test-only: correct append-to-self encoding but no mid-circuit Hadamard.

    Both real and imaginary components of the first block pick up undesired
    terms; the real part returned carries the same contamination as
    :func:`broken_step_zero_padding`.
    """
    n_f = coll.n_f
    state = encode(_pad(df, n_f, coll.dim))
    state.alpha_c = coll.alpha
    state.alpha_s = strm.alpha
    for m in (coll.v_dil, coll.d_dil, coll.u_dil,
              strm.v_dil, strm.d_dil, strm.u_dil):
        state = apply_dilated(state, m)
    return readout(state, state.norm_phi * coll.alpha * strm.alpha)[:n_f]


def sample_counts(state: QState, shots: int, seed=None) -> np.ndarray:
    """Multinomial draw from |amps|^2; returns counts per basis state."""
    if shots < 1:
        raise EngineError(f"shots must be at least 1, got {shots}")
    probs = np.abs(state.amps) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, probs)
