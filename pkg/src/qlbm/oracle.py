"""Classical ground-truth stepper and analytic benchmark solutions.

The stepper works population-by-population on the (9, ny, nx) layout with
numpy rolls, entirely independent of the matrix operators, so it can serve
as the oracle the quantum pipeline is checked against.  With the linearized
equilibrium it reproduces the matrix path exactly; with the full quadratic
equilibrium it is the nonlinear reference for the cavity case.

Analytic references:

    advected Gaussian   C(x,t) = s0^2/(s0^2+sD^2) C0 exp(-(x-x0-ut)^2/(2(s0^2+sD^2)))
    plane Poiseuille    u_x(y) = (G/2mu) y (y-h)
    Couette-Poiseuille  u_x(y) = u_w y/h + (G/2mu) y (y-h)

with sD = sqrt(2 D t).  Walls follow the halfway convention: they sit half a
link beyond the outermost nodes, node centers are at y = j + 0.5 and the
channel height is h = ny.
"""

from __future__ import annotations

import numpy as np

from .grid import GridSpec
from .lattice import LatticeModel, N_DIRECTIONS
from .operators import PERIODIC, BcSpec


def moments(df: np.ndarray, g: GridSpec, lat: LatticeModel):
    """Density and momentum fields of a length-n_f population vector.

    Returns ``(rho, jx, jy)`` each of shape (n_g,).
    """
    f9 = df.reshape(N_DIRECTIONS, g.n_g)
    e = lat.e.astype(float)
    rho = f9.sum(axis=0)
    jx = e[:, 0] @ f9
    jy = e[:, 1] @ f9
    return rho, jx, jy


def equilibrium(rho, u, lat: LatticeModel, linearized: bool = True) -> np.ndarray:
    """Equilibrium populations for density ``rho`` and velocity ``u``.

    ``rho`` is a scalar or shape (n,), ``u`` shape (2,) or (2, n); the result
    has shape (9,) or (9, n).  The linearized form drops the quadratic
    velocity terms.
    """
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    e = lat.e.astype(float)
    w = lat.w
    eu = np.tensordot(e, u, axes=([1], [0]))  # (9,) or (9, n)
    if rho.ndim == 0:
        w_shaped = w
    else:
        w_shaped = w[:, None]
    if linearized:
        return w_shaped * rho * (1.0 + 3.0 * eu)
    usq = (u * u).sum(axis=0)
    return w_shaped * rho * (1.0 + 3.0 * eu + 4.5 * eu * eu - 1.5 * usq)


def classical_step(
    df: np.ndarray,
    g: GridSpec,
    bc: BcSpec,
    lat: LatticeModel,
    tau: float,
    f_b: tuple[float, float] = (0.0, 0.0),
    linearized: bool = True,
    u_adv: tuple[float, float] | None = None,
) -> np.ndarray:
    """One collide-and-stream update of a length-n_f population vector.

    Collision relaxes toward the chosen equilibrium and adds the body-force
    source; streaming pulls upwind with periodic wrap and applies halfway
    bounce-back (with the moving-wall momentum term) where the pull crosses
    a wall.  The linearized path uses equilibria built from raw momentum so
    it stays defined for sign-indefinite test vectors.  Passing ``u_adv``
    switches to passive-scalar transport: the equilibrium becomes
    w_i C (1 + 3 e_i . u_adv) with the prescribed velocity.
    """
    nx, ny = g.nx, g.ny
    e = lat.e
    w = lat.w
    f = df.reshape(N_DIRECTIONS, ny, nx)

    rho = f.sum(axis=0)
    jx = np.tensordot(e[:, 0].astype(float), f, axes=(0, 0))
    jy = np.tensordot(e[:, 1].astype(float), f, axes=(0, 0))
    if u_adv is not None:
        feq = np.empty_like(f)
        eu = e.astype(float) @ np.asarray(u_adv, dtype=float)
        for i in range(N_DIRECTIONS):
            feq[i] = w[i] * rho * (1.0 + 3.0 * eu[i])
    elif linearized:
        feq = np.empty_like(f)
        for i in range(N_DIRECTIONS):
            feq[i] = w[i] * (rho + 3.0 * (e[i, 0] * jx + e[i, 1] * jy))
    else:
        ux, uy = jx / rho, jy / rho
        usq = ux * ux + uy * uy
        feq = np.empty_like(f)
        for i in range(N_DIRECTIONS):
            eu = e[i, 0] * ux + e[i, 1] * uy
            feq[i] = w[i] * rho * (1.0 + 3.0 * eu + 4.5 * eu * eu - 1.5 * usq)

    source = 3.0 * w * (e.astype(float) @ np.asarray(f_b, dtype=float))
    f_star = f - (f - feq) / tau + source[:, None, None]

    out = np.empty_like(f_star)
    out[0] = f_star[0]
    for i in range(1, N_DIRECTIONS):
        exi, eyi = lat.velocities[i]
        out[i] = np.roll(f_star[i], shift=(eyi, exi), axis=(0, 1))
        o = lat.opposite[i]
        crossed = np.zeros((ny, nx), dtype=bool)
        term = np.zeros((ny, nx))
        for edge, hit, rows, cols in (
            (bc.bottom, eyi > 0, 0, slice(None)),
            (bc.top, eyi < 0, ny - 1, slice(None)),
            (bc.left, exi > 0, slice(None), 0),
            (bc.right, exi < 0, slice(None), nx - 1),
        ):
            if not hit or edge == PERIODIC:
                continue
            crossed[rows, cols] = True
            eu_w = float(e[o].astype(float) @ np.asarray(edge.u, dtype=float))
            term[rows, cols] += -2.0 * w[o] * edge.rho * eu_w * 3.0
        if crossed.any():
            out[i] = np.where(crossed, f_star[o] + term, out[i])
    return out.reshape(-1)


def analytic_gaussian(x, t: float, c0: float, sigma0: float, diffusion: float,
                      u=(0.0, 0.0), x0=(0.0, 0.0)) -> np.ndarray:
    """Advected-diffused Gaussian hill at time ``t``.

    ``x`` has shape (..., d); the displacement x - x0 - u t is used as given
    (wrap it for periodic domains before calling).
    """
    if sigma0 <= 0:
        raise ValueError("sigma0 must be positive")
    if diffusion < 0 or t < 0:
        raise ValueError("diffusion coefficient and time must be nonnegative")
    x = np.asarray(x, dtype=float)
    sigma_d2 = 2.0 * diffusion * t
    disp = x - np.asarray(x0, dtype=float) - np.asarray(u, dtype=float) * t
    r2 = (disp * disp).sum(axis=-1)
    amp = sigma0**2 / (sigma0**2 + sigma_d2) * c0
    return amp * np.exp(-r2 / (2.0 * (sigma0**2 + sigma_d2)))


def analytic_poiseuille(y, gradient: float, mu: float, h: float) -> np.ndarray:
    """Pressure-driven channel profile u_x(y) = (G/2mu) y (y-h)."""
    if h <= 0:
        raise ValueError("channel height must be positive")
    y = np.asarray(y, dtype=float)
    return gradient / (2.0 * mu) * y * (y - h)


def analytic_couette(y, u_w: float, gradient: float, mu: float, h: float) -> np.ndarray:
    """Sheared channel profile u_x(y) = u_w y/h + (G/2mu) y (y-h)."""
    if h <= 0:
        raise ValueError("channel height must be positive")
    y = np.asarray(y, dtype=float)
    return u_w * y / h + gradient / (2.0 * mu) * y * (y - h)


def l2_relative_error(ref: np.ndarray, got: np.ndarray) -> float:
    """sqrt(sum (ref-got)^2 / sum ref^2), the benchmark accuracy metric."""
    ref = np.asarray(ref, dtype=float)
    got = np.asarray(got, dtype=float)
    if ref.shape != got.shape:
        raise ValueError(f"shape mismatch {ref.shape} vs {got.shape}")
    denom = float((ref * ref).sum())
    if denom == 0.0:
        raise ValueError("reference vector is identically zero")
    return float(np.sqrt(((ref - got) ** 2).sum() / denom))
