"""Benchmark case configurations and their initial conditions.

The four cases mirror the validation suite: an advected Gaussian hill in a
fully periodic box, body-force-driven plane Poiseuille flow, Couette flow
with an optional pressure gradient, and the lid-driven cavity.  Relaxation
times derive from the physics: tau = 3 nu + 0.5 for flows (nu fixed by the
target Reynolds number and channel height h = ny) and tau = 3 D + 0.5 for
scalar transport with diffusivity D.  The Poiseuille body force follows
F_b = 8 nu u_max / h^2.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .grid import GridSpec
from .lattice import LatticeModel, d2q9
from .operators import BcSpec
from .oracle import analytic_gaussian

CASES = ("ade", "poiseuille", "couette", "cavity")


@dataclass(frozen=True)
class CaseConfig:
    """Full description of one benchmark run."""

    case: str
    nx: int
    ny: int
    steps: int
    tau: float
    f_b: tuple[float, float] = (0.0, 0.0)
    u_wall: float = 0.0
    rho_wall: float = 1.0
    c0: float = 1.0
    sigma0: float = 2.0
    diffusion: float = 0.0
    u_adv: tuple[float, float] | None = None

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"unknown case {self.case!r}, expected one of {CASES}")
        if self.steps < 0:
            raise ValueError("step count must be nonnegative")
        if self.tau <= 0.5:
            raise ValueError(f"tau must exceed 0.5, got {self.tau}")

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.nx, self.ny)

    @property
    def nu(self) -> float:
        """Kinematic viscosity (or diffusivity) implied by tau."""
        return (self.tau - 0.5) / 3.0


def ade_case(
    nx: int = 10,
    ny: int = 10,
    steps: int = 100,
    diffusion: float = 0.005,
    c0: float = 1.0,
    sigma0: float = 2.0,
    u_adv: tuple[float, float] = (0.1, 0.1),
) -> CaseConfig:
    """Gaussian hill advection-diffusion in a fully periodic box."""
    return CaseConfig(
        case="ade", nx=nx, ny=ny, steps=steps, tau=3.0 * diffusion + 0.5,
        c0=c0, sigma0=sigma0, diffusion=diffusion, u_adv=u_adv,
    )


def poiseuille_case(
    nx: int = 3,
    ny: int = 8,
    steps: int = 500,
    u_max: float = 0.1,
    reynolds: float = 10.0,
) -> CaseConfig:
    """Plane Poiseuille flow, periodic in x, walls at bottom/top."""
    h = float(ny)
    nu = u_max * h / reynolds
    return CaseConfig(
        case="poiseuille", nx=nx, ny=ny, steps=steps, tau=3.0 * nu + 0.5,
        f_b=(8.0 * nu * u_max / h**2, 0.0),
    )


def couette_case(
    nx: int = 7,
    ny: int = 16,
    steps: int = 900,
    u_wall: float = 0.1,
    with_gradient: bool = True,
    u_max: float = 0.1,
    reynolds: float = 10.0,
) -> CaseConfig:
    """Couette-Poiseuille flow: moving top wall, optional body force."""
    h = float(ny)
    nu = u_max * h / reynolds
    f_b = (8.0 * nu * u_max / h**2, 0.0) if with_gradient else (0.0, 0.0)
    return CaseConfig(
        case="couette", nx=nx, ny=ny, steps=steps, tau=3.0 * nu + 0.5,
        f_b=f_b, u_wall=u_wall,
    )


def cavity_case(
    nx: int = 10,
    ny: int = 10,
    steps: int = 1000,
    u_wall: float = 0.1,
    reynolds: float = 10.0,
) -> CaseConfig:
    """Lid-driven cavity: three stationary walls, moving lid on top."""
    nu = u_wall * float(ny) / reynolds
    return CaseConfig(
        case="cavity", nx=nx, ny=ny, steps=steps, tau=3.0 * nu + 0.5,
        u_wall=u_wall,
    )


def boundary_spec(cfg: CaseConfig) -> BcSpec:
    """Boundary kinds for a case."""
    if cfg.case == "ade":
        return BcSpec.periodic()
    if cfg.case in ("poiseuille", "couette"):
        return BcSpec.channel(u_top=cfg.u_wall if cfg.case == "couette" else 0.0)
    return BcSpec.cavity(u_lid=cfg.u_wall)


def node_points(g: GridSpec) -> np.ndarray:
    """Node coordinates as an (ny, nx, 2) array of (x, y) pairs."""
    xs, ys = np.meshgrid(np.arange(g.nx, dtype=float), np.arange(g.ny, dtype=float))
    return np.stack([xs, ys], axis=-1)


def hill_center(g: GridSpec) -> tuple[float, float]:
    """Initial hill position: the central node of the periodic box."""
    return float(g.nx // 2), float(g.ny // 2)


def initial_df(cfg: CaseConfig, lat: LatticeModel | None = None) -> np.ndarray:
    """Starting populations: linear scalar equilibrium for the hill case,
    unit-density rest equilibrium for the flow cases."""
    lat = lat or d2q9()
    g = cfg.grid
    if cfg.case == "ade":
        conc = analytic_gaussian(
            node_points(g), 0.0, cfg.c0, cfg.sigma0, cfg.diffusion,
            u=cfg.u_adv, x0=hill_center(g),
        ).reshape(-1)
        eu = lat.e.astype(float) @ np.asarray(cfg.u_adv, dtype=float)
        f9 = lat.w[:, None] * (1.0 + 3.0 * eu)[:, None] * conc[None, :]
        return f9.reshape(-1)
    return np.repeat(lat.w, g.n_g)


def ade_reference_field(cfg: CaseConfig, t: float) -> np.ndarray:
    """Analytic concentration on the periodic box at time ``t``.

    The displacement to the hill center is wrapped to the nearest periodic
    image so the reference tracks a hill that leaves one side and re-enters
    the other.
    """
    g = cfg.grid
    pts = node_points(g)
    x0 = np.asarray(hill_center(g))
    disp = pts - x0 - np.asarray(cfg.u_adv, dtype=float) * t
    period = np.array([float(g.nx), float(g.ny)])
    disp = (disp + period / 2.0) % period - period / 2.0
    return analytic_gaussian(
        disp + x0, t, cfg.c0, cfg.sigma0, cfg.diffusion, u=(0.0, 0.0), x0=x0
    ).reshape(-1)


def variant(cfg: CaseConfig, **changes) -> CaseConfig:
    """Copy a config with selected fields replaced."""
    return replace(cfg, **changes)
