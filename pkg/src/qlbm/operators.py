"""Matrix form of the linearized D2Q9 update: collision, streaming with
boundary conditions, affine corrections and moment extraction.

Dropping the velocity-quadratic equilibrium terms makes one BGK collision a
constant 9x9 kernel acting independently at every node,

    a[i][k] = delta_ik * (1 - 1/tau) + (1/tau) * w_i * (1 + 3 e_i . e_k),

so the grid-level collision matrix is kernel (x) identity over nodes.
Streaming combined with periodic wrap and halfway bounce-back is a pull-form
permutation: row flat(x, y, i) takes its value from the upwind node, or from
the opposite direction at the same node when the pull crosses a wall.  The
two inhomogeneous pieces of the update (body force, moving-wall momentum)
cannot live inside a linear operator and are returned as explicit correction
vectors instead.

All operators act on zero-padded vectors of length 2**n_q and are the
identity on the padding block, which keeps streaming a permutation and
collision invertible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, flat_index
from .lattice import LatticeModel, N_DIRECTIONS

GENERIC = "generic"
KRON_LOCAL = "kron_local"
PERMUTATION = "permutation"

PERIODIC = "periodic"

FORCING = "forcing"
MOVING_WALL = "moving_wall"


@dataclass(frozen=True)
class Wall:
    """Solid wall half a lattice link outside the boundary nodes.

    ``u`` is the wall velocity (tangential for the benchmark cases) and
    ``rho`` the wall density entering the bounce-back momentum term.
    """

    u: tuple[float, float] = (0.0, 0.0)
    rho: float = 1.0


@dataclass(frozen=True)
class BcSpec:
    """Per-edge boundary kind: ``PERIODIC`` or a :class:`Wall`."""

    left: Wall | str = PERIODIC
    right: Wall | str = PERIODIC
    bottom: Wall | str = PERIODIC
    top: Wall | str = PERIODIC

    def __post_init__(self):
        if (self.left == PERIODIC) != (self.right == PERIODIC):
            raise ValueError("left/right must be both periodic or both walls")
        if (self.bottom == PERIODIC) != (self.top == PERIODIC):
            raise ValueError("bottom/top must be both periodic or both walls")

    @staticmethod
    def periodic() -> "BcSpec":
        return BcSpec()

    @staticmethod
    def channel(u_top: float = 0.0, u_bottom: float = 0.0) -> "BcSpec":
        """Periodic in x, walls at bottom/top moving tangentially in x."""
        return BcSpec(bottom=Wall(u=(u_bottom, 0.0)), top=Wall(u=(u_top, 0.0)))

    @staticmethod
    def cavity(u_lid: float) -> "BcSpec":
        """Stationary side/bottom walls, lid at the top moving in x."""
        return BcSpec(
            left=Wall(), right=Wall(), bottom=Wall(), top=Wall(u=(u_lid, 0.0))
        )


@dataclass(frozen=True)
class CollisionKernel:
    """Per-node 9x9 collision matrix and its relaxation time."""

    a: np.ndarray
    tau: float


@dataclass(frozen=True)
class LbOperator:
    """Square operator of padded dimension with a structural tag.

    ``kernel`` is set for kron_local operators (the 9x9 node kernel) and
    ``perm`` for permutations (column index per row, y = x[perm]).
    """

    dim: int
    dense: np.ndarray
    structure: str
    n_f: int
    kernel: np.ndarray | None = None
    perm: np.ndarray | None = None

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Apply through the structural fast path when one exists."""
        if x.shape != (self.dim,):
            raise ValueError(f"expected vector of length {self.dim}")
        if self.structure == PERMUTATION:
            return x[self.perm]
        if self.structure == KRON_LOCAL:
            n_sites = self.n_f // N_DIRECTIONS
            out = x.copy()
            out[: self.n_f] = (
                self.kernel @ x[: self.n_f].reshape(N_DIRECTIONS, n_sites)
            ).reshape(-1)
            return out
        return self.dense @ x


@dataclass(frozen=True)
class AffineCorrection:
    """Classical additive term of length n_f, applied once per time step."""

    values: np.ndarray
    kind: str


def collision_kernel(lat: LatticeModel, tau: float) -> CollisionKernel:
    """Build the 9x9 linearized BGK kernel for relaxation time ``tau``."""
    if tau <= 0.5:
        raise ValueError(f"tau must exceed 0.5 for positive viscosity, got {tau}")
    e = lat.e.astype(float)
    w = lat.w
    ee = e @ e.T
    a = (1.0 - 1.0 / tau) * np.eye(N_DIRECTIONS) + (1.0 / tau) * w[:, None] * (
        1.0 + 3.0 * ee
    )
    return CollisionKernel(a=a, tau=tau)


def advection_collision_kernel(
    lat: LatticeModel, tau: float, u_adv: tuple[float, float]
) -> CollisionKernel:
    """BGK kernel for passive-scalar transport at a prescribed velocity.

    The equilibrium w_i C (1 + 3 e_i . u_adv) depends only on the local sum
    C, so every column of the equilibrium part is identical.  Momentum is
    deliberately not conserved: the scalar relaxes onto the advecting flow.
    """
    if tau <= 0.5:
        raise ValueError(f"tau must exceed 0.5 for positive diffusivity, got {tau}")
    eu = lat.e.astype(float) @ np.asarray(u_adv, dtype=float)
    a = (1.0 - 1.0 / tau) * np.eye(N_DIRECTIONS) + (1.0 / tau) * np.outer(
        lat.w * (1.0 + 3.0 * eu), np.ones(N_DIRECTIONS)
    )
    return CollisionKernel(a=a, tau=tau)


def build_collision_operator(k: CollisionKernel, g: GridSpec) -> LbOperator:
    """Lift the node kernel over the grid: kernel (x) I on the populated
    block, identity on padding."""
    dim = g.padded_len
    dense = np.eye(dim)
    dense[: g.n_f, : g.n_f] = np.kron(k.a, np.eye(g.n_g))
    return LbOperator(
        dim=dim, dense=dense, structure=KRON_LOCAL, n_f=g.n_f, kernel=k.a.copy()
    )


def _pull_target(x: int, y: int, i_e: int, g: GridSpec, bc: BcSpec, lat: LatticeModel):
    """Resolve the pull for population i_e at (x, y).

    Returns ``(col, crossed_walls)`` where ``col`` is the source flat index
    and ``crossed_walls`` lists the Wall edges the pull crossed (empty for
    interior pulls and periodic wraps).  A wall crossing bounces the pull
    back to the same node with the reflected direction.
    """
    ex, ey = lat.velocities[i_e]
    px, py = x - ex, y - ey
    crossed: list[Wall] = []
    if px < 0:
        if bc.left == PERIODIC:
            px += g.nx
        else:
            crossed.append(bc.left)
    elif px >= g.nx:
        if bc.right == PERIODIC:
            px -= g.nx
        else:
            crossed.append(bc.right)
    if py < 0:
        if bc.bottom == PERIODIC:
            py += g.ny
        else:
            crossed.append(bc.bottom)
    elif py >= g.ny:
        if bc.top == PERIODIC:
            py -= g.ny
        else:
            crossed.append(bc.top)
    if crossed:
        return flat_index(x, y, lat.opposite[i_e], g), crossed
    return flat_index(px, py, i_e, g), crossed


def build_streaming_operator(g: GridSpec, bc: BcSpec, lat: LatticeModel) -> LbOperator:
    """Pull-form streaming permutation with periodic wrap and halfway
    bounce-back folded in; the rest direction and padding are identity."""
    dim = g.padded_len
    perm = np.arange(dim, dtype=np.int64)
    for i_e in range(1, N_DIRECTIONS):
        for y in range(g.ny):
            for x in range(g.nx):
                col, _ = _pull_target(x, y, i_e, g, bc, lat)
                perm[flat_index(x, y, i_e, g)] = col
    dense = np.eye(dim)[perm]
    return LbOperator(dim=dim, dense=dense, structure=PERMUTATION, n_f=g.n_f, perm=perm)


def moving_wall_correction(
    g: GridSpec, bc: BcSpec, lat: LatticeModel
) -> AffineCorrection:
    """Momentum exchanged with moving walls during bounce-back.

    For every population whose pull crossed a wall, the reflected slot
    receives ``-2 w_i rho_w (e_i . u_w) / cs2`` with ``i`` the outgoing
    direction; a corner link crossing two walls accumulates both edges'
    terms (stationary edges contribute zero).
    """
    inv_cs2 = 3.0
    w = lat.w
    e = lat.e.astype(float)
    vec = np.zeros(g.n_f)
    for i_e in range(1, N_DIRECTIONS):
        out = lat.opposite[i_e]
        for y in range(g.ny):
            for x in range(g.nx):
                _, crossed = _pull_target(x, y, i_e, g, bc, lat)
                for wall in crossed:
                    term = -2.0 * w[out] * wall.rho * (e[out] @ wall.u) * inv_cs2
                    vec[flat_index(x, y, i_e, g)] += term
    return AffineCorrection(values=vec, kind=MOVING_WALL)


def forcing_vector(
    g: GridSpec, lat: LatticeModel, f_b: tuple[float, float]
) -> AffineCorrection:
    """Body-force source S_i = w_i (e_i . F_b) / cs2, identical at all nodes."""
    per_dir = 3.0 * lat.w * (lat.e.astype(float) @ np.asarray(f_b, dtype=float))
    return AffineCorrection(values=np.repeat(per_dir, g.n_g), kind=FORCING)


def moment_matrices(
    g: GridSpec, lat: LatticeModel
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Density and momentum extraction matrices of shape (n_g, n_f).

    M0 is nine horizontally repeated identities; M1x/M1y weight each block
    by the direction's velocity component, so M0 @ df = rho and
    (M1x @ df, M1y @ df) = rho*u.
    """
    eye = np.eye(g.n_g)
    ex = lat.e[:, 0].astype(float)
    ey = lat.e[:, 1].astype(float)
    m0 = np.hstack([eye] * N_DIRECTIONS)
    m1x = np.hstack([ex[i] * eye for i in range(N_DIRECTIONS)])
    m1y = np.hstack([ey[i] * eye for i in range(N_DIRECTIONS)])
    return m0, m1x, m1y


def export_coo(op: LbOperator, path) -> None:
    """Write the nonzero pattern as 'row col value' lines (spy-plot input)."""
    rows, cols = np.nonzero(op.dense)
    with open(path, "w") as fh:
        fh.write("row,col,value\n")
        for r, c in zip(rows, cols):
            fh.write(f"{r},{c},{op.dense[r, c]:.17g}\n")
