"""Factorization of a non-unitary operator into dilated unitaries.

Any real square operator A factors as U diag(sigma) V with U, V orthogonal.
Dividing the singular values by alpha = max(sigma) gives a diagonal D with
entries in [0, 1], which splits into two unitary diagonals

    D1, D2 = D +- i sqrt(I - D^2),        D = (D1 + D2) / 2,

so the whole of A/alpha is a product of three unitaries.  Doubling the
dimension with an ancilla turns each factor into a single gate: orthogonal
factors become block-diag(W, W) and the diagonal pair becomes the mixing
block

    [[D, i sqrt(I-D^2)], [i sqrt(I-D^2), D]],

which equals (H (x) I) block-diag(D1, D2) (H (x) I).  The stored alpha
rescales the read-out amplitudes back to A's true magnitude.

Structured operators skip the dense SVD: permutations are already
orthogonal (sigma = 1), and node-local kernels only need the SVD of their
9x9 kernel, Kronecker-lifted over the grid.  Factors are therefore held as
matvec-capable blocks rather than forced into dense matrices; gauge freedom
of the SVD means only operator actions are ever compared, never raw
factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import N_DIRECTIONS
from .operators import GENERIC, KRON_LOCAL, PERMUTATION, LbOperator

ORTHO_TOL = 1e-10
DIAG_TOL = 1e-12
# Singular values this close to the maximum are collapsed onto it, so the
# normalized top cluster sits at exactly 1 and sqrt(1 - d^2) at exactly 0.
# Without the snap, SVD jitter of order 1e-15 in a repeated maximal value
# turns into sqrt(2e-15) ~ 5e-8 of spurious imaginary amplitude, because the
# square root is not Lipschitz at d = 1.
SIGMA_SNAP = 1e-12

BLOCK_ORTHOGONAL = "block_orthogonal"
DIAGONAL_MIX = "diagonal_mix"


class FactorizationError(ValueError):
    """Raised when an operator cannot be factorized as requested."""


@dataclass(frozen=True)
class OrthogonalFactor:
    """Real orthogonal matrix held in dense, permutation or node-local form."""

    dim: int
    kind: str
    mat: np.ndarray | None = None
    perm: np.ndarray | None = None
    kernel: np.ndarray | None = None
    n_f: int = 0

    @staticmethod
    def from_dense(mat: np.ndarray) -> "OrthogonalFactor":
        return OrthogonalFactor(dim=mat.shape[0], kind=GENERIC, mat=mat)

    @staticmethod
    def from_permutation(perm: np.ndarray) -> "OrthogonalFactor":
        return OrthogonalFactor(dim=len(perm), kind=PERMUTATION, perm=perm)

    @staticmethod
    def identity(dim: int) -> "OrthogonalFactor":
        return OrthogonalFactor.from_permutation(np.arange(dim, dtype=np.int64))

    @staticmethod
    def from_kernel(kernel: np.ndarray, n_f: int, dim: int) -> "OrthogonalFactor":
        return OrthogonalFactor(
            dim=dim, kind=KRON_LOCAL, kernel=kernel, n_f=n_f
        )

    def matvec(self, x: np.ndarray) -> np.ndarray:
        if self.kind == PERMUTATION:
            return x[self.perm]
        if self.kind == KRON_LOCAL:
            out = x.copy()
            n_sites = self.n_f // N_DIRECTIONS
            out[: self.n_f] = (
                self.kernel @ x[: self.n_f].reshape(N_DIRECTIONS, n_sites)
            ).reshape(-1)
            return out
        return self.mat @ x

    def dense(self) -> np.ndarray:
        if self.kind == PERMUTATION:
            return np.eye(self.dim)[self.perm]
        if self.kind == KRON_LOCAL:
            n_sites = self.n_f // N_DIRECTIONS
            out = np.eye(self.dim)
            out[: self.n_f, : self.n_f] = np.kron(self.kernel, np.eye(n_sites))
            return out
        return self.mat

    def orthogonality_defect(self) -> float:
        """max |W^T W - I|; exactly zero for permutations."""
        if self.kind == PERMUTATION:
            counts = np.bincount(self.perm, minlength=self.dim)
            return 0.0 if (counts == 1).all() else 1.0
        if self.kind == KRON_LOCAL:
            gram = self.kernel.T @ self.kernel
            return float(np.abs(gram - np.eye(N_DIRECTIONS)).max())
        gram = self.mat.T @ self.mat
        return float(np.abs(gram - np.eye(self.dim)).max())


@dataclass(frozen=True)
class UnitaryTriple:
    """SVD of an operator, A = u diag(sigma) v, plus its normalization."""

    u: OrthogonalFactor
    sigma: np.ndarray
    v: OrthogonalFactor
    alpha: float

    @property
    def d(self) -> np.ndarray:
        """Singular values normalized to [0, 1]."""
        return self.sigma / self.alpha

    def operator_action(self, x: np.ndarray) -> np.ndarray:
        """Apply the original operator, u diag(sigma) v @ x."""
        return self.u.matvec(self.sigma * self.v.matvec(x))


def svd_decompose(a: LbOperator) -> UnitaryTriple:
    """Factor an operator, using the structural fast paths when tagged.

    Permutations need no numerical work (sigma = 1); node-local operators
    reduce to the 9x9 kernel SVD lifted over the grid with unit singular
    values on the padding block.
    """
    if a.structure == PERMUTATION:
        return UnitaryTriple(
            u=OrthogonalFactor.from_permutation(a.perm),
            sigma=np.ones(a.dim),
            v=OrthogonalFactor.identity(a.dim),
            alpha=1.0,
        )
    if a.structure == KRON_LOCAL:
        u9, s9, v9 = _svd(a.kernel)
        n_sites = a.n_f // N_DIRECTIONS
        sigma = np.ones(a.dim)
        sigma[: a.n_f] = np.repeat(s9, n_sites)
        return UnitaryTriple(
            u=OrthogonalFactor.from_kernel(u9, a.n_f, a.dim),
            sigma=_snap_top(sigma),
            v=OrthogonalFactor.from_kernel(v9, a.n_f, a.dim),
            alpha=float(sigma.max()),
        )
    u, s, v = _svd(a.dense)
    return UnitaryTriple(
        u=OrthogonalFactor.from_dense(u),
        sigma=_snap_top(s),
        v=OrthogonalFactor.from_dense(v),
        alpha=float(s.max()),
    )


def _snap_top(sigma: np.ndarray) -> np.ndarray:
    alpha = sigma.max()
    return np.where(sigma >= alpha * (1.0 - SIGMA_SNAP), alpha, sigma)


def _svd(mat: np.ndarray):
    if not np.isfinite(mat).all():
        raise FactorizationError("operator contains non-finite entries")
    try:
        u, s, vh = np.linalg.svd(mat)
    except np.linalg.LinAlgError as err:
        raise FactorizationError(f"SVD did not converge: {err}") from err
    return u, s, vh


def _split_diagonal(d: np.ndarray) -> np.ndarray:
    """sqrt(1 - d^2) with a guard for rounding just past the unit circle."""
    if (d > 1.0 + DIAG_TOL).any():
        raise FactorizationError(
            f"normalized singular value exceeds 1: max = {d.max()!r}"
        )
    rest = 1.0 - d * d
    rest[(rest < 0.0) & (rest > -DIAG_TOL)] = 0.0
    if (rest < 0.0).any():
        raise FactorizationError("1 - d^2 negative beyond rounding tolerance")
    return np.sqrt(rest)


def lcu_diagonal(t: UnitaryTriple) -> tuple[np.ndarray, np.ndarray]:
    """The unit-modulus pair D1, D2 = D +- i sqrt(1 - D^2), averaging to D."""
    d = t.d
    s = _split_diagonal(d)
    return d + 1j * s, d - 1j * s


@dataclass(frozen=True)
class DilatedOperator:
    """Unitary on the ancilla-doubled space, applied block-wise.

    ``block_orthogonal`` acts as W on both ancilla blocks; ``diagonal_mix``
    couples them through [[d, i s], [i s, d]] with s = sqrt(1 - d^2).
    """

    dim: int
    kind: str
    block: OrthogonalFactor | None = None
    d: np.ndarray | None = None
    s: np.ndarray | None = None

    def apply(self, amps: np.ndarray) -> np.ndarray:
        if amps.shape != (2 * self.dim,):
            raise ValueError(f"expected statevector of length {2 * self.dim}")
        top, bottom = amps[: self.dim], amps[self.dim:]
        out = np.empty_like(amps)
        if self.kind == BLOCK_ORTHOGONAL:
            out[: self.dim] = self.block.matvec(top)
            out[self.dim:] = self.block.matvec(bottom)
        else:
            out[: self.dim] = self.d * top + 1j * self.s * bottom
            out[self.dim:] = 1j * self.s * top + self.d * bottom
        return out

    def dense(self) -> np.ndarray:
        full = np.zeros((2 * self.dim, 2 * self.dim), dtype=complex)
        if self.kind == BLOCK_ORTHOGONAL:
            w = self.block.dense()
            full[: self.dim, : self.dim] = w
            full[self.dim:, self.dim:] = w
        else:
            idx = np.arange(self.dim)
            full[idx, idx] = self.d
            full[self.dim + idx, self.dim + idx] = self.d
            full[idx, self.dim + idx] = 1j * self.s
            full[self.dim + idx, idx] = 1j * self.s
        return full

    def unitarity_defect(self) -> float:
        """max |M^dag M - I|, computed block-wise.

        For block-orthogonal dilations this is the factor's own defect; the
        diagonal mix is unitary iff d^2 + s^2 = 1 entrywise (the diagonal
        blocks commute, so off-diagonal products cancel exactly).
        """
        if self.kind == BLOCK_ORTHOGONAL:
            return self.block.orthogonality_defect()
        return float(np.abs(self.d * self.d + self.s * self.s - 1.0).max())


def dilate_orthogonal(w: OrthogonalFactor | np.ndarray) -> DilatedOperator:
    """Embed an orthogonal matrix as block-diag(W, W) over the ancilla."""
    if isinstance(w, np.ndarray):
        w = OrthogonalFactor.from_dense(w)
    defect = w.orthogonality_defect()
    if defect > ORTHO_TOL:
        raise FactorizationError(
            f"matrix is not orthogonal: max |W^T W - I| = {defect:.3e}"
        )
    return DilatedOperator(dim=w.dim, kind=BLOCK_ORTHOGONAL, block=w)


def dilate_diagonal(t: UnitaryTriple) -> DilatedOperator:
    """Embed the normalized diagonal as the ancilla-mixing block.

    Equal to (H (x) I) block-diag(D1, D2) (H (x) I) with the D1/D2 pair of
    :func:`lcu_diagonal`.
    """
    d = t.d
    s = _split_diagonal(d)
    return DilatedOperator(dim=len(d), kind=DIAGONAL_MIX, d=d, s=s)


@dataclass(frozen=True)
class DecomposedOperator:
    """The three dilated unitaries of one operator, applied v -> d -> u."""

    v_dil: DilatedOperator
    d_dil: DilatedOperator
    u_dil: DilatedOperator
    alpha: float
    triple: UnitaryTriple
    n_f: int

    @property
    def dim(self) -> int:
        return self.v_dil.dim

    def operator_action(self, x: np.ndarray) -> np.ndarray:
        """Apply the original (non-dilated) operator to a vector.

        Accepts length n_f or the padded length; the result keeps the
        input's length.
        """
        if x.shape == (self.n_f,):
            padded = np.zeros(self.dim, dtype=x.dtype)
            padded[: self.n_f] = x
            return self.triple.operator_action(padded)[: self.n_f]
        return self.triple.operator_action(x)


def decompose_operator(a: LbOperator) -> DecomposedOperator:
    """Full pipeline factorization of one operator into dilated unitaries."""
    t = svd_decompose(a)
    return DecomposedOperator(
        v_dil=dilate_orthogonal(t.v),
        d_dil=dilate_diagonal(t),
        u_dil=dilate_orthogonal(t.u),
        alpha=t.alpha,
        triple=t,
        n_f=a.n_f,
    )
