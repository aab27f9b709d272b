"""Factor a non-unitary operator into dilated unitaries, step by step.

The collision matrix is not unitary (its singular values stray from 1), so
it cannot be a quantum gate as-is.  The route: SVD into U diag(sigma) V,
normalize sigma by its maximum (keeping alpha for classical rescaling),
split the normalized diagonal D into the unit-modulus pair D +- i sqrt(1-D^2),
and dilate everything over one ancilla qubit.
"""

import numpy as np

from qlbm import (
    GridSpec,
    build_collision_operator,
    collision_kernel,
    d2q9,
    decompose_operator,
    dilate_diagonal,
    lcu_diagonal,
    svd_decompose,
)

lat = d2q9()
g = GridSpec(3, 8)
op = build_collision_operator(collision_kernel(lat, tau=0.8), g)

t = svd_decompose(op)
print(f"operator {op.dim}x{op.dim} ({op.structure}); "
      f"9 distinct singular values lifted over {g.n_g} sites:")
print("  sigma (unique):", np.unique(t.sigma.round(12)))
print(f"  alpha = max sigma = {t.alpha:.12f}")
print("  normalized d = sigma/alpha lies in [0, 1]:",
      float(t.d.min()), "..", float(t.d.max()))

d1, d2 = lcu_diagonal(t)
print("\ntwo-term split of the diagonal, D = (D1 + D2)/2:")
print("  |D1| = |D2| = 1 up to", float(np.abs(np.abs(d1) - 1).max()))
print("  max |(D1+D2)/2 - d| =", float(np.abs((d1 + d2) / 2 - t.d).max()))

dec = decompose_operator(op)
print("\ndilated blocks (dimension doubles to", 2 * op.dim, "):")
for name, m in (("V", dec.v_dil), ("D", dec.d_dil), ("U", dec.u_dil)):
    print(f"  {name}: kind = {m.kind:16s} max |M^dag M - I| = {m.unitarity_defect():.2e}")

recon = t.u.dense() @ np.diag(t.sigma) @ t.v.dense()
print("\nreconstruction |U diag(sigma) V - A|_F / |A|_F =",
      float(np.linalg.norm(recon - op.dense) / np.linalg.norm(op.dense)))

# the diagonal dilation equals (H x I) blockdiag(D1, D2) (H x I)
h = np.kron(np.array([[1, 1], [1, -1]]) / np.sqrt(2), np.eye(op.dim))
circuit = h @ np.diag(np.concatenate([d1, d2])) @ h
print("circuit identity |(HxI) diag(D1,D2) (HxI) - dilation| =",
      float(np.abs(circuit - dilate_diagonal(t).dense()).max()))

# applying the three dilations to [v, v] recovers A v / alpha in the real part
rng = np.random.default_rng(0)
v = rng.standard_normal(op.dim)
amps = np.concatenate([v, v]).astype(complex)
for m in (dec.v_dil, dec.d_dil, dec.u_dil):
    amps = m.apply(amps)
err = np.abs(amps[: op.dim].real - op.dense @ v / dec.alpha).max()
print("pipeline check: real(first block) vs A v / alpha differs by", float(err))
