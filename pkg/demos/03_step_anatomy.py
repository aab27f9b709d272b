"""Walk one quantum time step stage by stage, and break it on purpose.

The full step is: append the population vector to itself, amplitude-encode,
run the collision triple, apply a Hadamard on the ancilla, run the
streaming triple, then read the real part of the first block and rescale.
Skipping the Hadamard (or encoding [df, 0] instead of [df, df]) leaves a
contamination term in the output whenever both operators are genuinely
non-orthogonal; this script makes the term visible by running the
non-orthogonal collision operator in both slots.
"""

import numpy as np

from qlbm import (
    BcSpec,
    GridSpec,
    apply_dilated,
    apply_hadamard_ancilla,
    broken_step_no_hadamard,
    build_collision_operator,
    build_streaming_operator,
    classical_step,
    collision_kernel,
    d2q9,
    decompose_operator,
    encode,
    qlb_step,
    readout,
)

lat = d2q9()
g = GridSpec(3, 8)
bc = BcSpec.channel()
tau = 0.8
coll = decompose_operator(build_collision_operator(collision_kernel(lat, tau), g))
strm = decompose_operator(build_streaming_operator(g, bc, lat))

rng = np.random.default_rng(1)
df = np.repeat(lat.w, g.n_g) + 0.01 * rng.standard_normal(g.n_f)
padded = np.zeros(g.padded_len)
padded[: g.n_f] = df

st = encode(padded)
print(f"encoded [df, df]: {len(st.amps)} amplitudes, norm_phi = {st.norm_phi:.6f}, "
      f"||amps|| = {np.linalg.norm(st.amps):.15f}")

for m, name in ((coll.v_dil, "V_c"), (coll.d_dil, "D_c"), (coll.u_dil, "U_c")):
    st = apply_dilated(st, m)
    print(f"after {name}: ||amps|| = {np.linalg.norm(st.amps):.15f}, "
          f"max |imag| = {np.abs(st.amps.imag).max():.3e}")

st = apply_hadamard_ancilla(st)
print(f"after H on ancilla: second block max |amp| = "
      f"{np.abs(st.amps[g.padded_len:]).max():.3e}  <- interference emptied it")

for m, name in ((strm.v_dil, "V_s"), (strm.d_dil, "D_s"), (strm.u_dil, "U_s")):
    st = apply_dilated(st, m)

scale = st.norm_phi * coll.alpha * strm.alpha / np.sqrt(2)
out = readout(st, scale)[: g.n_f]
ref = classical_step(df, g, bc, lat, tau)
print(f"readout vs classical step: max |diff| = {np.abs(out - ref).max():.3e}\n")

# now break it: collision in both slots, Hadamard omitted
correct = qlb_step(df, coll, coll)
broken = broken_step_no_hadamard(df, coll, coll)
print("with a non-orthogonal operator in both slots:")
print(f"  correct-vs-broken max |diff| = {np.abs(correct - broken).max():.3e}"
      "  <- the contamination term")

# the defect is invisible with the benchmark streaming operator, which is a
# permutation: its sqrt(I - D^2) factor is identically zero
ok = qlb_step(df, coll, strm)
hidden = broken_step_no_hadamard(df, coll, strm)
print(f"  with permutation streaming instead: max |diff| = "
      f"{np.abs(ok - hidden).max():.3e}")
