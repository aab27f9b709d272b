"""Poiseuille and Couette channel flows against their parabolic profiles.

Grid resolutions and step counts follow the benchmark table; the body force
comes from F = 8 nu u_max / h^2 with the halfway-wall convention h = ny.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qlbm import analytic_couette, analytic_poiseuille, d2q9, moments, run_case
from qlbm.bench import run_fields
from qlbm.cases import couette_case, poiseuille_case

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)
lat = d2q9()

print("Poiseuille, four resolutions:")
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for nx, ny, steps in [(3, 8, 500), (5, 10, 700), (7, 16, 900), (9, 24, 1200)]:
    cfg = poiseuille_case(nx, ny, steps)
    rep = run_case(cfg, engine="quantum")
    print(f"  {nx}x{ny:2d} ({rep.n_qa:2d} qubits, {steps:4d} steps): "
          f"L2 = {100 * rep.l2_error:.3f}%  F_b = {cfg.f_b[0]:.6f}")
    df = run_fields(cfg)
    rho, jx, _ = moments(df, cfg.grid, lat)
    ux = (jx / rho).reshape(ny, nx)[:, nx // 2]
    y = np.arange(ny) + 0.5
    ax1.plot(ux / 0.1, y / ny, "o-", ms=3, label=f"{nx}x{ny}")
yy = np.linspace(0, 1, 200)
ax1.plot(analytic_poiseuille(yy * 8, -0.001, 0.08, 8.0) / 0.1, yy, "k--",
         lw=1, label="analytic")
ax1.set_xlabel("u_x / u_max"), ax1.set_ylabel("y / h")
ax1.set_title("Poiseuille"), ax1.legend(fontsize=8)

for with_g, style in ((True, "o-"), (False, "s-")):
    cfg = couette_case(with_gradient=with_g)
    rep = run_case(cfg, engine="quantum")
    label = "with gradient" if with_g else "shear only"
    print(f"Couette {label}: L2 = {100 * rep.l2_error:.3f}%")
    df = run_fields(cfg)
    rho, jx, _ = moments(df, cfg.grid, lat)
    ux = (jx / rho).reshape(cfg.ny, cfg.nx)[:, cfg.nx // 2]
    y = np.arange(cfg.ny) + 0.5
    ax2.plot(ux / 0.1, y / cfg.ny, style, ms=3, label=label)
    ref = analytic_couette(yy * 16, 0.1, -cfg.f_b[0], 0.16, 16.0)
    ax2.plot(ref / 0.1, yy, "k--", lw=1)
ax2.set_xlabel("u_x / u_w"), ax2.set_ylabel("y / h")
ax2.set_title("Couette-Poiseuille"), ax2.legend(fontsize=8)

fig.tight_layout()
fig.savefig(OUT / "channel_flows.png", dpi=130)
print(f"wrote {OUT}/channel_flows.png")
