"""Benchmark runner: steps a case through a chosen engine, scores it
against its reference solution and writes the result artifacts.

Engines:

    quantum           dilated-unitary statevector pipeline; every run also
                      steps the linearized classical oracle and records the
                      worst relative deviation between the two
    classical-linear  linearized matrix-equivalent loop stepper
    classical-full    stepper with the quadratic equilibrium terms (the
                      hill case's scalar equilibrium is linear in the
                      populations by construction, so both classical
                      engines coincide there)

References: the advected Gaussian and the channel profiles are analytic;
the cavity has no analytic solution at this scale and is scored against a
classical-full run of the same configuration.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cases import CaseConfig, ade_reference_field, boundary_spec, initial_df
from .engine import encode, qlb_step, sample_counts
from .factorize import decompose_operator
from .grid import GridSpec
from .lattice import d2q9
from .operators import (
    LbOperator,
    advection_collision_kernel,
    build_collision_operator,
    build_streaming_operator,
    collision_kernel,
    export_coo,
    forcing_vector,
    moving_wall_correction,
)
from .oracle import (
    analytic_couette,
    analytic_poiseuille,
    classical_step,
    l2_relative_error,
    moments,
)

ENGINES = ("quantum", "classical-linear", "classical-full")

MAX_QUBITS = 13


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass
class RunReport:
    """Summary of one benchmark run."""

    case: str
    engine: str
    nx: int
    ny: int
    n_q: int
    n_qa: int
    steps: int
    l2_error: float
    reference: str
    max_dev_vs_linear: float | None
    alpha_collision: float | None
    alpha_streaming: float | None
    seconds_per_step: float
    gate_estimate: dict
    tolerance: float
    status: str

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)


def gate_count_estimate(n_qa: int) -> dict:
    """Closed-form synthesis cost estimates for one time step.

    A diagonal operator over n qubits costs about 2**(n+1) elementary gates
    and a generic unitary 2**(n-1) (2**n - 1); one step applies two diagonal
    and four generic blocks.  Exact integer arithmetic, no rounding.
    """
    if n_qa < 2:
        raise ConfigError(f"qubit count must be at least 2, got {n_qa}")
    diagonal = 2 ** (n_qa + 1)
    generic = 2 ** (n_qa - 1) * (2**n_qa - 1)
    return {
        "n_qa": n_qa,
        "diagonal_per_op": diagonal,
        "generic_per_op": generic,
        "total": 2 * diagonal + 4 * generic,
    }


def _check_quantum_scale(g: GridSpec) -> None:
    if g.n_qa > MAX_QUBITS:
        dense_bytes = 2 * (g.padded_len**2) * 8
        raise ConfigError(
            f"n_qa = {g.n_qa} exceeds the desk-scale ceiling of {MAX_QUBITS}: "
            f"dense operator storage alone needs ~{dense_bytes / 1e9:.1f} GB"
        )


def build_case_operators(cfg: CaseConfig):
    """Collision/streaming operators and affine corrections for a case."""
    lat = d2q9()
    g = cfg.grid
    bc = boundary_spec(cfg)
    if cfg.u_adv is not None:
        kern = advection_collision_kernel(lat, cfg.tau, cfg.u_adv)
    else:
        kern = collision_kernel(lat, cfg.tau)
    coll_op = build_collision_operator(kern, g)
    strm_op = build_streaming_operator(g, bc, lat)
    corrections = (
        forcing_vector(g, lat, cfg.f_b),
        moving_wall_correction(g, bc, lat),
    )
    return coll_op, strm_op, corrections


def _relative_max_dev(a: np.ndarray, b: np.ndarray) -> float:
    scale = np.abs(b).max()
    if scale == 0.0:
        return float(np.abs(a - b).max())
    return float(np.abs(a - b).max() / scale)


def _fields(df: np.ndarray, g: GridSpec):
    lat = d2q9()
    rho, jx, jy = moments(df, g, lat)
    with np.errstate(divide="ignore", invalid="ignore"):
        ux = np.where(rho != 0.0, jx / rho, 0.0)
        uy = np.where(rho != 0.0, jy / rho, 0.0)
    return rho, ux, uy


def _reference_profiles(cfg: CaseConfig, df: np.ndarray, cavity_ref=None):
    """Per-case (simulated, reference, axis, label) used for the L2 score."""
    g = cfg.grid
    rho, ux, uy = _fields(df, g)
    if cfg.case == "ade":
        ref = ade_reference_field(cfg, float(cfg.steps))
        return rho, ref, np.arange(g.n_g, dtype=float), "concentration"
    if cfg.case in ("poiseuille", "couette"):
        y = np.arange(g.ny, dtype=float) + 0.5
        mu = cfg.nu  # unit rest density
        if cfg.case == "poiseuille":
            ref = analytic_poiseuille(y, gradient=-cfg.f_b[0], mu=mu, h=float(g.ny))
        else:
            ref = analytic_couette(
                y, u_w=cfg.u_wall, gradient=-cfg.f_b[0], mu=mu, h=float(g.ny)
            )
        sim = ux.reshape(g.ny, g.nx)[:, g.nx // 2]
        return sim, ref, y, "ux_centerline"
    # cavity: score centerline profiles against a full-equilibrium run
    if cavity_ref is None:
        cavity_ref = run_fields(cfg, linearized=False)
    _, ux_f, uy_f = _fields(cavity_ref, g)
    sim = np.concatenate(
        [ux.reshape(g.ny, g.nx)[:, g.nx // 2], uy.reshape(g.ny, g.nx)[g.ny // 2, :]]
    )
    ref = np.concatenate(
        [ux_f.reshape(g.ny, g.nx)[:, g.nx // 2], uy_f.reshape(g.ny, g.nx)[g.ny // 2, :]]
    )
    axis = np.concatenate([np.arange(g.ny, dtype=float) + 0.5,
                           np.arange(g.nx, dtype=float) + 0.5])
    return sim, ref, axis, "cavity_centerlines"


def run_fields(cfg: CaseConfig, linearized: bool = True) -> np.ndarray:
    """Step the classical oracle for the whole run; returns final populations."""
    lat = d2q9()
    g = cfg.grid
    bc = boundary_spec(cfg)
    df = initial_df(cfg, lat)
    for _ in range(cfg.steps):
        df = classical_step(
            df, g, bc, lat, cfg.tau, cfg.f_b,
            linearized=linearized, u_adv=cfg.u_adv,
        )
    return df


def run_case(
    cfg: CaseConfig,
    engine: str = "quantum",
    out_dir: str | Path | None = None,
    tolerance: float = 1e-7,
    output_every: int | None = None,
    shots: int | None = None,
    seed: int | None = None,
) -> RunReport:
    """Run one benchmark case end to end.

    A quantum run is marked FAILED when its worst per-step relative
    deviation from the linearized classical oracle exceeds ``tolerance``.
    ``output_every`` adds intermediate rows to fields.csv; ``shots`` draws a
    measurement histogram from the final encoded state into counts.csv.
    """
    if engine not in ENGINES:
        raise ConfigError(f"unknown engine {engine!r}, expected one of {ENGINES}")
    lat = d2q9()
    g = cfg.grid
    bc = boundary_spec(cfg)

    alpha_c = alpha_s = None
    max_dev = None
    coll = strm = None
    strm_op = None
    corrections = ()
    if engine == "quantum":
        _check_quantum_scale(g)
        coll_op, strm_op, corrections = build_case_operators(cfg)
        coll, strm = decompose_operator(coll_op), decompose_operator(strm_op)
        alpha_c, alpha_s = coll.alpha, strm.alpha
        max_dev = 0.0

    df = initial_df(cfg, lat)
    df_lin = df.copy()
    snapshots = []
    if output_every:
        snapshots.append((0, df.copy()))
    t0 = time.perf_counter()
    for step in range(1, cfg.steps + 1):
        if engine == "quantum":
            df = qlb_step(df, coll, strm, corrections)
            df_lin = classical_step(
                df_lin, g, bc, lat, cfg.tau, cfg.f_b,
                linearized=True, u_adv=cfg.u_adv,
            )
            max_dev = max(max_dev, _relative_max_dev(df, df_lin))
        else:
            df = classical_step(
                df, g, bc, lat, cfg.tau, cfg.f_b,
                linearized=(engine == "classical-linear"), u_adv=cfg.u_adv,
            )
        if output_every and step % output_every == 0:
            snapshots.append((step, df.copy()))
    elapsed = time.perf_counter() - t0
    if not (output_every and snapshots and snapshots[-1][0] == cfg.steps):
        snapshots.append((cfg.steps, df.copy()))

    cavity_ref = run_fields(cfg, linearized=False) if cfg.case == "cavity" else None
    sim, ref, axis, label = _reference_profiles(cfg, df, cavity_ref)
    l2 = l2_relative_error(ref, sim)

    status = "PASS"
    if engine == "quantum" and max_dev > tolerance:
        status = "FAILED"

    report = RunReport(
        case=cfg.case,
        engine=engine,
        nx=cfg.nx,
        ny=cfg.ny,
        n_q=g.n_q,
        n_qa=g.n_qa,
        steps=cfg.steps,
        l2_error=l2,
        reference=label,
        max_dev_vs_linear=max_dev,
        alpha_collision=alpha_c,
        alpha_streaming=alpha_s,
        seconds_per_step=elapsed / max(cfg.steps, 1),
        gate_estimate=gate_count_estimate(g.n_qa),
        tolerance=tolerance,
        status=status,
    )

    if out_dir is not None:
        if strm_op is None and g.n_qa <= MAX_QUBITS:
            # dense operator storage is what the qubit ceiling protects
            # against; beyond it the spy pattern is skipped
            _, strm_op, _ = build_case_operators(cfg)
        emit_artifacts(report, cfg, snapshots, strm_op, Path(out_dir),
                       cavity_ref=cavity_ref)
        if shots:
            counts = sample_counts(encode(_padded(df, g)), shots, seed)
            _write_counts(Path(out_dir) / "counts.csv", counts)
    return report


def _padded(df: np.ndarray, g: GridSpec) -> np.ndarray:
    padded = np.zeros(g.padded_len)
    padded[: g.n_f] = df
    return padded


def _write_counts(path: Path, counts: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.write("basis_state,count\n")
        for idx in np.nonzero(counts)[0]:
            fh.write(f"{idx},{counts[idx]}\n")


def emit_artifacts(
    report: RunReport,
    cfg: CaseConfig,
    snapshots,
    strm_op: LbOperator | None,
    out_dir: Path,
    cavity_ref: np.ndarray | None = None,
) -> None:
    """Write fields.csv, the case profile CSVs, spy.csv and report.json."""
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        g = cfg.grid
        with open(out_dir / "fields.csv", "w") as fh:
            fh.write("step,x,y,rho,ux,uy\n")
            for step, df in snapshots:
                rho, ux, uy = _fields(df, g)
                for y in range(g.ny):
                    for x in range(g.nx):
                        n = x + y * g.nx
                        fh.write(
                            f"{step},{x},{y},{rho[n]:.17g},{ux[n]:.17g},{uy[n]:.17g}\n"
                        )
        _write_profiles(cfg, snapshots[-1][1], out_dir, cavity_ref)
        if strm_op is not None:
            export_coo(strm_op, out_dir / "spy.csv")
        with open(out_dir / "report.json", "w") as fh:
            fh.write(report.to_json() + "\n")
    except OSError as err:
        raise ConfigError(f"cannot write artifacts under {out_dir}: {err}") from err


def _write_profiles(cfg: CaseConfig, df: np.ndarray, out_dir: Path,
                    cavity_ref: np.ndarray | None = None) -> None:
    g = cfg.grid
    rho, ux, uy = _fields(df, g)
    if cfg.case == "ade":
        ref = ade_reference_field(cfg, float(cfg.steps)).reshape(g.ny, g.nx)
        conc = rho.reshape(g.ny, g.nx)
        row = int(np.unravel_index(np.argmax(conc), conc.shape)[0])
        with open(out_dir / "profile.csv", "w") as fh:
            fh.write("x,c,c_ref\n")
            for x in range(g.nx):
                fh.write(f"{x},{conc[row, x]:.17g},{ref[row, x]:.17g}\n")
        return
    y = np.arange(g.ny, dtype=float) + 0.5
    mu = cfg.nu
    ux2 = ux.reshape(g.ny, g.nx)
    if cfg.case in ("poiseuille", "couette"):
        if cfg.case == "poiseuille":
            ref = analytic_poiseuille(y, gradient=-cfg.f_b[0], mu=mu, h=float(g.ny))
        else:
            ref = analytic_couette(
                y, u_w=cfg.u_wall, gradient=-cfg.f_b[0], mu=mu, h=float(g.ny)
            )
        sim = ux2[:, g.nx // 2]
        with open(out_dir / "profile.csv", "w") as fh:
            fh.write("y,ux,ux_ref\n")
            for j in range(g.ny):
                fh.write(f"{y[j]:.17g},{sim[j]:.17g},{ref[j]:.17g}\n")
        return
    # cavity: both centerlines, scored against the full-equilibrium oracle
    if cavity_ref is None:
        cavity_ref = run_fields(cfg, linearized=False)
    _, ux_f, uy_f = _fields(cavity_ref, g)
    uy2 = uy.reshape(g.ny, g.nx)
    ux_ref = ux_f.reshape(g.ny, g.nx)[:, g.nx // 2]
    uy_ref = uy_f.reshape(g.ny, g.nx)[g.ny // 2, :]
    with open(out_dir / "profile_ux.csv", "w") as fh:
        fh.write("y,ux,ux_ref\n")
        for j in range(g.ny):
            fh.write(f"{y[j]:.17g},{ux2[j, g.nx // 2]:.17g},{ux_ref[j]:.17g}\n")
    with open(out_dir / "profile_uy.csv", "w") as fh:
        fh.write("x,uy,uy_ref\n")
        for i_col in range(g.nx):
            fh.write(
                f"{i_col + 0.5:.17g},{uy2[g.ny // 2, i_col]:.17g},{uy_ref[i_col]:.17g}\n"
            )
