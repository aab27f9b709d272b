"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline.
"""

import time

import numpy as np
import pytest

from qlbm import (
    BcSpec,
    GridSpec,
    broken_step_no_hadamard,
    broken_step_zero_padding,
    build_collision_operator,
    build_streaming_operator,
    classical_step,
    collision_kernel,
    d2q9,
    decompose_operator,
    dilate_diagonal,
    encode,
    apply_dilated,
    apply_hadamard_ancilla,
    gate_count_estimate,
    lcu_diagonal,
    moments,
    qlb_step,
    run_case,
    svd_decompose,
)
from qlbm.cases import (
    ade_case,
    boundary_spec,
    cavity_case,
    couette_case,
    initial_df,
    poiseuille_case,
    variant,
)
from qlbm.operators import GENERIC, LbOperator, advection_collision_kernel, export_coo

LAT = d2q9()
RNG = np.random.default_rng(2024)


def check(criterion: str, ok: bool, detail: str):
    print(f"[acceptance] {criterion}: {'PASS' if ok else 'FAIL'}  ({detail})")
    assert ok, f"{criterion}: {detail}"


def build_quantum(cfg):
    g, bc = cfg.grid, boundary_spec(cfg)
    if cfg.u_adv is not None:
        kern = advection_collision_kernel(LAT, cfg.tau, cfg.u_adv)
    else:
        kern = collision_kernel(LAT, cfg.tau)
    coll = decompose_operator(build_collision_operator(kern, g))
    strm = decompose_operator(build_streaming_operator(g, bc, LAT))
    return g, bc, coll, strm


def rel_max_dev(a, b):
    return float(np.abs(a - b).max() / np.abs(b).max())


# criterion 1 configs, sized to n_qa in {9, 10}
SMALL_CONFIGS = [
    ade_case(nx=5, ny=10, steps=100),
    poiseuille_case(3, 8, 500),
    variant(couette_case(nx=3, ny=8, steps=900), u_wall=0.1),
    variant(cavity_case(nx=5, ny=5, steps=900)),
]


@pytest.mark.parametrize("cfg", SMALL_CONFIGS, ids=lambda c: c.case)
def test_criterion_1_oracle_equivalence(cfg):
    g, bc, coll, strm = build_quantum(cfg)
    assert g.n_qa in (9, 10)
    from qlbm import forcing_vector, moving_wall_correction

    corr = (forcing_vector(g, LAT, cfg.f_b), moving_wall_correction(g, bc, LAT))
    t0 = time.perf_counter()

    single = 0.0
    for _ in range(20):
        df = RNG.standard_normal(g.n_f)
        q = qlb_step(df, coll, strm, corr)
        c = classical_step(df, g, bc, LAT, cfg.tau, cfg.f_b,
                           linearized=True, u_adv=cfg.u_adv)
        single = max(single, rel_max_dev(q, c))

    df_q = initial_df(cfg, LAT)
    df_c = df_q.copy()
    accumulated = 0.0
    for _ in range(cfg.steps):
        df_q = qlb_step(df_q, coll, strm, corr)
        df_c = classical_step(df_c, g, bc, LAT, cfg.tau, cfg.f_b,
                              linearized=True, u_adv=cfg.u_adv)
        accumulated = max(accumulated, rel_max_dev(df_q, df_c))
    elapsed = time.perf_counter() - t0

    ok = single <= 1e-9 and accumulated <= 1e-7 and elapsed < 120.0
    check(
        f"1 oracle-equivalence [{cfg.case}, n_qa={g.n_qa}]",
        ok,
        f"single-step {single:.2e} <= 1e-9, {cfg.steps}-step {accumulated:.2e} <= 1e-7, "
        f"{elapsed:.1f}s < 120s",
    )


def test_criterion_2_gaussian_hill():
    rep = run_case(ade_case(), engine="quantum")
    ok = rep.l2_error <= 0.08 and rep.status == "PASS"
    check(
        "2 advected-gaussian-hill",
        ok,
        f"10x10 tau=0.515 100 steps: L2 = {100 * rep.l2_error:.2f}% <= 8%",
    )


PAPER_POISEUILLE = [
    (3, 8, 500, 0.0234, 0.035),
    (5, 10, 700, 0.0135, 0.020),
    (7, 16, 900, 0.0060, 0.010),
    (9, 24, 1200, 0.0056, 0.010),
]


@pytest.mark.parametrize("nx,ny,steps,paper,cap", PAPER_POISEUILLE,
                         ids=["3x8", "5x10", "7x16", "9x24"])
def test_criterion_3_poiseuille_table(nx, ny, steps, paper, cap):
    rep = run_case(poiseuille_case(nx, ny, steps), engine="quantum")
    ok = rep.l2_error <= cap and abs(rep.l2_error - paper) <= 0.01
    check(
        f"3 poiseuille-table [{nx}x{ny}]",
        ok,
        f"L2 = {100 * rep.l2_error:.3f}% (cap {100 * cap:.1f}%, "
        f"published {100 * paper:.2f}%, diff {100 * abs(rep.l2_error - paper):.3f}pp)",
    )


@pytest.mark.parametrize("with_gradient", [True, False], ids=["with-G", "no-G"])
def test_criterion_4_couette(with_gradient):
    rep = run_case(couette_case(with_gradient=with_gradient), engine="quantum")
    ok = rep.l2_error <= 0.01
    check(
        f"4 couette [{'with' if with_gradient else 'without'} gradient]",
        ok,
        f"7x16 u_w=0.1 900 steps: L2 = {100 * rep.l2_error:.2f}% <= 1%",
    )


def count_sign_changes(profile):
    live = profile[np.abs(profile) > 1e-12 * np.abs(profile).max()]
    return int(np.sum(np.diff(np.sign(live)) != 0))


def test_criterion_5_lid_driven_cavity():
    cfg = cavity_case()  # 10x10, Re = 10, tau = 0.8, 1000 steps
    assert cfg.tau == pytest.approx(0.8)
    rep = run_case(cfg, engine="quantum")

    from qlbm.bench import run_fields
    df = run_fields(cfg, linearized=True)
    g = cfg.grid
    rho, jx, jy = moments(df, g, LAT)
    ux = (jx / rho).reshape(g.ny, g.nx)[:, g.nx // 2]
    uy = (jy / rho).reshape(g.ny, g.nx)[g.ny // 2, :]
    sc_x, sc_y = count_sign_changes(ux), count_sign_changes(uy)

    ok = rep.max_dev_vs_linear <= 1e-7 and sc_x == 1 and sc_y == 1
    check(
        "5 lid-driven-cavity",
        ok,
        f"quantum-vs-linear over 1000 steps {rep.max_dev_vs_linear:.2e} <= 1e-7; "
        f"centerline sign changes ux={sc_x}, uy={sc_y} (single primary vortex)",
    )


def test_criterion_6_interference_identities():
    g = GridSpec(3, 8)
    coll = decompose_operator(
        build_collision_operator(collision_kernel(LAT, 0.8), g)
    )
    strm = decompose_operator(build_streaming_operator(g, BcSpec.channel(), LAT))
    df = RNG.standard_normal(g.n_f)
    padded = np.zeros(g.padded_len)
    padded[: g.n_f] = df

    # direct dense complex algebra for both operator pairs
    def dense_parts(dec):
        t = dec.triple
        u, v = t.u.dense(), t.v.dense()
        s = np.sqrt(np.clip(1.0 - t.d**2, 0.0, None))
        return u @ np.diag(t.d) @ v, u @ np.diag(s) @ v

    worst_identity = 0.0
    spurious_norms = {}
    for second, label in ((coll, "collision+collision"), (strm, "collision+streaming")):
        a_c, r_c = dense_parts(coll)
        a_s, r_s = dense_parts(second)
        scale = coll.alpha * second.alpha
        expected = scale * (a_s @ (a_c @ padded) - r_s @ (r_c @ padded))
        spurious_norms[label] = float(np.abs(scale * r_s @ (r_c @ padded)).max())
        for fn in (broken_step_zero_padding, broken_step_no_hadamard):
            got = fn(df, coll, second)
            worst_identity = max(
                worst_identity, float(np.abs(got - expected[: g.n_f]).max())
            )

    # post-Hadamard second block of the correct pipeline
    st = encode(padded)
    for m in (coll.v_dil, coll.d_dil, coll.u_dil):
        st = apply_dilated(st, m)
    st = apply_hadamard_ancilla(st)
    second_block = float(np.abs(st.amps[g.padded_len:]).max())

    # orthogonal operators: contamination term is identically zero
    perm = decompose_operator(build_streaming_operator(g, BcSpec.periodic(), LAT))
    _, r_p = dense_parts(perm)
    ortho_spurious = float(np.abs(r_p @ (r_p @ padded)).max())
    ok_orth = (
        ortho_spurious == 0.0
        and np.abs(
            broken_step_no_hadamard(df, perm, perm) - qlb_step(df, perm, perm)
        ).max() <= 1e-12
    )

    ok = (
        worst_identity <= 1e-10
        and spurious_norms["collision+collision"] > 1e-6
        and second_block <= 1e-12
        and ok_orth
    )
    check(
        "6 interference-identities",
        ok,
        f"broken-vs-algebra {worst_identity:.2e} <= 1e-10; nonorthogonal spurious "
        f"{spurious_norms['collision+collision']:.2e} > 1e-6; post-H second block "
        f"{second_block:.2e} <= 1e-12; orthogonal case spurious {ortho_spurious:.1e}",
    )


def test_criterion_7_unitary_factory():
    g = GridSpec(3, 8)
    ops = [
        build_collision_operator(collision_kernel(LAT, 0.74), g),
        build_collision_operator(
            advection_collision_kernel(LAT, 0.515, (0.1, 0.1)), g
        ),
        build_streaming_operator(g, BcSpec.channel(u_top=0.1), LAT),
        build_streaming_operator(g, BcSpec.periodic(), LAT),
        build_streaming_operator(g, BcSpec.cavity(0.1), LAT),
    ]
    worst_defect = 0.0
    worst_recon = 0.0
    for op in ops:
        dec = decompose_operator(op)
        for m in (dec.v_dil, dec.d_dil, dec.u_dil):
            worst_defect = max(worst_defect, m.unitarity_defect())
            dense = m.dense()
            worst_defect = max(
                worst_defect,
                float(np.abs(dense.conj().T @ dense - np.eye(2 * m.dim)).max()),
            )
        t = dec.triple
        recon = t.u.dense() @ np.diag(t.sigma) @ t.v.dense()
        worst_recon = max(
            worst_recon,
            float(np.linalg.norm(recon - op.dense) / np.linalg.norm(op.dense)),
        )

    # circuit identity for the tau = 0.8 collision diagonal
    t = svd_decompose(ops[0])
    d1, d2 = lcu_diagonal(t)
    dim = t.sigma.size
    h = np.kron(np.array([[1, 1], [1, -1]]) / np.sqrt(2), np.eye(dim))
    controlled = np.diag(np.concatenate([d1, d2]))
    circuit_err = float(
        np.abs(h @ controlled @ h - dilate_diagonal(t).dense()).max()
    )

    # kron lift agrees with the dense-path decomposition in action
    coll_op = ops[0]
    k = decompose_operator(coll_op)
    d = decompose_operator(
        LbOperator(dim=coll_op.dim, dense=coll_op.dense, structure=GENERIC,
                   n_f=coll_op.n_f)
    )
    worst_action = 0.0
    for _ in range(50):
        v = RNG.standard_normal(coll_op.dim)
        a1 = np.concatenate([v, v]).astype(complex)
        a2 = a1.copy()
        for m1, m2 in zip((k.v_dil, k.d_dil, k.u_dil), (d.v_dil, d.d_dil, d.u_dil)):
            a1, a2 = m1.apply(a1), m2.apply(a2)
        worst_action = max(worst_action, float(np.abs(a1 - a2).max() / np.abs(a2).max()))

    ok = (
        worst_defect <= 1e-10
        and worst_recon <= 1e-10
        and circuit_err <= 1e-12
        and worst_action <= 1e-9
    )
    check(
        "7 unitary-factory",
        ok,
        f"unitarity {worst_defect:.2e} <= 1e-10; reconstruction {worst_recon:.2e} "
        f"<= 1e-10; circuit identity {circuit_err:.2e} <= 1e-12; "
        f"kron-vs-dense action {worst_action:.2e} <= 1e-9",
    )


def test_criterion_8_streaming_structure(tmp_path):
    bc_sets = {
        "periodic": BcSpec.periodic(),
        "channel": BcSpec.channel(),
        "sheared": BcSpec.channel(u_top=0.1),
        "cavity": BcSpec.cavity(0.1),
    }
    g = GridSpec(4, 4)
    all_ok = True
    details = []
    for name, bc in bc_sets.items():
        op = build_streaming_operator(g, bc, LAT)
        binary = bool(((op.dense == 0) | (op.dense == 1)).all())
        one_per_row = bool((op.dense.sum(axis=1) == 1).all())
        one_per_col = bool((op.dense.sum(axis=0) == 1).all())
        rest_identity = bool(
            (op.dense[: g.n_g, : g.n_g] == np.eye(g.n_g)).all()
        )
        # block coupling: periodic stays within each direction block
        # (block-diagonal); walls couple a direction only with its reflection
        blocks_ok = True
        for r in range(g.n_f):
            i, j = r // g.n_g, op.perm[r] // g.n_g
            allowed = (i,) if name == "periodic" else (i, LAT.opposite[i])
            blocks_ok = blocks_ok and j in allowed
        cyclic_ok = True
        if name == "periodic":
            perm = np.arange(g.padded_len)
            for _ in range(4):  # all shift cycles divide the 4x4 axis lengths
                perm = op.perm[perm]
            cyclic_ok = bool((perm == np.arange(g.padded_len)).all())
        export_coo(op, tmp_path / f"spy_{name}.csv")
        emitted = (tmp_path / f"spy_{name}.csv").stat().st_size > 0
        case_ok = (binary and one_per_row and one_per_col and rest_identity
                   and blocks_ok and cyclic_ok and emitted)
        all_ok = all_ok and case_ok
        details.append(f"{name}:{'ok' if case_ok else 'BAD'}")
    check("8 streaming-structure", all_ok, ", ".join(details))


def test_criterion_9_gate_estimates():
    exact = (
        gate_count_estimate(9)["diagonal_per_op"] == 1024
        and gate_count_estimate(9)["generic_per_op"] == 130816
        and gate_count_estimate(2)["diagonal_per_op"] == 8
        and gate_count_estimate(12)["total"]
        == 2 * 2**13 + 4 * 2**11 * (2**12 - 1)
    )
    ratios = [
        gate_count_estimate(n + 1)["total"] / gate_count_estimate(n)["total"]
        for n in range(9, 21)
    ]
    ratio_ok = all(3.9 < r < 4.1 for r in ratios)
    # published synthesis counts are toolkit-specific: same order, not equal
    published = 31020 + 62168
    est = gate_count_estimate(9)["generic_per_op"]
    order_ok = est != published and 0.1 <= est / published <= 10.0
    ok = exact and ratio_ok and order_ok
    check(
        "9 gate-estimates",
        ok,
        f"closed forms exact; growth ratios in ({min(ratios):.3f}, {max(ratios):.3f}) "
        f"subset of (3.9, 4.1); order-only vs published synthesis ({est} vs {published})",
    )


@pytest.mark.parametrize("engine", ["classical", "quantum"])
def test_criterion_10_conservation(engine):
    g = GridSpec(5, 10)
    bc = BcSpec.periodic()
    tau = 0.74
    df = np.repeat(LAT.w, g.n_g) + 0.05 * RNG.standard_normal(g.n_f)
    mass_scale = abs(df.sum())
    coll = decompose_operator(build_collision_operator(collision_kernel(LAT, tau), g))
    strm = decompose_operator(build_streaming_operator(g, bc, LAT))

    worst_mass = worst_mom = 0.0
    for _ in range(100):
        prev_mass = df.sum()
        _, jx_p, jy_p = moments(df, g, LAT)
        if engine == "quantum":
            df = qlb_step(df, coll, strm)
        else:
            df = classical_step(df, g, bc, LAT, tau, linearized=True)
        _, jx, jy = moments(df, g, LAT)
        worst_mass = max(worst_mass, abs(df.sum() - prev_mass) / mass_scale)
        worst_mom = max(
            worst_mom,
            abs(jx.sum() - jx_p.sum()) / mass_scale,
            abs(jy.sum() - jy_p.sum()) / mass_scale,
        )
    ok = worst_mass <= 1e-12 and worst_mom <= 1e-12
    check(
        f"10 conservation [{engine}]",
        ok,
        f"per-step relative drift over 100 steps: mass {worst_mass:.2e}, "
        f"momentum {worst_mom:.2e}, both <= 1e-12",
    )
