"""Command-line benchmark runner.

    qlbm run --config poiseuille.cfg
    qlbm estimate-gates --qubits 11
    qlbm spy --config cavity.cfg

Configs are flat key-value text files (``key = value``, ``#`` comments).
Recognized keys: case, nx, ny, steps, tau, nu, diffusion, fb_x, fb_y, uw,
engine, out_dir, seed, shots, output_every.  Unknown keys are rejected; at
most one of tau/nu/diffusion may be given (the case default applies
otherwise).  Exit codes: 0 run PASS, 1 run FAILED, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import ConfigError, build_case_operators, gate_count_estimate, run_case
from .cases import CASES, CaseConfig, ade_case, cavity_case, couette_case, poiseuille_case, variant
from .operators import export_coo

_KEYS = {
    "case", "nx", "ny", "steps", "tau", "nu", "diffusion",
    "fb_x", "fb_y", "uw", "engine", "out_dir", "seed", "shots", "output_every",
}
_INT_KEYS = {"nx", "ny", "steps", "seed", "shots", "output_every"}
_FLOAT_KEYS = {"tau", "nu", "diffusion", "fb_x", "fb_y", "uw"}


def parse_config_text(text: str) -> dict:
    """Parse the flat key-value format into a typed dict."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for sep in ("=", ":"):
            if sep in line:
                key, _, val = line.partition(sep)
                break
        else:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, val = key.strip(), val.strip()
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(val)
            elif key in _FLOAT_KEYS:
                values[key] = float(val)
            else:
                values[key] = val
        except ValueError as err:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {err}") from err
    return values


def config_from_values(values: dict) -> CaseConfig:
    """Build a CaseConfig from parsed key-values, deriving tau as needed."""
    if "case" not in values:
        raise ConfigError("missing required key 'case'")
    case = values["case"]
    if case not in CASES:
        raise ConfigError(f"unknown case {case!r}, expected one of {CASES}")
    given = {k for k in ("tau", "nu", "diffusion") if k in values}
    if len(given) > 1:
        raise ConfigError(f"give at most one of tau/nu/diffusion, got {sorted(given)}")

    factory = {
        "ade": ade_case,
        "poiseuille": poiseuille_case,
        "couette": couette_case,
        "cavity": cavity_case,
    }[case]
    kwargs = {k: values[k] for k in ("nx", "ny", "steps") if k in values}
    if case == "ade" and "diffusion" in values:
        kwargs["diffusion"] = values["diffusion"]
    if case in ("couette", "cavity") and "uw" in values:
        kwargs["u_wall"] = values["uw"]
    try:
        cfg = factory(**kwargs)
        overrides = {}
        if "tau" in values:
            overrides["tau"] = values["tau"]
        elif "nu" in values:
            overrides["tau"] = 3.0 * values["nu"] + 0.5
        elif "diffusion" in values and case != "ade":
            overrides["tau"] = 3.0 * values["diffusion"] + 0.5
        if "fb_x" in values or "fb_y" in values:
            overrides["f_b"] = (values.get("fb_x", 0.0), values.get("fb_y", 0.0))
        if "uw" in values and case == "poiseuille":
            raise ConfigError("poiseuille has stationary walls; uw is not accepted")
        if overrides:
            cfg = variant(cfg, **overrides)
    except ValueError as err:
        if isinstance(err, ConfigError):
            raise
        raise ConfigError(str(err)) from err
    return cfg


def load_config(path: str | Path) -> tuple[CaseConfig, dict]:
    """Read a config file; returns the case and the run options."""
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    values = parse_config_text(text)
    cfg = config_from_values(values)
    run_opts = {k: values[k] for k in
                ("engine", "out_dir", "seed", "shots", "output_every")
                if k in values}
    return cfg, run_opts


def _cmd_run(args) -> int:
    cfg, opts = load_config(args.config)
    report = run_case(
        cfg,
        engine=opts.get("engine", "quantum"),
        out_dir=opts.get("out_dir"),
        shots=opts.get("shots"),
        seed=opts.get("seed"),
        output_every=opts.get("output_every"),
    )
    print(report.to_json())
    return 0 if report.status == "PASS" else 1


def _cmd_estimate_gates(args) -> int:
    print(json.dumps(gate_count_estimate(args.qubits), indent=2, sort_keys=True))
    return 0


def _cmd_spy(args) -> int:
    cfg, opts = load_config(args.config)
    out_dir = Path(opts.get("out_dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)
    coll_op, strm_op, _ = build_case_operators(cfg)
    export_coo(strm_op, out_dir / "spy_streaming.csv")
    export_coo(coll_op, out_dir / "spy_collision.csv")
    print(f"wrote {out_dir / 'spy_streaming.csv'} and {out_dir / 'spy_collision.csv'}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qlbm",
        description="Quantum lattice Boltzmann benchmark runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a benchmark case from a config file")
    p_run.add_argument("--config", required=True, help="path to a key=value config")
    p_run.set_defaults(fn=_cmd_run)

    p_gates = sub.add_parser("estimate-gates", help="closed-form gate-count estimates")
    p_gates.add_argument("--qubits", type=int, required=True, help="total qubit count")
    p_gates.set_defaults(fn=_cmd_estimate_gates)

    p_spy = sub.add_parser("spy", help="export operator sparsity patterns")
    p_spy.add_argument("--config", required=True, help="path to a key=value config")
    p_spy.set_defaults(fn=_cmd_spy)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
