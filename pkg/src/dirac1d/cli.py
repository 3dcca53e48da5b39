"""Command-line front end: `dirac1d run <config.toml>` and `dirac1d verify <suite>`."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import functionals as fn
from .field import (
    Bump,
    FromFile,
    Gaussian,
    GridSpec,
    Zero,
    init_field,
    support_bounds,
    write_snapshot,
)
from .models import Model, glimm_constants, preset
from .solver import PicardDivergenceError, SolverConfig, evolve
from .verify import run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_DOMAIN = 4


class ConfigError(ValueError):
    pass


def _require_keys(section: dict, allowed: set, required: set, where: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in [{where}]")
    missing = required - set(section)
    if missing:
        raise ConfigError(f"missing key(s) {sorted(missing)} in [{where}]")


def _parse_complex(val, where: str) -> complex:
    if isinstance(val, (int, float)):
        return complex(val)
    if isinstance(val, list) and len(val) == 2:
        return complex(float(val[0]), float(val[1]))
    raise ConfigError(f"amplitude in [{where}] must be a number or [re, im]")


def _parse_model(section: dict) -> Model:
    _require_keys(
        section, {"name", "coefficient", "w", "gamma"}, {"name"}, "model"
    )
    name = section["name"]
    if name == "custom":
        w = {}
        for triple in section.get("w", []):
            if len(triple) != 3:
                raise ConfigError("custom w entries must be [j, k, w_jk] triples")
            j, k, wjk = triple
            w[(int(j), int(k))] = float(wjk)
        return Model(w_coeffs=w, gn_coupling=float(section.get("gamma", 0.0)),
                     name="custom")
    if "w" in section or "gamma" in section:
        raise ConfigError("w/gamma only apply to model name 'custom'")
    try:
        return preset(name, float(section.get("coefficient", 1.0)))
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _parse_profile(section: dict, which: str, where: str):
    _require_keys(
        section,
        {"profile", "amplitude", "center", "width", "radius", "path"},
        {"profile"},
        where,
    )
    kind = section["profile"]
    if kind == "zero":
        return Zero()
    if kind == "gaussian":
        return Gaussian(
            _parse_complex(section.get("amplitude", 1.0), where),
            float(section.get("center", 0.0)),
            float(section.get("width", 1.0)),
        )
    if kind == "bump":
        return Bump(
            _parse_complex(section.get("amplitude", 1.0), where),
            float(section.get("center", 0.0)),
            float(section.get("radius", 1.0)),
        )
    if kind == "file":
        if "path" not in section:
            raise ConfigError(f"profile 'file' in [{where}] needs a path")
        return FromFile(section["path"], which)
    raise ConfigError(f"unknown profile {kind!r} in [{where}]")


def load_config(path):
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    try:
        doc = tomllib.loads(raw.decode())
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"TOML parse error: {e}") from None

    _require_keys(doc, {"model", "grid", "initial", "run", "solver"},
                  {"model", "grid", "initial", "run"}, "top level")
    model = _parse_model(doc["model"])

    g = doc["grid"]
    _require_keys(g, {"x_min", "x_max", "n_cells"}, {"x_min", "x_max", "n_cells"},
                  "grid")
    try:
        grid = GridSpec(float(g["x_min"]), float(g["x_max"]), int(g["n_cells"]))
    except ValueError as e:
        raise ConfigError(str(e)) from None

    init = doc["initial"]
    _require_keys(init, {"u", "v"}, {"u", "v"}, "initial")
    pu = _parse_profile(init["u"], "u", "initial.u")
    pv = _parse_profile(init["v"], "v", "initial.v")

    r = doc["run"]
    _require_keys(
        r, {"t_final", "snapshot_stride", "windows", "out_dir"}, {"t_final"}, "run"
    )
    t_final = float(r["t_final"])
    if t_final <= 0:
        raise ConfigError("t_final must be positive")
    stride = int(r.get("snapshot_stride", 1))
    windows = tuple((float(a), float(b)) for a, b in r.get("windows", []))
    for a, b in windows:
        if a >= b:
            raise ConfigError(f"window [{a}, {b}] needs a < b")
    out_dir = r.get("out_dir", "out")

    s = doc.get("solver", {})
    _require_keys(
        s, {"scheme", "f_substep", "max_picard_iters", "picard_tol"}, set(), "solver"
    )
    try:
        cfg = SolverConfig(
            scheme_order=s.get("scheme", "strang2"),
            f_substep=s.get("f_substep", "midpoint"),
            max_picard_iters=int(s.get("max_picard_iters", 8)),
            picard_tol=float(s.get("picard_tol", 1e-12)),
        )
    except ValueError as e:
        raise ConfigError(str(e)) from None

    return model, grid, pu, pv, t_final, stride, windows, out_dir, cfg


def _write_diagnostics(records, windows, path):
    cols = "t,L,Q,D,glimm,linf,cumD"
    for i in range(len(windows)):
        cols += f",window_{i}"
    with open(path, "w") as fh:
        fh.write(cols + "\n")
        for r in records:
            row = [r.t, r.L, r.Q, r.D, r.glimm, r.linf, r.cumulative_D_integral]
            row.extend(val for _, val in r.local_charges)
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")


def cmd_run(config_path, out_override=None, stride_override=None) -> int:
    try:
        (model, grid, pu, pv, t_final, stride, windows, out_dir,
         cfg) = load_config(config_path)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    if out_override is not None:
        out_dir = out_override
    if stride_override is not None:
        stride = stride_override

    f0 = init_field(grid, pu, pv)
    bounds = support_bounds(f0, 0.0)
    if bounds is not None:
        margin = 2 * grid.dx
        if (bounds[0] - t_final < grid.x_min + margin
                or bounds[1] + t_final > grid.x_max - margin):
            print(
                "domain violation: initial support reaches the boundary "
                f"before t_final={t_final} (support {bounds}, "
                f"domain [{grid.x_min}, {grid.x_max}])",
                file=sys.stderr,
            )
            return EXIT_DOMAIN

    try:
        traj = evolve(f0, model, t_final, cfg, snapshot_stride=stride,
                      windows=windows)
    except PicardDivergenceError as e:
        print(f"solver failure: {e}", file=sys.stderr)
        return EXIT_SOLVER

    out = Path(out_dir)
    (out / "snapshots").mkdir(parents=True, exist_ok=True)
    _write_diagnostics(traj.records, windows, out / "diagnostics.csv")
    for f in traj.snapshots:
        n = int(round(f.t / grid.dt))
        write_snapshot(f, out / "snapshots" / f"step_{n:06d}.csv")

    gc = glimm_constants(model)
    start = traj.records[0].L + gc.K * traj.records[0].Q
    hypothesis_met = (not gc.smallness_required) or start <= gc.delta
    report = {
        "model": model.name,
        "constants": {
            "c": gc.c,
            "K": gc.K,
            "delta": None if math.isinf(gc.delta) else gc.delta,
            "smallness_required": gc.smallness_required,
        },
        "initial_glimm_value": start,
        "hypothesis_met": hypothesis_met,
        "monotonicity": None,
        "linf_bound": None,
        "window_bounds": {},
    }
    if len(traj.records) >= 2:
        rep = fn.check_monotonicity(traj, model)
        report["monotonicity"] = {
            "max_violation": rep.max_violation,
            "hypothesis_met": rep.hypothesis_met,
        }
        sup_t, bound, ok = fn.linf_bound_check(traj, model)
        report["linf_bound"] = {"sup": sup_t, "bound": bound, "holds": ok}
    for a, b in windows:
        series = fn.window_translate_bound(traj, a, b, model)
        report["window_bounds"][f"[{a},{b}]"] = all(flag for *_, flag in series)
    (out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(suite: str) -> int:
    try:
        results = run_suite(suite)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    width = max(len(r.name) for r in results)
    all_ok = True
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        all_ok = all_ok and r.passed
        print(f"{mark}  {r.name:<{width}}  {r.detail}")
    print(f"{'all checks passed' if all_ok else 'FAILURES present'}")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dirac1d",
        description="1D nonlinear massless Dirac simulator and diagnostics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a simulation from a TOML config")
    p_run.add_argument("config")
    p_run.add_argument("--snapshots", type=int, default=None,
                       help="override snapshot stride")
    p_run.add_argument("--out", default=None, help="override output directory")
    p_run.add_argument("--threads", type=int, default=None,
                       help="accepted for interface compatibility; evaluation "
                       "is vectorized and deterministic regardless")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument(
        "suite",
        choices=["functionals", "convergence", "lemmas", "decay", "stability", "all"],
    )
    p_verify.add_argument("--threads", type=int, default=None)

    args = parser.parse_args(argv)
    if args.command == "run":
        return cmd_run(args.config, out_override=args.out,
                       stride_override=args.snapshots)
    return cmd_verify(args.suite)


if __name__ == "__main__":
    sys.exit(main())
