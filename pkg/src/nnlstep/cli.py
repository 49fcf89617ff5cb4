"""Command-line front end.

Subcommands: scatter, zeros, predict, simulate, compare, report.
Configuration comes from a flat ``key = value`` file (see README for
the key reference); a few common knobs have flag overrides.

Exit codes: 0 ok, 2 configuration, 3 numerical failure,
4 assumption violation, 5 blow-up detected.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io as nio
from ._validation import ConfigError
from .asymptotics import predict as predict_op
from .errors import (
    AssumptionViolation,
    BlowUpDetected,
    NnlstepError,
    NumericalFailure,
)
from .model import StepAsymptoticsModel
from .pde import SimulationConfig, compare as compare_op, simulate as simulate_op
from .scattering import BackgroundParams, InitialProfile, SpectralData

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_ASSUMPTION = 4
EXIT_BLOWUP = 5

DEFAULTS = {
    "profile_half_width": None,
    "profile_dx": 0.01,
    "k_min": 0.05,
    "k_max": 20.0,
    "k_points": 200,
    "k_scale": "log",
    "xi_grid": "0.05:1.5:16",
    "t_list": "10,20,40",
    "guard_fraction": 0.05,
    "xi_floor": 1e-3,
    "threads": 1,
    "sim_L": 250.0,
    "sim_dx": 0.05,
    "sim_dt_factor": 0.25,
    "sim_t_end": 40.0,
    "sim_sponge_width": 25.0,
    "sim_sponge_strength": 2.0,
    "sim_ramp_width": None,
    "snapshot_format": "npz",
    "kink_x0": "-8:8:33",
}


def parse_config(path) -> dict:
    cfg = dict(DEFAULTS)
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        cfg[key] = val
    for key in ("A", "R"):
        if key not in cfg:
            raise ConfigError(f"config must define {key}")
    return cfg


def _as_float(cfg, key):
    v = cfg[key]
    return None if v in (None, "none", "") else float(v)


def _as_int(cfg, key):
    return int(float(cfg[key]))


def _grid_spec(text, name):
    try:
        a, b, n = text.split(":")
        return np.linspace(float(a), float(b), int(n))
    except Exception as exc:
        raise ConfigError(f"bad {name} specification {text!r}: use a:b:n") from exc


def _t_list(text):
    try:
        return [float(s) for s in str(text).split(",") if s.strip()]
    except Exception as exc:
        raise ConfigError(f"bad t list {text!r}") from exc


def load_inputs(cfg):
    bg = BackgroundParams(float(cfg["A"]), float(cfg["R"]))
    if cfg.get("profile_csv"):
        profile = nio.read_profile_csv(cfg["profile_csv"], bg)
    else:
        profile = InitialProfile.pure_step(
            bg, half_width=_as_float(cfg, "profile_half_width"),
            dx=float(cfg["profile_dx"]))
    return bg, profile


def _fit_model(cfg, profile):
    model = StepAsymptoticsModel(
        guard_fraction=float(cfg["guard_fraction"]),
        xi_floor=float(cfg["xi_floor"]))
    return model.fit(profile)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_scatter(args):
    cfg = parse_config(args.config)
    bg, profile = load_inputs(cfg)
    spec = SpectralData.from_profile(profile)
    kmin, kmax, npts = float(cfg["k_min"]), float(cfg["k_max"]), _as_int(cfg, "k_points")
    half = (np.geomspace(kmin, kmax, npts // 2) if cfg["k_scale"] == "log"
            else np.linspace(kmin, kmax, npts // 2))
    ks = np.concatenate([-half[::-1], half])
    threads = max(_as_int(cfg, "threads"), int(args.threads or 1))
    chunks = np.array_split(ks, max(threads, 1))
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        parts = list(pool.map(lambda c: spec.grid(c.astype(complex)), chunks))
    a1 = np.concatenate([p[0] for p in parts])
    a2 = np.concatenate([p[1] for p in parts])
    b = np.concatenate([p[2] for p in parts])
    # b(-k) exactly from the mirrored grid point (the grid is symmetric)
    b_m = b[::-1]
    r1 = b / a1
    r2 = np.conj(b_m) / a2
    residual = np.max(np.abs(a1 * a2 - b * np.conj(b_m) - 1.0))
    out = _out_dir(args)
    nio.write_spectral_csv(out / "spectral.csv", ks, a1, a2, b, r1, r2)
    summary = {
        "A": bg.A, "R": bg.R, "k_points": int(ks.size),
        "determinant_identity_max_residual": float(residual),
        "pure_step": bool(profile.analytic_step),
    }
    nio.write_report_json(out / "scatter_summary.json", summary)
    print(f"wrote {out / 'spectral.csv'} "
          f"(identity residual {residual:.3e})")
    return EXIT_OK


def cmd_zeros(args):
    cfg = parse_config(args.config)
    _, profile = load_inputs(cfg)
    model = _fit_model(cfg, profile)
    out = _out_dir(args)
    nio.write_zeros_json(out / "zeros.json", model.zeros_, model.omegas_,
                         model.report_)
    levels = [{"omega": w, "winding_over_pi": model.engine_.winding(w) / np.pi}
              for w in model.omegas_.omegas]
    nio.write_report_json(out / "winding_levels.json",
                          {"n": model.zeros_.n, "levels": levels})
    print(f"n = {model.zeros_.n}, all assumptions ok: {model.report_.all_ok}")
    if not model.report_.all_ok:
        for d in model.report_.diagnostics:
            print("  violation:", d)
        return EXIT_ASSUMPTION
    return EXIT_OK


def cmd_predict(args):
    cfg = parse_config(args.config)
    _, profile = load_inputs(cfg)
    model = _fit_model(cfg, profile)
    model.report_.require()
    xis = _grid_spec(args.xi_grid or cfg["xi_grid"], "xi grid")
    ts = _t_list(args.t_list or cfg["t_list"])
    out = _out_dir(args)
    preds, skipped = [], []
    for xi in xis:
        for t in ts:
            try:
                preds.append(model.predict_one(xi, t))
            except AssumptionViolation as exc:
                skipped.append({"xi": float(xi), "t": float(t), "reason": str(exc)})
    nio.write_prediction_csv(out / "predictions.csv", preds)
    phase_rows = []
    for xi in sorted({abs(p.xi) for p in preds}):
        pv = model.engine_.direction(xi, model.zeros_)
        phase_rows.append((xi, pv.nu, pv.m, pv.chi_at_minus_xi, pv.delta0))
    nio.write_phase_csv(out / "phase.csv", phase_rows)
    if skipped:
        nio.write_report_json(out / "skipped_rays.json", {"skipped": skipped})
    if args.kink:
        x0s = _grid_spec(cfg["kink_x0"], "kink x0 grid")
        rows = []
        for m in range(model.zeros_.n):
            for side in ("x_positive", "x_negative"):
                prof_k = model.kink(m, side)
                for t in ts:
                    for x0 in x0s:
                        rows.append((m, side, x0, t, prof_k.value(x0, t)))
        nio.write_kink_csv(out / "kink.csv", rows)
    print(f"wrote {len(preds)} predictions "
          f"({len(skipped)} rays in guard bands skipped)")
    return EXIT_OK


def _sim_config(cfg, ts):
    dx = float(cfg["sim_dx"])
    return SimulationConfig(
        L=float(cfg["sim_L"]), dx=dx,
        dt=float(cfg["sim_dt_factor"]) * dx * dx,
        t_end=float(cfg["sim_t_end"]),
        sponge_width=float(cfg["sim_sponge_width"]),
        sponge_strength=float(cfg["sim_sponge_strength"]),
        snapshot_times=tuple(ts),
        ramp_width=_as_float(cfg, "sim_ramp_width"))


def cmd_simulate(args):
    cfg = parse_config(args.config)
    _, profile = load_inputs(cfg)
    ts = _t_list(args.t_list or cfg["t_list"])
    sim_cfg = _sim_config(cfg, ts)
    snaps = simulate_op(profile, sim_cfg)
    out = _out_dir(args)
    paths = nio.write_snapshots(out / "snapshots", snaps,
                                fmt=cfg["snapshot_format"])
    meta = {"t": [s.t for s in snaps], "L": sim_cfg.L, "dx": sim_cfg.dx,
            "dt": sim_cfg.dt, "ramp_width": sim_cfg.ramp,
            "sponge_width": sim_cfg.sponge_width}
    nio.write_report_json(out / "simulation_meta.json", meta)
    print(f"wrote {len(paths)} snapshots under {out / 'snapshots'}")
    return EXIT_OK


def cmd_compare(args):
    cfg = parse_config(args.config)
    _, profile = load_inputs(cfg)
    model = _fit_model(cfg, profile)
    model.report_.require()
    out = _out_dir(args)
    snaps = nio.read_snapshots(Path(args.snapshots or (out / "snapshots")))
    xis = _grid_spec(args.xi_grid or cfg["xi_grid"], "xi grid")
    ts = [t for t in _t_list(args.t_list or cfg["t_list"])
          if any(abs(s.t - t) < 1e-9 for s in snaps)]
    if not ts:
        raise ConfigError("no requested t matches the stored snapshots")
    preds = {}
    usable_xis = []
    for xi in xis:
        try:
            for t in ts:
                preds[(xi, t)] = model.predict_one(xi, t)
            usable_xis.append(xi)
        except AssumptionViolation:
            continue
    report = compare_op(preds, snaps, usable_xis, ts,
                        sponge_width=float(cfg["sim_sponge_width"]))
    nio.write_report_json(out / "compare_report.json", report)
    worst = max((r["abs_error_vs_leading"] for r in report["records"]),
                default=float("nan"))
    print(f"compared {len(report['records'])} rays; "
          f"worst |q - leading| = {worst:.4f}")
    return EXIT_OK


def cmd_report(args):
    out = _out_dir(args)
    path = Path(args.compare_report or (out / "compare_report.json"))
    if not path.exists():
        raise ConfigError(f"compare report not found: {path}")
    doc = json.loads(path.read_text())
    lines = ["ray comparison summary", "======================"]
    by_xi = {}
    for rec in doc["records"]:
        by_xi.setdefault(rec["xi"], []).append(rec)
    for xi in sorted(by_xi):
        recs = sorted(by_xi[xi], key=lambda r: r["t"])
        tail = recs[-1]
        slope = doc["slopes"].get(str(xi), {})
        lines.append(
            f"xi = {xi:+.4f}: |q - leading| at t={tail['t']:g} is "
            f"{tail['abs_error_vs_leading']:.4e}; fitted slope "
            f"{slope.get('fitted_slope', float('nan')):+.3f} "
            f"(predicted {slope.get('expected_t_power')})")
    text = "\n".join(lines) + "\n"
    (out / "report.txt").write_text(text)
    print(text, end="")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="nnlstep",
        description="Spectral analysis, long-time ray asymptotics and a "
                    "direct solver for the defocusing nonlocal NLS with "
                    "step-like data")
    ap.add_argument("--config", required=True, help="key = value config file")
    ap.add_argument("--out", default="out", help="output directory")
    ap.add_argument("--threads", type=int, default=None,
                    help="worker threads for grid sweeps")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("scatter", help="spectral functions on a k grid")
    sub.add_parser("zeros", help="zero set, thresholds, assumption report")

    p_pred = sub.add_parser("predict", help="sector table and ray predictions")
    p_pred.add_argument("--xi-grid", default=None, help="a:b:n")
    p_pred.add_argument("--t-list", default=None, help="comma separated")
    p_pred.add_argument("--kink", action="store_true",
                        help="also write kink profile tables")

    p_sim = sub.add_parser("simulate", help="run the direct solver")
    p_sim.add_argument("--t-list", default=None, help="snapshot times")

    p_cmp = sub.add_parser("compare", help="predictions vs snapshots")
    p_cmp.add_argument("--snapshots", default=None, help="snapshot directory")
    p_cmp.add_argument("--xi-grid", default=None, help="a:b:n")
    p_cmp.add_argument("--t-list", default=None, help="comma separated")

    p_rep = sub.add_parser("report", help="render a compare report")
    p_rep.add_argument("--compare-report", default=None)
    return ap


COMMANDS = {
    "scatter": cmd_scatter,
    "zeros": cmd_zeros,
    "predict": cmd_predict,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BlowUpDetected as exc:
        print(f"blow-up detected: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except AssumptionViolation as exc:
        print(f"assumption violation: {exc}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except (NumericalFailure, NnlstepError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
