"""Wire formats: CSV tables, JSON documents, snapshot files.

All writers use fixed float formatting and fixed orderings so identical
configurations produce byte-identical outputs.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from ._validation import ConfigError
from .scattering import BackgroundParams, InitialProfile

FLOAT_FMT = "{:.12e}"


def _f(x) -> str:
    return FLOAT_FMT.format(float(x))


def write_profile_csv(path, profile: InitialProfile):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "re_q0", "im_q0"])
        for x, q in zip(profile.x, profile.samples):
            w.writerow([_f(x), _f(q.real), _f(q.imag)])


def read_profile_csv(path, bg: BackgroundParams) -> InitialProfile:
    xs, qs = [], []
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd)
        if [h.strip() for h in header[:3]] != ["x", "re_q0", "im_q0"]:
            raise ConfigError(f"unexpected profile CSV header: {header}")
        for row in rd:
            xs.append(float(row[0]))
            qs.append(complex(float(row[1]), float(row[2])))
    return InitialProfile.from_samples(np.array(xs), np.array(qs), bg)


def write_spectral_csv(path, ks, a1, a2, b, r1, r2):
    cols = {"a1": a1, "a2": a2, "b": b, "r1": r1, "r2": r2}
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        header = ["k"]
        for name in cols:
            header += [f"re_{name}", f"im_{name}"]
        w.writerow(header)
        for i, k in enumerate(ks):
            row = [_f(k)]
            for name in cols:
                v = cols[name][i]
                row += [_f(np.real(v)), _f(np.imag(v))]
            w.writerow(row)


def write_zeros_json(path, zeros, omegas, report=None):
    doc = zeros.to_json()
    doc["omegas"] = omegas.to_json()
    if report is not None:
        doc["assumption_report"] = report.to_json()
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_zeros_json(path):
    from .spectrum import OmegaSet, ZeroSet
    with open(path) as fh:
        doc = json.load(fh)
    return ZeroSet.from_json(doc), OmegaSet(omegas=doc.get("omegas", []))


def write_phase_csv(path, rows):
    """rows: iterables (xi, nu, m, chi_end, delta0)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["xi", "re_nu", "im_nu", "m",
                    "re_chi_end", "im_chi_end", "re_delta0", "im_delta0"])
        for xi, nu, m, chi_end, delta0 in rows:
            w.writerow([_f(xi), _f(nu.real), _f(nu.imag), str(int(m)),
                        _f(chi_end.real), _f(chi_end.imag),
                        _f(delta0.real), _f(delta0.imag)])


def write_prediction_csv(path, predictions):
    """Flatten AsymptoticPrediction records (up to two oscillatory terms)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        header = ["xi", "t", "family", "m", "re_leading", "im_leading"]
        for i in (1, 2):
            header += [f"term{i}_re_amp", f"term{i}_im_amp",
                       f"term{i}_t_power", f"term{i}_phase_coeff",
                       f"term{i}_logt_coeff"]
        header += ["remainder_exponent", "remainder_log",
                   "re_q_pred", "im_q_pred"]
        w.writerow(header)
        for p in predictions:
            row = [_f(p.xi), _f(p.t), p.sector.family, str(p.sector.m),
                   _f(p.leading.real), _f(p.leading.imag)]
            for i in range(2):
                if i < len(p.oscillatory):
                    tm = p.oscillatory[i]
                    row += [_f(tm.amplitude.real), _f(tm.amplitude.imag),
                            _f(tm.t_power), _f(tm.phase_coeff),
                            _f(tm.logt_coeff)]
                else:
                    row += ["", "", "", "", ""]
            val = p.value()
            row += [_f(p.remainder.exponent), str(int(p.remainder.log_factor)),
                    _f(val.real), _f(val.imag)]
            w.writerow(row)


def write_kink_csv(path, rows):
    """rows: iterables (m, side, x0, t, q)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "side", "x0", "t", "re_q", "im_q"])
        for m, side, x0, t, q in rows:
            w.writerow([str(int(m)), side, _f(x0), _f(t), _f(q.real), _f(q.imag)])


def write_snapshots(out_dir, snapshots, fmt="npz"):
    """One file per snapshot, named by index, header carries (t, L, dx)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, snap in enumerate(snapshots):
        if fmt == "npz":
            path = out_dir / f"snapshot_{i:03d}.npz"
            np.savez_compressed(path, t=snap.t, L=snap.L, dx=snap.dx,
                                ramp_width=snap.ramp_width, x=snap.x, q=snap.q)
        elif fmt == "csv":
            path = out_dir / f"snapshot_{i:03d}.csv"
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow([f"# t={_f(snap.t)}", f"L={_f(snap.L)}",
                            f"dx={_f(snap.dx)}"])
                w.writerow(["x", "re_q", "im_q"])
                for x, q in zip(snap.x, snap.q):
                    w.writerow([_f(x), _f(q.real), _f(q.imag)])
        else:
            raise ConfigError(f"unknown snapshot format {fmt!r}")
        paths.append(path)
    return paths


def read_snapshots(out_dir):
    from .pde import FieldSnapshot
    out_dir = Path(out_dir)
    snaps = []
    for path in sorted(out_dir.glob("snapshot_*.npz")):
        data = np.load(path)
        snaps.append(FieldSnapshot(
            t=float(data["t"]), x=data["x"], q=data["q"],
            L=float(data["L"]), dx=float(data["dx"]),
            ramp_width=float(data["ramp_width"])))
    if not snaps:
        raise ConfigError(f"no snapshot files under {out_dir}")
    return snaps


def write_report_json(path, report: dict):
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, default=float)
        fh.write("\n")
