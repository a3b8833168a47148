"""Command-line front end.

Subcommands:
  phasematch  solve and print the collinear phase-matching angle(s)
  pump        write the pump amplitude profile as CSV
  simulate    write the coincidence map, singles profiles and rho record
  sweep       write a one-parameter sweep of rho
  bootstrap   write rho with its bootstrap uncertainty

Every output file gets a JSON metadata sidecar (full config snapshot, seed,
package version) sufficient to reproduce it. Config comes from --config, or
the SPDCSIM_CONFIG environment variable, with command-line flags winning.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from importlib.metadata import version as pkg_version
from pathlib import Path

import numpy as np

from .biphoton import singles_profile
from .config import ConfigError, RunConfig, load_config
from .dispersion import BBO
from .phasematch import PROCESSES, TYPE1, TYPE2, collinear_mismatch, find_collinear_angle
from .pipeline import build_pump, simulate
from .stats import CorrelationResult
from .sweeps import SWEEP_PARAMS, SweepSpec, run_sweep


def _version() -> str:
    try:
        return pkg_version("spdcsim")
    except Exception:
        return "unknown"


def _write_metadata(path: Path, config: RunConfig, extra: dict | None = None):
    record = {
        "config": config.to_dict(),
        "config_hash": config.hash(),
        "version": _version(),
    }
    record.update(extra or {})
    sidecar = path.with_suffix(path.suffix + ".meta.json")
    sidecar.write_text(json.dumps(record, indent=2, default=str) + "\n")


def _outdir(config: RunConfig) -> Path:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_csv(path: Path, header: list[str], rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _write_result(path: Path, result: CorrelationResult, config: RunConfig):
    _write_csv(path, ["rho", "sigma_rho", "n_resamples", "seed", "counts_total", "config_hash"], [[
        f"{result.rho:.9f}",
        "" if result.sigma_rho is None else f"{result.sigma_rho:.3e}",
        result.n_resamples,
        result.seed,
        "" if result.counts_total is None else result.counts_total,
        config.hash(),
    ]])


# ---- flag -> config overrides ---------------------------------------

_OVERRIDES = {
    "process": ("crystal", "process"),
    "lz_mm": ("crystal", "length_z_mm"),
    "pitch_um": ("slits", "pitch_um"),
    "width_um": ("slits", "width_um"),
    "sigma_um": ("pump", "sigma_um"),
    "source": ("pump", "source"),
    "profile": ("pump", "profile_path"),
    "wavelength_nm": ("pump", "wavelength_nm"),
    "step_um": ("detectors", "step_um"),
    "geometry": ("detectors", "geometry"),
    "distance_mm": ("detectors", "distance_mm"),
    "sinc_convention": ("phasematch", "sinc_convention"),
    "seed": ("stats", "seed"),
    "counts_total": ("stats", "counts_total"),
    "resamples": ("stats", "n_resamples"),
}


def _apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    for flag, (section, name) in _OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is not None:
            sub = dataclasses.replace(getattr(config, section), **{name: value})
            config = dataclasses.replace(config, **{section: sub})
    if getattr(args, "output_dir", None) is not None:
        config = dataclasses.replace(config, output_dir=args.output_dir)
    if getattr(args, "threads", None) is not None:
        config = dataclasses.replace(config, threads=args.threads)
    return config


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="TOML config file (default: $SPDCSIM_CONFIG)")
    parser.add_argument("--output-dir", help="output directory (default: out)")
    parser.add_argument("--threads", type=int, help="worker threads for the map")
    parser.add_argument("--process", choices=PROCESSES)
    parser.add_argument("--sinc-convention", dest="sinc_convention", choices=("full", "half"))
    parser.add_argument("--wavelength-nm", dest="wavelength_nm", type=float)
    parser.add_argument("--lz-mm", dest="lz_mm", type=float, help="crystal length L_z")
    parser.add_argument("--pitch-um", dest="pitch_um", type=float)
    parser.add_argument("--width-um", dest="width_um", type=float)
    parser.add_argument("--sigma-um", dest="sigma_um", type=float)
    parser.add_argument("--step-um", dest="step_um", type=float)
    parser.add_argument("--geometry", choices=("image", "far_field"))
    parser.add_argument("--distance-mm", dest="distance_mm", type=float)
    parser.add_argument("--seed", type=int)


def cmd_phasematch(config: RunConfig, args: argparse.Namespace) -> int:
    lam = config.pump.wavelength_nm * 1e-9
    processes = (TYPE1, TYPE2) if args.both else (config.crystal.process,)
    for process in processes:
        angle = find_collinear_angle(lam, process)
        residual = collinear_mismatch(angle, lam, process)
        print(
            f"{process}: collinear angle {np.rad2deg(angle):.4f} deg, "
            f"|dk_z| residual {abs(residual):.3g} rad/m  [{BBO.source}]"
        )
    return 0


def cmd_pump(config: RunConfig, args: argparse.Namespace) -> int:
    field = build_pump(config)
    out = _outdir(config) / "pump_profile.csv"
    rows = [
        [f"{x*1e6:.6f}", f"{v.real:.9e}", f"{v.imag:.9e}"]
        for x, v in zip(field.x, field.values)
    ]
    _write_csv(out, ["x_um", "re", "im"], rows)
    _write_metadata(out, config)
    print(f"wrote {out} ({field.x.size} samples, source={config.pump.source})")
    return 0


def _write_profile(path: Path, x, rates):
    _write_csv(path, ["x_um", "rate"], [
        [f"{xi*1e6:.6f}", f"{r:.9e}"] for xi, r in zip(x, rates)
    ])


def cmd_simulate(config: RunConfig, args: argparse.Namespace) -> int:
    bootstrap = getattr(args, "bootstrap", None)
    if bootstrap:
        config = dataclasses.replace(
            config, stats=dataclasses.replace(config.stats, n_resamples=bootstrap)
        )
    coin, result = simulate(config, bootstrap=bool(bootstrap))
    out = _outdir(config)
    map_path = out / "coincidence_map.csv"
    rows = []
    for i, x1 in enumerate(coin.x_signal):
        for j, x2 in enumerate(coin.x_idler):
            rows.append([f"{x1*1e6:.6f}", f"{x2*1e6:.6f}", f"{coin.rates[i, j]:.9e}"])
    _write_csv(map_path, ["x1_um", "x2_um", "rate"], rows)
    _write_metadata(map_path, config, {"rho": result.rho, "sigma_rho": result.sigma_rho})
    _write_profile(out / "singles_signal.csv", coin.x_signal, singles_profile(coin, "signal"))
    _write_profile(out / "singles_idler.csv", coin.x_idler, singles_profile(coin, "idler"))
    _write_result(out / "result.csv", result, config)
    sigma = "" if result.sigma_rho is None else f" +- {result.sigma_rho:.2e}"
    print(f"rho = {result.rho:.6f}{sigma}  (map {coin.rates.shape[0]}x{coin.rates.shape[1]}, wrote {out}/)")
    return 0


def cmd_sweep(config: RunConfig, args: argparse.Namespace) -> int:
    if args.param == "process":
        values = tuple(args.values.split(","))
    else:
        try:
            raw = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            print("error: --values must be a comma-separated number list", file=sys.stderr)
            return 2
        if not raw:
            print("error: empty --values list", file=sys.stderr)
            return 2
        # values are given in the config's human units; convert to SI
        scale = SWEEP_PARAMS[args.param][2]
        values = tuple(v / scale for v in raw)
    spec = SweepSpec(param=args.param, values=values, base=config,
                     bootstrap=args.bootstrap_rows)
    result = run_sweep(spec)
    out = _outdir(config) / "sweep.csv"
    rows = []
    failed = False
    for row in result.rows:
        failed |= row.error is not None
        rows.append([
            result.param,
            row.value,
            "" if row.rho is None else f"{row.rho:.9f}",
            "" if row.sigma_rho is None else f"{row.sigma_rho:.3e}",
            f"{row.seconds:.3f}",
        ])
    _write_csv(out, ["param", "value", "rho", "sigma_rho", "seconds"], rows)
    _write_metadata(out, config, {"param": result.param})
    for row in result.rows:
        tail = f"rho = {row.rho:.6f}" if row.rho is not None else f"FAILED: {row.error}"
        print(f"{result.param} = {row.value}: {tail}")
    return 1 if failed else 0


def cmd_bootstrap(config: RunConfig, args: argparse.Namespace) -> int:
    coin, result = simulate(config, bootstrap=True)
    out = _outdir(config)
    _write_result(out / "bootstrap.csv", result, config)
    _write_metadata(out / "bootstrap.csv", config, {"n_skipped": result.n_skipped})
    print(
        f"rho = {result.rho:.6f} +- {result.sigma_rho:.3e} "
        f"({result.n_resamples} resamples, seed {result.seed}, "
        f"counts_total {result.counts_total:g})"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spdcsim",
        description="Triple-slit SPDC coincidence-map simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phasematch", help="solve the collinear phase-matching angle")
    _add_common(p)
    p.add_argument("--both", action="store_true", help="print both process types")
    p.set_defaults(func=cmd_phasematch)

    p = sub.add_parser("pump", help="write the pump amplitude profile")
    _add_common(p)
    p.add_argument("--source", choices=("analytic", "imaged", "measured"))
    p.add_argument("--profile", help="measured-profile CSV path")
    p.set_defaults(func=cmd_pump)

    p = sub.add_parser("simulate", help="run the full coincidence-map pipeline")
    _add_common(p)
    p.add_argument("--source", choices=("analytic", "imaged", "measured"))
    p.add_argument("--profile", help="measured-profile CSV path")
    p.add_argument("--bootstrap", type=int, metavar="N",
                   help="also bootstrap sigma_rho with N resamples")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="sweep one parameter and record rho per value")
    _add_common(p)
    p.add_argument("--param", required=True, choices=sorted(SWEEP_PARAMS))
    p.add_argument("--values", required=True,
                   help="comma-separated values (um for widths/pitch/sigma, mm for Lz)")
    p.add_argument("--bootstrap-rows", action="store_true",
                   help="bootstrap sigma_rho for every row (slow)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bootstrap", help="bootstrap the rho uncertainty")
    _add_common(p)
    p.add_argument("--resamples", type=int)
    p.add_argument("--counts-total", dest="counts_total", type=float)
    p.set_defaults(func=cmd_bootstrap)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        config = _apply_overrides(config, args)
        return args.func(config, args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
