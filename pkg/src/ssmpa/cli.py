"""Command-line front end for the secrecy-rate sweep and beta-profile runs.

Exit codes: 0 success, 2 usage/configuration error, 3 I/O error,
4 numeric-failure budget exceeded.
"""

import argparse
import sys

import numpy as np

from .channel import SystemConfig
from .errors import ConfigurationError, SweepError
from .experiment import (
    DEFAULT_METHODS,
    DEFAULT_PROFILE_SNRS,
    ExperimentSpec,
    emit_plot_script,
    run_beta_profile,
    run_sweep,
    write_csv,
    write_profile_csv,
)
from .strategies import CoSettings, EsSettings

_MODULATIONS = {"qpsk": ("psk", 4), "bpsk": ("psk", 2), "16qam": ("qam", 16)}

_DEFAULTS = {
    "nt": 4, "nr": 2, "ne": 2, "mod": "qpsk",
    "snr-min": 0.0, "snr-max": 20.0, "snr-step": 5.0,
    "trials": 100, "nsamp": 500, "method": ",".join(DEFAULT_METHODS),
    "es-grid": 99, "co-eps": 1e-4, "co-max-iter": 50,
    "seed": 1, "out": "sweep.csv", "plot-script": "",
    "beta-profile": False,
}

_INT_KEYS = {"nt", "nr", "ne", "trials", "nsamp", "es-grid", "co-max-iter", "seed"}
_FLOAT_KEYS = {"snr-min", "snr-max", "snr-step", "co-eps"}
_BOOL_KEYS = {"beta-profile"}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ssmpa",
        description="Secure spatial modulation power-allocation sweep.")
    p.add_argument("--nt", type=int, help="transmit antennas (power of two)")
    p.add_argument("--nr", type=int, help="legitimate receive antennas")
    p.add_argument("--ne", type=int, help="eavesdropper receive antennas")
    p.add_argument("--mod", choices=sorted(_MODULATIONS), help="modulation")
    p.add_argument("--snr-min", type=float, help="lowest SNR in dB")
    p.add_argument("--snr-max", type=float, help="highest SNR in dB")
    p.add_argument("--snr-step", type=float, help="SNR grid step in dB")
    p.add_argument("--trials", type=int, help="channel realizations per point")
    p.add_argument("--nsamp", type=int, help="MC noise samples per MI estimate")
    p.add_argument("--method", help="comma-separated: es, co, mpsan, fixed:<beta>")
    p.add_argument("--es-grid", type=int, help="exhaustive-search grid points")
    p.add_argument("--co-eps", type=float, help="CO convergence threshold")
    p.add_argument("--co-max-iter", type=int, help="CO outer iteration cap")
    p.add_argument("--seed", type=int, help="master RNG seed")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--plot-script", help="also emit a plot script at this path")
    p.add_argument("--beta-profile", action="store_true", default=None,
                   help="run the SR-vs-beta profile study instead of the sweep")
    p.add_argument("--config", help="flat key = value config file")
    return p


def _read_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigurationError(
                        f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
                key, val = (s.strip() for s in line.split("=", 1))
                if key not in _DEFAULTS:
                    raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
                values[key] = val
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}")
    return values


def _coerce(key: str, val):
    if not isinstance(val, str):
        return val
    try:
        if key in _INT_KEYS:
            return int(val)
        if key in _FLOAT_KEYS:
            return float(val)
        if key in _BOOL_KEYS:
            if val.lower() in ("1", "true", "yes"):
                return True
            if val.lower() in ("0", "false", "no"):
                return False
            raise ValueError(val)
    except ValueError:
        raise ConfigurationError(f"invalid value for {key}: {val!r}")
    return val


def _parse_methods(text: str) -> tuple:
    methods = []
    for raw in text.split(","):
        m = raw.strip()
        if not m:
            continue
        if m in ("es", "co", "mpsan"):
            methods.append(m)
        elif m.startswith("fixed:"):
            try:
                b = float(m.split(":", 1)[1])
            except ValueError:
                raise ConfigurationError(f"bad fixed method spec: {m!r}")
            if not 0.0 <= b <= 1.0:
                raise ConfigurationError(f"fixed beta out of [0, 1]: {m!r}")
            methods.append(f"fixed:{b:g}")
        else:
            raise ConfigurationError(f"unknown method: {m!r}")
    if not methods:
        raise ConfigurationError("method list is empty")
    return tuple(methods)


def parse_spec(cli_args, config_path: str = None) -> ExperimentSpec:
    """Resolve CLI flags over config-file values over built-in defaults."""
    values = dict(_DEFAULTS)
    if config_path:
        values.update(_read_config_file(config_path))
    for key, val in cli_args.items():
        if val is not None:
            values[key] = val
    values = {k: _coerce(k, v) for k, v in values.items()}

    scheme, m = _MODULATIONS[values["mod"]]
    cfg = SystemConfig(n_t=values["nt"], n_r=values["nr"], n_e=values["ne"], m=m)
    if values["snr-step"] <= 0:
        raise ConfigurationError("snr-step must be positive")
    snr_grid = tuple(np.arange(values["snr-min"],
                               values["snr-max"] + 1e-9, values["snr-step"]))
    if not snr_grid:
        raise ConfigurationError("empty SNR grid")
    return ExperimentSpec(
        cfg=cfg, scheme=scheme,
        methods=_parse_methods(values["method"]),
        snr_db_grid=snr_grid,
        trials=values["trials"], n_samp=values["nsamp"], seed=values["seed"],
        es=EsSettings(grid_points=values["es-grid"], n_samp=values["nsamp"]),
        co=CoSettings(epsilon=values["co-eps"],
                      max_outer_iterations=values["co-max-iter"]),
        out_path=values["out"], plot_script_path=values["plot-script"],
        beta_profile=bool(values["beta-profile"]))


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cli_values = {k.replace("_", "-"): v for k, v in vars(args).items()
                  if k != "config"}
    try:
        spec = parse_spec(cli_values, args.config)
    except ConfigurationError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if spec.beta_profile:
            snrs = spec.snr_db_grid if cli_values.get("snr-min") is not None \
                else DEFAULT_PROFILE_SNRS
            records, argmax = run_beta_profile(spec, snrs)
            write_profile_csv(records, spec.out_path)
            for snr in sorted(argmax):
                print(f"SNR {snr:g} dB: best beta = {argmax[snr]:g}")
        else:
            records = run_sweep(spec)
            write_csv(records, spec.out_path)
            if spec.plot_script_path:
                emit_plot_script(records, spec.plot_script_path, spec.out_path)
        print(f"wrote {spec.out_path}")
    except SweepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
