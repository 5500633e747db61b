"""Seeded Monte Carlo experiment driver: SNR sweeps across power-allocation
strategies, beta-profile studies, CSV output, and plot-script emission."""

import os
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import (
    SystemConfig,
    build_alphabet,
    build_an_projector,
    build_constellation,
    generate_channel,
)
from .errors import NumericError, SweepError
from .metrics import instantaneous_secrecy_rate
from .strategies import (
    CoSettings,
    EsSettings,
    beta_grid,
    co_optimize,
    es_optimize,
    fixed_beta,
    max_p_san_optimize,
)

CSV_HEADER = "snr_db,method,mean_beta,mean_sr,sr_std_error,mean_iterations,trials"
PROFILE_CSV_HEADER = "snr_db,beta,mean_sr,sr_std_error,trials"

DEFAULT_METHODS = ("es", "co", "mpsan", "fixed:0.1", "fixed:0.25", "fixed:0.5")
DEFAULT_PROFILE_SNRS = (0.0, 5.0, 20.0)


@dataclass(frozen=True)
class ExperimentSpec:
    """Full description of one sweep; the output is a pure function of it."""

    cfg: SystemConfig
    scheme: str = "psk"
    methods: tuple = DEFAULT_METHODS
    snr_db_grid: tuple = (0.0, 5.0, 10.0, 15.0, 20.0)
    trials: int = 100
    n_samp: int = 500
    seed: int = 1
    es: EsSettings = EsSettings()
    co: CoSettings = CoSettings()
    out_path: str = "sweep.csv"
    plot_script_path: str = ""
    beta_profile: bool = False

    def __post_init__(self):
        if not self.snr_db_grid:
            raise ValueError("snr_db_grid must be non-empty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class SweepRecord:
    """Aggregated result for one (SNR, method) cell."""

    snr_db: float
    method: str
    mean_beta: float
    mean_sr: float
    sr_std_error: float
    mean_iterations: float
    trials: int


@dataclass(frozen=True)
class ProfileRecord:
    """Mean secrecy rate at one (SNR, beta) grid point."""

    snr_db: float
    beta: float
    mean_sr: float
    sr_std_error: float
    trials: int


def _cfg_at_snr(cfg: SystemConfig, snr_db: float) -> SystemConfig:
    """Fix P and vary the (identical) noise variances to hit the target SNR."""
    sigma2 = cfg.p / 10.0 ** (snr_db / 10.0)
    return replace(cfg, sigma2_b=sigma2, sigma2_e=sigma2)


def _optimize(method: str, ch, t, cfg, alphabet, spec: ExperimentSpec, seed_seq):
    if method == "es":
        return es_optimize(ch, t, cfg, alphabet, spec.es, seed_seq)
    if method == "co":
        return co_optimize(ch, t, cfg, alphabet, spec.co)
    if method == "mpsan":
        return max_p_san_optimize(ch, t, cfg)
    if method.startswith("fixed:"):
        return fixed_beta(float(method.split(":", 1)[1]))
    raise ValueError(f"unknown method: {method!r}")


def run_sweep(spec: ExperimentSpec) -> list:
    """Run the full SNR x method sweep.

    At a given SNR all methods see identical channel draws and identical
    evaluation noise, so per-channel comparisons are paired. Realizations
    that fail numerically are skipped and counted; more than 1% skips
    aborts the sweep.
    """
    constellation = build_constellation(spec.scheme, spec.cfg.m)
    alphabet = build_alphabet(spec.cfg, constellation)
    records = []
    skipped = 0
    total = len(spec.snr_db_grid) * spec.trials
    for si, snr_db in enumerate(spec.snr_db_grid):
        cfg = _cfg_at_snr(spec.cfg, snr_db)
        per_method = {m: {"sr": [], "beta": [], "iters": []} for m in spec.methods}
        for trial in range(spec.trials):
            ch_seed = np.random.SeedSequence(spec.seed, spawn_key=(si, trial, 0))
            es_seed = np.random.SeedSequence(spec.seed, spawn_key=(si, trial, 1))
            eval_seed = np.random.SeedSequence(spec.seed, spawn_key=(si, trial, 2))
            ch = generate_channel(ch_seed, cfg)
            try:
                t = build_an_projector(ch.h_b, "null-space")
                results = {}
                for method in spec.methods:
                    res = _optimize(method, ch, t, cfg, alphabet, spec, es_seed)
                    # fresh generator from the same seed: paired evaluation noise
                    sr = instantaneous_secrecy_rate(
                        ch, t, res.beta, cfg, alphabet, spec.n_samp,
                        np.random.default_rng(eval_seed))
                    results[method] = (res, sr)
            except NumericError:
                skipped += 1
                continue
            for method, (res, sr) in results.items():
                per_method[method]["sr"].append(sr)
                per_method[method]["beta"].append(res.beta)
                per_method[method]["iters"].append(res.iterations)
        for method in spec.methods:
            srs = np.array(per_method[method]["sr"])
            n = len(srs)
            if n == 0:
                continue
            stderr = float(np.std(srs, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
            records.append(SweepRecord(
                snr_db=float(snr_db), method=method,
                mean_beta=float(np.mean(per_method[method]["beta"])),
                mean_sr=float(np.mean(srs)), sr_std_error=stderr,
                mean_iterations=float(np.mean(per_method[method]["iters"])),
                trials=n))
    if skipped > 0.01 * total:
        raise SweepError(f"{skipped}/{total} realizations failed numerically")
    return records


def run_beta_profile(spec: ExperimentSpec, snr_db_list=DEFAULT_PROFILE_SNRS):
    """Mean secrecy rate on a beta grid for each SNR, plus per-SNR argmax.

    Returns (records, argmax) where argmax maps snr_db to the grid beta with
    the highest mean SR (ties toward smaller beta).
    """
    constellation = build_constellation(spec.scheme, spec.cfg.m)
    alphabet = build_alphabet(spec.cfg, constellation)
    grid = beta_grid(spec.es.grid_points)
    records = []
    argmax = {}
    skipped = 0
    total = len(snr_db_list) * spec.trials
    for si, snr_db in enumerate(snr_db_list):
        cfg = _cfg_at_snr(spec.cfg, snr_db)
        sr_by_beta = [[] for _ in grid]
        for trial in range(spec.trials):
            ch_seed = np.random.SeedSequence(spec.seed, spawn_key=(si, trial, 0))
            eval_seed = np.random.SeedSequence(spec.seed, spawn_key=(si, trial, 2))
            ch = generate_channel(ch_seed, cfg)
            try:
                t = build_an_projector(ch.h_b, "null-space")
                # common random numbers across the beta grid
                srs = [instantaneous_secrecy_rate(
                    ch, t, float(b), cfg, alphabet, spec.n_samp,
                    np.random.default_rng(eval_seed)) for b in grid]
            except NumericError:
                skipped += 1
                continue
            for bi, sr in enumerate(srs):
                sr_by_beta[bi].append(sr)
        means = []
        for bi, b in enumerate(grid):
            srs = np.array(sr_by_beta[bi])
            n = len(srs)
            if n == 0:
                continue
            stderr = float(np.std(srs, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
            mean_sr = float(np.mean(srs))
            means.append(mean_sr)
            records.append(ProfileRecord(snr_db=float(snr_db), beta=float(b),
                                         mean_sr=mean_sr, sr_std_error=stderr,
                                         trials=n))
        if means:
            argmax[float(snr_db)] = float(grid[int(np.argmax(means))])
    if skipped > 0.01 * total:
        raise SweepError(f"{skipped}/{total} realizations failed numerically")
    return records, argmax


def _fmt(x) -> str:
    return repr(float(x))


def write_csv(records, path) -> None:
    """Write sweep records as CSV, full-precision decimals, fixed row order."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([
            _fmt(r.snr_db), r.method, _fmt(r.mean_beta), _fmt(r.mean_sr),
            _fmt(r.sr_std_error), _fmt(r.mean_iterations), str(r.trials)]))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_profile_csv(records, path) -> None:
    """Write beta-profile records as CSV."""
    lines = [PROFILE_CSV_HEADER]
    for r in records:
        lines.append(",".join([
            _fmt(r.snr_db), _fmt(r.beta), _fmt(r.mean_sr),
            _fmt(r.sr_std_error), str(r.trials)]))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


_PLOT_TEMPLATE = '''#!/usr/bin/env python3
"""Plot mean secrecy rate versus SNR from {csv_name}."""
import csv
import os

import matplotlib.pyplot as plt

CSV_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), {csv_rel!r})
SERIES = {series!r}

rows = list(csv.DictReader(open(CSV_PATH)))
plt.figure(figsize=(7, 5))
for method in SERIES:
    pts = [(float(r["snr_db"]), float(r["mean_sr"])) for r in rows
           if r["method"] == method]
    pts.sort()
    plt.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=method)
plt.xlabel("SNR (dB)")
plt.ylabel("Average secrecy rate (bits/channel use)")
plt.grid(True)
if SERIES:
    plt.legend()
plt.tight_layout()
plt.savefig(os.path.splitext(os.path.abspath(__file__))[0] + ".png", dpi=150)
'''


def emit_plot_script(records, path, csv_path) -> None:
    """Write a standalone matplotlib script rendering the sweep CSV.

    One series per method, in first-appearance order; the CSV is referenced
    relative to the script so the pair can be moved together.
    """
    series = []
    for r in records:
        if r.method not in series:
            series.append(r.method)
    csv_rel = os.path.relpath(os.path.abspath(csv_path),
                              os.path.dirname(os.path.abspath(path)) or ".")
    script = _PLOT_TEMPLATE.format(csv_name=os.path.basename(csv_path),
                                   csv_rel=csv_rel, series=series)
    with open(path, "w", newline="") as fh:
        fh.write(script)
