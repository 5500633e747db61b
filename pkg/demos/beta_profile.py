#!/usr/bin/env python3
"""Show how the optimal power split moves with SNR.

Sweeps the secrecy rate over the power-allocation factor beta at several SNRs
and prints a coarse ASCII profile with the per-SNR argmax. The optimum drifts
toward small beta (most power to artificial noise) as SNR grows.

Usage: python3 beta_profile.py [--trials N]
"""

import argparse

import numpy as np

from ssmpa import EsSettings, ExperimentSpec, SystemConfig, run_beta_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=20)
    args = ap.parse_args()

    spec = ExperimentSpec(
        cfg=SystemConfig(n_t=4, n_r=2, n_e=2, m=4),
        trials=args.trials,
        n_samp=200,
        es=EsSettings(grid_points=19, n_samp=200),
        seed=1,
    )
    snrs = (0.0, 10.0, 20.0)
    records, argmax = run_beta_profile(spec, snr_db_list=snrs)

    for snr in snrs:
        rows = [r for r in records if r.snr_db == snr]
        peak = max(r.mean_sr for r in rows)
        print(f"\nSNR = {snr:g} dB (best beta = {argmax[snr]:g})")
        for r in rows:
            bar = "#" * int(round(40 * r.mean_sr / peak)) if peak > 0 else ""
            marker = " <-- argmax" if r.beta == argmax[snr] else ""
            print(f"  beta={r.beta:4.2f}  SR={r.mean_sr:6.3f}  {bar}{marker}")

    betas = np.array([argmax[s] for s in snrs])
    assert (np.diff(betas) <= 0).all(), "optimal beta should not grow with SNR"
    print("\noptimal beta per SNR:", dict(zip(snrs, betas)))


if __name__ == "__main__":
    main()
