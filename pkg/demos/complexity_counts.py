#!/usr/bin/env python3
"""Tabulate the closed-form FLOP models of the three strategies.

The exhaustive search pays for a Monte Carlo secrecy-rate estimate at every
grid point; the iterative convex optimization only evaluates closed forms per
outer iteration; the leakage-product method is a handful of trace products.

Usage: python3 complexity_counts.py
"""

from ssmpa import SystemConfig, flop_estimates


def main():
    print(f"{'config':>16}  {'exhaustive':>14}  {'convex-opt':>12}  {'closed-form':>12}")
    for n_t, n_r, n_e, m in ((2, 1, 1, 2), (4, 2, 2, 4), (8, 4, 4, 4)):
        cfg = SystemConfig(n_t, n_r, n_e, m)
        c_es, c_co, c_mpsan = flop_estimates(cfg, l=100, n_samp=500, d_ite=10)
        label = f"{n_t}x{n_r}x{n_e}, m={m}"
        print(f"{label:>16}  {c_es:14,d}  {c_co:12,d}  {c_mpsan:12,d}")
        assert c_mpsan < c_co < c_es

    print("\nReference point (4x2x2, QPSK, l=100, n_samp=500, d_ite=10):")
    c_es, c_co, c_mpsan = flop_estimates(SystemConfig(4, 2, 2, 4), 100, 500, 10)
    print(f"  search/closed-form ratio: {c_es / c_mpsan:.2e}")
    print(f"  search/convex-opt ratio:  {c_es / c_co:.2e}")


if __name__ == "__main__":
    main()
