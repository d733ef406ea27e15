"""Noise / truncation study: where the error curve bottoms out, across seeds.

For each seed the noisy sweep over M is compared with the noiseless one.
Prints the argmin degree, the minimum error and whether it exceeds the
noiseless error at that degree.

    python3 scripts/truncation_study.py --eps 1e-3 --seeds 20
"""

import argparse

import numpy as np

from pollaczek_jump.forward import make_pair
from pollaczek_jump.transform import ReconstructionConfig, add_noise, truncation_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pair", default="power-law")
    ap.add_argument("--beta", type=float, default=1.0)
    ap.add_argument("-N", type=int, default=64)
    ap.add_argument("--eps", type=float, nargs="+", default=[1e-5, 1e-4, 1e-3, 1e-2])
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--m-max", type=int, default=40)
    args = ap.parse_args()

    pair = make_pair(args.pair, args.beta)
    a = pair.coefficients(args.N)
    cfg = ReconstructionConfig(series_truncation=args.N)
    ref = pair.sample("x", cfg.grid)
    degrees = list(range(2, args.m_max + 1))
    clean = truncation_sweep(a, ref, degrees, cfg).errors

    print(f"# {pair.label}, N={args.N}, M in [2, {args.m_max}]")
    print("eps,seed,argmin_M,min_error,noiseless_at_argmin,interior,exceeds")
    for eps in args.eps:
        for seed in range(args.seeds):
            noisy = truncation_sweep(add_noise(a, eps, seed), ref, degrees, cfg).errors
            k = int(np.argmin(noisy))
            interior = 0 < k < len(degrees) - 1
            print(f"{eps:g},{seed},{degrees[k]},{noisy[k]:.5f},{clean[k]:.5f},"
                  f"{int(interior)},{int(noisy[k] > clean[k])}")


if __name__ == "__main__":
    main()
