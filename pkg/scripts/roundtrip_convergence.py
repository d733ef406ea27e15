"""Relative L2 error of the reconstruction against the exact jump, per degree.

Also prints the exact L2(1, inf) projection error from the Bessel defect
||e^{v/2} F||^2 - 2 sum A_m^2, which the sampled error tracks.

    python3 scripts/roundtrip_convergence.py --pair power-law --beta 1
"""

import argparse
import math


from pollaczek_jump.forward import jump_energy, make_pair
from pollaczek_jump.transform import ReconstructionConfig, pollaczek_coefficients, truncation_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pair", default="power-law")
    ap.add_argument("--beta", type=float, default=1.0)
    ap.add_argument("-N", type=int, default=96)
    ap.add_argument("--degrees", default="2,4,8,12,16,20,24,32,40")
    args = ap.parse_args()

    pair = make_pair(args.pair, args.beta)
    degrees = [int(m) for m in args.degrees.split(",")]
    a = pair.coefficients(args.N)
    cfg = ReconstructionConfig(series_truncation=args.N, geometry="x")
    sweep = truncation_sweep(a, pair.sample("x", cfg.grid), degrees, cfg)
    coeffs = pollaczek_coefficients(a, max(degrees), warn=False)
    # ||e^{v/2} F||^2 on v > 0, i.e. the sigma = -1/2 energy without the 2 pi
    total = jump_energy(pair.jump_in("v"), -0.5, "v") / (2 * math.pi)
    energy = coeffs.energy()

    print(f"# {pair.label}, N={args.N}, default x-grid")
    print("M,grid_rel_l2,projection_rel_l2")
    for M, err in zip(degrees, sweep.errors):
        defect = max(total - energy[M], 0.0)
        print(f"{M},{err:.6f},{math.sqrt(defect / total):.6f}")


if __name__ == "__main__":
    main()
