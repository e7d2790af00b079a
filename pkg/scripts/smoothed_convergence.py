"""Convergence of the smoothed orthogonality integral J(xi) as xi -> 0.

Prints J(xi) / (N(kappa, mu) phi(mu)) - 1 for a Gaussian test function on
[1, 3] (on support) and, for a C-infinity bump on [1.5, 2.5] with mu = 0.5
outside it, |J(xi)| / N(kappa, mu) from the boundary form, which decays only
as L = ln(1/xi) grows.
"""

import argparse
import math
import time

import numpy as np

from whitortho.orthocheck import gaussian_bump, smoothed_boundary_form, smoothed_orthogonality
from whitortho.specfun import orthogonality_normalization
from whitortho.transform import SpectralFunction


def smooth_bump(lo=1.5, hi=2.5, n=201):
    def f(m):
        t = (2 * m - lo - hi) / (hi - lo)
        return math.exp(-1.0 / (1.0 - t * t)) if abs(t) < 1 else 0.0
    return SpectralFunction.from_callable(f, lo, hi, n)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kappa", type=float, nargs="+", default=[0.0, 0.5])
    ap.add_argument("--xis", type=float, nargs="+", default=[1e-2, 1e-3, 1e-4])
    args = ap.parse_args()
    phi = gaussian_bump()
    print("# on support: kappa,xi,J/(N phi(2)) - 1,seconds")
    for k in args.kappa:
        n = orthogonality_normalization(k, 2.0).value
        for xi in args.xis:
            t0 = time.time()
            j = smoothed_orthogonality(k, 2.0, phi, xi)
            print(f"{k:g},{xi:g},{j / (n * phi(2.0)) - 1:+.4e},{time.time() - t0:.1f}", flush=True)
    bump = smooth_bump()
    print("# off support (mu=0.5): kappa,L,|J|/N")
    for k in args.kappa:
        n = orthogonality_normalization(k, 0.5).value
        for big_l in (5.0, 10.0, 20.0, 40.0, 80.0, 160.0):
            j = smoothed_boundary_form(k, 0.5, bump, math.exp(-big_l))
            print(f"{k:g},{big_l:g},{abs(j) / n:.3e}", flush=True)


if __name__ == "__main__":
    main()
