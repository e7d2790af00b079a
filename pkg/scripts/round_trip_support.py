"""Round trip of the Gaussian (centre 2, width 0.3) for two sampling supports.

On [1, 3] the weighted density mu sinh(2 pi mu) f(mu) is cut with a jump
near a third of its peak, and the cut-off x-integral converges slowly; on
[0.5, 4] the jump is ~1e-5 of the peak.  Prints relative errors at
mu = 1.7, 2.0, 2.3 and the reported error estimates.
"""

import argparse
import math
import time

from whitortho.transform import SpectralFunction, round_trip

GAUSS = lambda m: math.exp(-0.5 * ((m - 2.0) / 0.3) ** 2)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kappa", type=float, default=0.0)
    ap.add_argument("--spacing", type=float, default=0.05)
    args = ap.parse_args()
    mus = (1.7, 2.0, 2.3)
    print("support,mu,relative_error,reported_abs_error_over_f,seconds")
    for lo, hi in ((1.0, 3.0), (0.5, 4.0)):
        n = int(round((hi - lo) / args.spacing)) + 1
        f = SpectralFunction.from_callable(GAUSS, lo, hi, n)
        t0 = time.time()
        res = round_trip(f, args.kappa, mus)
        dt = time.time() - t0
        for r, m in zip(res, mus):
            print(f"[{lo:g};{hi:g}],{m:g},{r.value / GAUSS(m) - 1:+.3e},{r.abs_error / GAUSS(m):.2e},{dt:.0f}", flush=True)


if __name__ == "__main__":
    main()
