"""Gap between the Wronskian boundary term and its small-xi trig model.

Scans xi over several decades on a fine log grid and prints gap and gap/xi.
At kappa = 0 the gap falls monotonically; at kappa = 0.3 gap/xi oscillates
in ln xi, so values at the decade points alone need not decrease while the
per-decade envelope does.  An mpmath evaluation of W at a few points guards
against the oscillation being a numerical artefact.
"""

import argparse

import mpmath
import numpy as np

from whitortho.orthocheck import decade_envelope, small_xi_trig_model, trig_model_gaps


def mp_boundary(kappa, mu, mu_prime, xi, dps=40):
    with mpmath.workdps(dps):
        w1 = lambda x: mpmath.whitw(kappa, 1j * mu, x)
        w2 = lambda x: mpmath.whitw(kappa, 1j * mu_prime, x)
        val = -(w1(xi) * mpmath.diff(w2, xi) - w2(xi) * mpmath.diff(w1, xi)) / (mu**2 - mu_prime**2)
        return float(mpmath.re(val))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kappa", type=float, nargs="+", default=[0.0, 0.3])
    ap.add_argument("--mu", type=float, default=1.0)
    ap.add_argument("--mu-prime", type=float, default=1.7)
    ap.add_argument("--per-decade", type=int, default=8)
    args = ap.parse_args()
    xis = 10.0 ** -np.arange(2.0, 6.0 + 1e-9, 1.0 / args.per_decade)
    for k in args.kappa:
        print(f"# kappa={k} mu={args.mu} mu'={args.mu_prime}")
        print("xi,gap,gap_over_xi")
        for xi, gap in zip(xis, trig_model_gaps(k, args.mu, args.mu_prime, xis)):
            print(f"{xi:.6e},{gap:.6e},{gap / xi:.6e}")
        env = decade_envelope(k, args.mu, args.mu_prime, per_decade=args.per_decade)
        print("# per-decade envelope (1e-2..1e-6):", ", ".join(f"{e:.3e}" for e in env))
        print("# decade points with mpmath W:")
        for xi in (1e-2, 1e-3, 1e-4):
            gap = abs(mp_boundary(k, args.mu, args.mu_prime, xi) - small_xi_trig_model(k, args.mu, args.mu_prime, xi))
            print(f"#   xi={xi:g} gap={gap:.4e}")


if __name__ == "__main__":
    main()
