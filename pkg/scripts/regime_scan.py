"""Agreement of the series-connection and asymptotic evaluations of W.

For each (kappa, mu) on a grid prints x_switch and the largest relative gap
between the two regimes over x_switch - 5 .. x_switch + 5, plus the gap at a
few points further in, where the asymptotic series loses accuracy.
"""

import argparse

import numpy as np

from whitortho.orthocheck import regime_gap
from whitortho.whittaker import WhittakerOrder, x_switch


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kappas", type=float, nargs="+", default=list(np.linspace(-1.0, 1.0, 5)))
    ap.add_argument("--mus", type=float, nargs="+", default=[0.2, 1.0, 2.0, 3.0, 5.0])
    args = ap.parse_args()
    print("kappa,mu,x_switch,max_gap_window,gap_at_xs_minus_8,gap_at_xs_minus_10")
    for k in args.kappas:
        for m in args.mus:
            order = WhittakerOrder(float(k), float(m))
            xs = x_switch(order)
            window = max(regime_gap(order, float(x)) for x in np.linspace(xs - 5.0, xs + 5.0, 21))
            inner = []
            for d in (8.0, 10.0):
                try:
                    inner.append(f"{regime_gap(order, xs - d):.3e}")
                except Exception as exc:  # divergent asymptotic series this far in
                    inner.append(type(exc).__name__)
            print(f"{k:g},{m:g},{xs:g},{window:.3e},{inner[0]},{inner[1]}")


if __name__ == "__main__":
    main()
