"""Regenerate the bundled spectral example used by ``whitortho transform``.

Gaussian bump centred at mu = 2 with width 0.3, sampled on [0.5, 4] so the
weighted density mu sinh(2 pi mu) f(mu) has decayed to ~1e-5 of its peak at
the upper edge.
"""

import math
from pathlib import Path

import numpy as np

CENTER, WIDTH, LO, HI, N = 2.0, 0.3, 0.5, 4.0, 71

out = Path(__file__).resolve().parents[1] / "src" / "whitortho" / "data" / "gaussian_spectral.csv"
mu = np.linspace(LO, HI, N)
with open(out, "w", encoding="utf-8", newline="\n") as fh:
    fh.write("mu,f\n")
    for m in mu:
        fh.write(f"{m:.17g},{math.exp(-0.5 * ((m - CENTER) / WIDTH) ** 2):.17g}\n")
print(f"wrote {N} samples to {out}")
