#!/usr/bin/env python3
"""Print a quick portrait of the decay/growth landscape across dimensions.

Usage:
    python scripts/decay_portrait.py

For the Gaussian rest datum this prints, per dimension, the fitted exponent of
the frequency-side norm, the energy exponent, and the compensated oscillatory
integral at the top of the sweep window.
"""

import math

import numpy as np

from logevo.asymptotics import fit_rate
from logevo.profile import Family, InitialDatum, spectral_energy, spectral_l2_sq
from logevo.quadrature import IntegralSpec, integrate

grid = list(np.geomspace(1e2, 1e4, 9))
rates = {1: "t", 2: "log t", 3: "1/sqrt(t)"}

for n in (1, 2, 3):
    datum = InitialDatum(Family.GAUSSIAN, 1.0, 1.0, n)
    l2 = fit_rate([(t, math.sqrt(spectral_l2_sq(datum, t))) for t in grid], (grid[0], grid[-1]))
    en = fit_rate([(t, spectral_energy(datum, t)) for t in grid], (grid[0], grid[-1]))
    top = grid[-1]
    osc = integrate(IntegralSpec("ScriptI_n", float(n), top)).value
    comp = {1: osc / top, 2: osc / math.log(top), 3: osc * math.sqrt(top)}[n]
    print(
        f"n={n}: |u| ~ t^{l2.exponent:+.3f}  energy ~ t^{en.exponent:+.3f}  "
        f"compensated integral ({rates[n]}): {comp:.4f}"
    )
