"""Detecting entanglement from two magnetizations.

F = 1/2 - (1 + |<Z_I>|)(1 + |<Z_S>|)/4 is negative exactly when the
encoded state is entangled; the partial transpose gives the same number.
"""
import math

import numpy as np

from nmrsdc.protocol import ThermalConfig
from nmrsdc.witness import witness_report

for eps in (1e-5, 0.2, math.sqrt(2) - 1, 0.5, 0.9):
    r = witness_report(ThermalConfig(eps, eps), (1, 0))
    print(f"eps={eps:.5f}  F={r.f_value:+.6f}  min PT eig={r.min_pt_eigenvalue:+.6f}  entangled={r.entangled}")

# a coarse map of the sign of F
grid = np.linspace(0, 1, 21)
print("\nrows eps_I, columns eps_S ('#' = entangled)")
for e_i in grid[::-1]:
    print(f"{e_i:4.2f} " + "".join("#" if witness_report(ThermalConfig(e_i, e_s), (0, 0)).entangled else "." for e_s in grid))
