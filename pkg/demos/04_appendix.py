"""The conventional witness as rotated single-spin magnetizations.

With a = b = 3/8, c = 1/4 and the example unitary, a rotation followed by
Z-magnetization readout reproduces the conventional witness on every
Bell-diagonal state. Each message needs its own rotation.
"""
import numpy as np

from nmrsdc.appendix import (
    construct_decomposition, contradiction_table, diagonal_condition_residual, v_example,
    verify_expectation_equality,
)
from nmrsdc.protocol import MESSAGES

np.set_printoptions(precision=3, suppress=True)
print("V_ex =\n", v_example())

for m in MESSAGES:
    d = construct_decomposition(m)
    print(m, "residual", diagonal_condition_residual(d, m),
          "max deviation", verify_expectation_equality(d, m, trials=1000, seed=0))

print("\nfixed V_ex, sign patterns of (a, b) vs message residuals")
for signs, row in contradiction_table().items():
    print(signs, [round(r, 3) for r in row.values()])
