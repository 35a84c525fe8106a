"""
First-order noise through three steps
=====================================

Writing the input as ``|psi><psi| + eps M``, track the first-order operators
after each U+ step and compare with finite differences of the exact map.
"""

import numpy as np

from bellforge import linalg, perturbation_series, step_mixed_closed
from bellforge.states import random_ginibre_density, random_pure

rng = np.random.default_rng(11)
psi = random_pure(rng)
M = random_ginibre_density(rng) - linalg.ket_bra(psi)
ps = perturbation_series(psi, M)


def F(r):
    return step_mixed_closed(r, +1, validate=False).state


np.set_printoptions(precision=4, suppress=True)
for name, m in [("M'", ps.M1), ("M''", ps.M2), ("M'''", ps.M3)]:
    print(name)
    print(m.real)

# %%
# The map is quadratic, so a central difference with step 1 is exact.
for name, base, direction, m in [
    ("M'", psi, M, ps.M1),
    ("M''", ps.psi1, ps.M1, ps.M2),
    ("M'''", ps.psi2, ps.M2, ps.M3),
]:
    p = linalg.ket_bra(base)
    numeric = (F(p + direction) - F(p - direction)) / 2
    print(f"{name:>5} gap to finite difference: {np.abs(numeric - m).max():.1e}")

# %%
# M''' lives on Phi+ only; its weight relative to M''_11.
c1p, c4p = ps.psi1[0], ps.psi1[3]
print("m'''_11 / (|c1'|^2 |c4'|^2 m''_11) =",
      ps.M3[0, 0].real / (abs(c1p) ** 2 * abs(c4p) ** 2 * ps.M2[0, 0].real))

# %%
# Residual of the first-order model shrinks 4x when eps halves.
for eps in (1e-2, 5e-3, 2.5e-3):
    exact = F(linalg.ket_bra(psi) + eps * M)
    resid = np.abs(exact - (linalg.ket_bra(ps.psi1) + eps * ps.M1)).max()
    print(f"eps={eps:.4f}  residual={resid:.3e}")
