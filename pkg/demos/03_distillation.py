"""
Distillation of noisy pairs
===========================

With noise of weight eps, three steps (eight pairs) give Phi+ with infidelity
of order eps**2. A noisy Bell pair needs only two steps.
"""

import numpy as np

from bellforge import distill
from bellforge.harness import loglog_slope
from bellforge.states import PHI_PLUS, mix, random_ginibre_density, random_pure

rng = np.random.default_rng(3)
eps = np.array([0.005, 0.01, 0.02, 0.04, 0.08])

# %%
# Noisy Bell pair, two steps.
white = np.eye(4) / 4
inf = [1 - distill(mix(PHI_PLUS, white, e), +1, 2).fidelity for e in eps]
for e, i in zip(eps, inf):
    print(f"eps={e:.3f}  input infidelity={0.75 * e:.4f}  output infidelity={i:.2e}")
print("log-log slope:", loglog_slope(eps, inf))

# %%
# Random pure state with random noise, two vs three steps.
s = random_pure(rng)
err = random_ginibre_density(rng)
for steps in (2, 3):
    inf = [1 - distill(mix(s, err, e), +1, steps).fidelity for e in eps]
    print(f"{steps} steps: infidelities {np.array2string(np.array(inf), precision=2)}  "
          f"slope {loglog_slope(eps, inf):.2f}")

# %%
# How small is small? The crossover into the eps**2 regime depends on how far
# the input is from the blind spot, measured by |c1'c4'| after one step.
for _ in range(5):
    s = random_pure(rng)
    k = abs((s[0] * s[3]) ** 2 - (s[1] * s[2]) ** 2)
    coarse = [1 - distill(mix(s, white, e), +1, 3).fidelity for e in eps]
    fine = [1 - distill(mix(s, white, e), +1, 3).fidelity for e in eps / 100]
    print(f"|c1'c4'| = {k:.3f}: slope on eps grid {loglog_slope(eps, coarse):.2f}, "
          f"on eps/100 grid {loglog_slope(eps / 100, fine):.2f}")
