"""
One core step
=============

Alice holds qubits 1 and 2, Bob holds 3 and 4. Both apply U+ and keep their
first qubit only if the second one reads 0. For a pure input the surviving
pair has amplitudes ``(c1c4 + c2c3, 0, 0, c1c4 - c2c3)``.
"""

import numpy as np

from bellforge import step_pure_closed, step_pure_oracle, step_mixed_closed, step_mixed_oracle
from bellforge.gates import u_pm, u_pm_from_decomposition
from bellforge.states import PHI_PLUS, BellState, fidelity_with_pure

# %%
# The unitary and its gate decomposition agree exactly.
print(np.round(u_pm(+1) * np.sqrt(2), 12).real)
print("decomposition gap:", np.abs(u_pm(+1) - u_pm_from_decomposition(+1)).max())

# %%
# A few named inputs. The singlet goes to Phi- after one step; |+>|+> to |00>.
inputs = {
    "Phi+": PHI_PLUS,
    "|+>|+>": np.array([0.5, 0.5, 0.5, 0.5]),
    "singlet": BellState.PSI_MINUS.vector,
    "blind spot": np.array([0.5, 0.5, 0.5, -0.5]),
}
for name, s in inputs.items():
    out = step_pure_closed(s, +1)
    ref = step_pure_oracle(s, +1)
    print(f"{name:>10}: P = {out.success_probability:.4f}  "
          f"out = {np.round(out.state, 4)}  oracle gap = {np.abs(out.state - ref.state).max():.1e}")

# %%
# Mixed input: a Bell pair with 10% white noise.
rho = 0.9 * np.outer(PHI_PLUS, PHI_PLUS) + 0.1 * np.eye(4) / 4
out = step_mixed_closed(rho, +1)
print("P =", out.success_probability)
print("fidelity before:", fidelity_with_pure(rho, PHI_PLUS))
print("fidelity after :", fidelity_with_pure(out.state, PHI_PLUS))
print("oracle gap     :", np.abs(out.state - step_mixed_oracle(rho, +1).state).max())
