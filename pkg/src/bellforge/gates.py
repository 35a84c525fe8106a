"""The local two-qubit unitaries U+ and U- and their elementary-gate form.

Conventions: CNOT uses the first (left) tensor factor as control,
``H = [[1, 1], [1, -1]] / sqrt(2)``.
"""

from __future__ import annotations

import numpy as np

SQRT_HALF = 1.0 / np.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def as_sign(sign) -> int:
    """Normalize ``+1``/``-1``/``"+"``/``"-"`` to ``+1`` or ``-1``."""
    if sign in (1, "+", "plus", "U+"):
        return 1
    if sign in (-1, "-", "minus", "U-"):
        return -1
    raise ValueError(f"sign must be +1 or -1, got {sign!r}")


def u_pm(sign) -> np.ndarray:
    """U+ (``sign=+1``) or U- (``sign=-1``) as an explicit 4x4 matrix."""
    s = as_sign(sign)
    return SQRT_HALF * np.array(
        [
            [0, 1, s, 0],
            [1, 0, 0, s],
            [0, 1, -s, 0],
            [1, 0, 0, -s],
        ],
        dtype=complex,
    )


def u_pm_from_decomposition(sign) -> np.ndarray:
    """Build U+/U- from H, X and CNOT.

    ``U+ = (H x 1) CNOT (1 x X)`` and ``U- = (X x 1) U+``.
    """
    s = as_sign(sign)
    u = np.kron(H, I2) @ CNOT @ np.kron(I2, X)
    if s < 0:
        u = np.kron(X, I2) @ u
    return u
