"""Independent reference routines used only by the tests."""

import numpy as np

from bellforge.gates import u_pm


def two_input_step(rho_a, rho_b, sign):
    """One core step on two possibly different, unnormalized pair states.

    Built from index loops rather than the library's reorder/project helpers.
    """
    u = u_pm(sign)
    out = np.zeros((4, 4), dtype=complex)
    # big[(b1 b2 b3 b4), ...] with pair a on (1,3) and pair b on (2,4)
    big = np.zeros((16, 16), dtype=complex)
    for i in range(16):
        b1, b2, b3, b4 = (i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1
        for j in range(16):
            d1, d2, d3, d4 = (j >> 3) & 1, (j >> 2) & 1, (j >> 1) & 1, j & 1
            big[i, j] = rho_a[2 * b1 + b3, 2 * d1 + d3] * rho_b[2 * b2 + b4, 2 * d2 + d4]
    local = np.zeros((16, 16), dtype=complex)
    for i in range(16):
        for j in range(16):
            local[i, j] = u[i >> 2, j >> 2] * u[i & 3, j & 3]
    big = local @ big @ local.conj().T
    for r in range(4):
        for c in range(4):
            # qubits 2 and 4 in |0>: bits b2 = b4 = 0
            ir = ((r >> 1) << 3) | ((r & 1) << 1)
            ic = ((c >> 1) << 3) | ((c & 1) << 1)
            out[r, c] = big[ir, ic]
    return out


def tree_probability(rho, sign, steps):
    """Explicit binary tree of 2**steps leaves; trace of the root is the joint
    probability that every measurement succeeds."""
    level = [np.asarray(rho, dtype=complex)] * 2**steps
    for _ in range(steps):
        level = [two_input_step(level[i], level[i + 1], sign) for i in range(0, len(level), 2)]
    return float(np.trace(level[0]).real), level[0]


def numeric_derivative(f, x, direction):
    """Directional derivative of a quadratic map by central difference (exact in
    exact arithmetic for step size 1)."""
    return (f(x + direction) - f(x - direction)) / 2.0


def random_product_state(rng):
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    s = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
    return s / np.linalg.norm(s)


def random_schmidt_state(rng):
    z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    z /= np.linalg.norm(z)
    return np.array([z[0], 0, 0, z[1]], dtype=complex)


def random_traceless_hermitian(rng, base):
    w = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    err = w @ w.conj().T
    err /= np.trace(err).real
    return err - np.outer(base, base.conj())
