"""Small dense complex linear algebra for 1, 2 and 4 qubits.

Vectors and matrices are plain complex ``numpy`` arrays. Basis indices follow
the big-endian convention: the first qubit label in an order is the most
significant bit, so for qubits ``(1, 2, 3, 4)`` the index is ``b1 b2 b3 b4``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

MAX_DIM = 16
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-9

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def _as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def _n_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def kron(a, b) -> np.ndarray:
    """Kronecker product of two vectors or two matrices, capped at dimension 16."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise ValueError("kron needs two vectors or two matrices")
    if a.shape[0] * b.shape[0] > MAX_DIM:
        raise ValueError(
            f"kron of dims {a.shape[0]} and {b.shape[0]} exceeds {MAX_DIM}"
        )
    return np.kron(a, b)


def reorder_qubits(x, src: Sequence[int], dst: Sequence[int]) -> np.ndarray:
    """Permute basis indices of ``x`` from qubit order ``src`` to ``dst``.

    ``x`` may be a state vector or an operator. For example, the product
    ``|psi>_13 (x) |psi>_24`` is naturally written in order ``(1, 3, 2, 4)``;
    ``reorder_qubits(v, (1, 3, 2, 4), (1, 2, 3, 4))`` returns it in the
    standard order.
    """
    x = np.asarray(x, dtype=complex)
    src, dst = tuple(src), tuple(dst)
    if sorted(src) != sorted(dst) or len(set(src)) != len(src):
        raise ValueError(f"qubit orders {src} and {dst} are not permutations of one set")
    n = _n_qubits(x.shape[0])
    if n != len(src):
        raise ValueError(f"order {src} has {len(src)} qubits but array has {n}")
    perm = [src.index(q) for q in dst]
    if x.ndim == 1:
        return x.reshape([2] * n).transpose(perm).reshape(-1)
    if x.ndim == 2 and x.shape[0] == x.shape[1]:
        axes = perm + [n + p for p in perm]
        return x.reshape([2] * (2 * n)).transpose(axes).reshape(x.shape)
    raise ValueError(f"cannot reorder array of shape {x.shape}")


def project_ancillas_to_zero(
    x,
    ancillas: Sequence[int] = (2, 4),
    order: Sequence[int] = (1, 2, 3, 4),
) -> np.ndarray:
    """Unnormalized component of ``x`` with every ancilla qubit in ``|0>``.

    The result lives on the remaining qubits (in their original relative order).
    Its squared norm (vectors) or trace (operators) is the probability of
    measuring all ancillas as 0. A zero result is a legal certain failure.
    """
    x = np.asarray(x, dtype=complex)
    order = tuple(order)
    n = _n_qubits(x.shape[0])
    if n != len(order) or not set(ancillas) <= set(order):
        raise ValueError(f"ancillas {tuple(ancillas)} not in qubit order {order}")
    idx = tuple(0 if q in ancillas else slice(None) for q in order)
    kept = 2 ** (n - len(set(ancillas)))
    if x.ndim == 1:
        return x.reshape([2] * n)[idx].reshape(kept).copy()
    return x.reshape([2] * (2 * n))[idx + idx].reshape(kept, kept).copy()


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = _as_square(m)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def is_psd(m, tol: float = PSD_TOL) -> bool:
    """True if every eigenvalue of the Hermitian part of ``m`` is >= ``-tol``."""
    m = _as_square(m)
    h = 0.5 * (m + m.conj().T)
    w, _ = jacobi_eigh(h)
    return bool(w.min() >= -tol)


def jacobi_eigh(
    h,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a small Hermitian matrix by cyclic Jacobi rotations.

    Returns ascending eigenvalues ``w`` and unitary ``v`` with ``h = v diag(w) v^H``.
    Sweeps stop once the off-diagonal Frobenius norm falls below
    ``tol * max(1, ||h||_F)``.
    """
    a = _as_square(h).copy()
    n = a.shape[0]
    if n > MAX_DIM:
        raise ValueError(f"jacobi_eigh supports dimension <= {MAX_DIM}")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    off_mask = ~np.eye(n, dtype=bool)

    def off_norm() -> float:
        return float(np.sqrt(np.sum(np.abs(a[off_mask]) ** 2)))

    for _ in range(max_sweeps):
        if off_norm() <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                diff = aqq - app
                if abs(diff) > 1e100 * mag:
                    t = mag / diff
                else:
                    theta = diff / (2.0 * mag)
                    t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # columns p, q of the rotation: phase fix on q, then a real Givens step
                g_p = np.array([c, -s * np.conj(phase)])
                g_q = np.array([s * phase, c])
                g = np.stack([g_p, g_q], axis=1)
                cols = a[:, [p, q]] @ g
                a[:, [p, q]] = cols
                rows = g.conj().T @ a[[p, q], :]
                a[[p, q], :] = rows
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, [p, q]] = v[:, [p, q]] @ g
    w = np.diag(a).real.copy()
    order = np.argsort(w)
    return w[order], v[:, order]


def dagger(m) -> np.ndarray:
    return np.asarray(m, dtype=complex).conj().T


def is_unitary(m, tol: float = 1e-10) -> bool:
    m = _as_square(m)
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def ket_bra(v) -> np.ndarray:
    """``|v><v|`` for a (possibly unnormalized) vector."""
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())
