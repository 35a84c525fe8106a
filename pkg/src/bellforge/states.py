"""Two-qubit pure and mixed states, entanglement measures and samplers.

A pure state is a length-4 complex array ``(c1, c2, c3, c4)`` of amplitudes of
``|00>, |01>, |10>, |11>``; a mixed state is a 4x4 complex array.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from bellforge import linalg

NORM_TOL = 1e-12
CLASSIFY_TOL = 1e-10
FAILURE_THRESHOLD = 1e-15


class NoPostSelectedState(ValueError):
    """Raised when a state's weight is below the failure threshold."""


def as_pure(s, normalized: bool = True) -> np.ndarray:
    """Validate and return a pure two-qubit state as a complex array."""
    s = np.asarray(s, dtype=complex)
    if s.shape != (4,):
        raise ValueError(f"pure two-qubit state needs 4 amplitudes, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise ValueError("amplitudes must be finite")
    if normalized:
        norm2 = float(np.vdot(s, s).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm2!r})")
    return s


def as_density(rho, normalized: bool = True) -> np.ndarray:
    """Validate and return a two-qubit density operator."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"two-qubit density matrix must be 4x4, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix entries must be finite")
    if not linalg.is_hermitian(rho):
        raise ValueError("density matrix is not Hermitian")
    if not linalg.is_psd(rho):
        raise ValueError("density matrix is not positive semidefinite")
    if normalized:
        tr = float(np.trace(rho).real)
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
    return rho


def normalize(x) -> np.ndarray:
    """Normalize a pure state (unit norm) or operator (unit trace).

    Raises :class:`NoPostSelectedState` if the weight is below
    ``FAILURE_THRESHOLD``.
    """
    x = np.asarray(x, dtype=complex)
    weight = float(np.vdot(x, x).real) if x.ndim == 1 else float(np.trace(x).real)
    if weight < FAILURE_THRESHOLD:
        raise NoPostSelectedState(f"no post-selected state (weight {weight:.3g})")
    return x / np.sqrt(weight) if x.ndim == 1 else x / weight


class BellState(enum.Enum):
    PHI_PLUS = (1, 0, 0, 1)
    PHI_MINUS = (1, 0, 0, -1)
    PSI_PLUS = (0, 1, 1, 0)
    PSI_MINUS = (0, 1, -1, 0)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.value, dtype=complex) / np.sqrt(2.0)

    @property
    def label(self) -> str:
        return {"PHI_PLUS": "Phi+", "PHI_MINUS": "Phi-", "PSI_PLUS": "Psi+", "PSI_MINUS": "Psi-"}[
            self.name
        ]


PHI_PLUS = BellState.PHI_PLUS.vector


def concurrence_pure(s) -> float:
    """Concurrence ``2|c1 c4 - c2 c3|`` of a normalized pure state."""
    c = as_pure(s)
    return float(2.0 * abs(c[0] * c[3] - c[1] * c[2]))


def fidelity_with_pure(rho, target) -> float:
    """``<target|rho|target>`` after normalizing ``rho``.

    ``rho`` may also be a state vector, in which case the result is the
    overlap ``|<target|psi>|^2``.
    """
    t = as_pure(target)
    rho = normalize(rho)
    if rho.ndim == 1:
        value = abs(np.vdot(t, rho)) ** 2
    else:
        value = np.vdot(t, rho @ t).real
    return float(min(1.0, max(0.0, value)))


class InputClass(enum.Enum):
    GENERIC_ENTANGLED = "GenericEntangled"
    SEPARABLE_NON_BLIND = "SeparableNonBlind"
    BLIND_SPOT_ENTANGLED = "BlindSpotEntangled"
    BLIND_SPOT_SEPARABLE = "BlindSpotSeparable"


@dataclass(frozen=True)
class Classification:
    input_class: InputClass
    residual_minus: float  # |c1 c4 - c2 c3|
    residual_plus: float  # |c1 c4 + c2 c3|


def classify_input(s, tol: float = CLASSIFY_TOL) -> Classification:
    """Sort a pure input by how the two-step protocol treats it.

    * ``BLIND_SPOT_SEPARABLE``: ``c1 c4 = 0 = c2 c3``, some qubit is in a
      computational basis state; fails at step 1.
    * ``SEPARABLE_NON_BLIND``: ``c1 c4 = c2 c3``; fails at step 2.
    * ``BLIND_SPOT_ENTANGLED``: ``c1 c4 = -c2 c3``; fails at step 2.
    * ``GENERIC_ENTANGLED``: everything else; yields Phi+ on success.
    """
    c = as_pure(s)
    p14, p23 = c[0] * c[3], c[1] * c[2]
    r_minus, r_plus = float(abs(p14 - p23)), float(abs(p14 + p23))
    if abs(p14) <= tol and abs(p23) <= tol:
        cls = InputClass.BLIND_SPOT_SEPARABLE
    elif r_minus <= tol:
        cls = InputClass.SEPARABLE_NON_BLIND
    elif r_plus <= tol:
        cls = InputClass.BLIND_SPOT_ENTANGLED
    else:
        cls = InputClass.GENERIC_ENTANGLED
    return Classification(cls, r_minus, r_plus)


NOISE_KINDS = ("white", "dephasing", "ginibre")


@dataclass(frozen=True)
class NoiseModel:
    kind: str = "white"
    epsilon: float = 0.0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; choose from {NOISE_KINDS}")
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in [0, 1), got {self.epsilon!r}")


def random_pure(rng: np.random.Generator) -> np.ndarray:
    """Haar-random two-qubit pure state."""
    z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return z / np.linalg.norm(z)


def random_local_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-random 2x2 unitary (QR of a complex Ginibre matrix, phases fixed)."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_ginibre_density(rng: np.random.Generator) -> np.ndarray:
    w = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = w @ w.conj().T
    return m / np.trace(m).real


def noise_operator(kind: str, base, rng: np.random.Generator | None = None) -> np.ndarray:
    """The noise density operator ``rho_err`` of a given kind."""
    if kind == "white":
        return np.eye(4, dtype=complex) / 4.0
    if kind == "dephasing":
        return np.diag(np.abs(as_pure(base)) ** 2).astype(complex)
    if kind == "ginibre":
        if rng is None:
            raise ValueError("ginibre noise needs an rng")
        return random_ginibre_density(rng)
    raise ValueError(f"unknown noise kind {kind!r}")


def mix(base, rho_err, epsilon: float) -> np.ndarray:
    """``(1 - epsilon)|base><base| + epsilon rho_err``."""
    return (1.0 - epsilon) * linalg.ket_bra(as_pure(base)) + epsilon * rho_err


def random_density(model: NoiseModel, base, rng: np.random.Generator) -> np.ndarray:
    """Noisy copy of ``base`` under ``model``; ginibre noise draws from ``rng``."""
    rho_err = noise_operator(model.kind, base, rng)
    return mix(base, rho_err, model.epsilon)


def apply_local_pair(s, u_a, u_b) -> np.ndarray:
    """Apply ``u_a`` on Alice's qubit and ``u_b`` on Bob's (pure or mixed state)."""
    u_a = np.asarray(u_a, dtype=complex)
    u_b = np.asarray(u_b, dtype=complex)
    for u in (u_a, u_b):
        if u.shape != (2, 2) or not linalg.is_unitary(u):
            raise ValueError("local operations must be 2x2 unitaries")
    u = np.kron(u_a, u_b)
    s = np.asarray(s, dtype=complex)
    if s.ndim == 1:
        return u @ s
    return u @ s @ u.conj().T
