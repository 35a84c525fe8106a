"""One round of the protocol: both parties apply U+/U- to their two qubits,
measure qubits 2 and 4, and keep qubits 1 and 3 only if both read 0.

Two independent routes are provided. The ``*_closed`` functions evaluate the
algebraic amplitude / X-state maps. The ``*_oracle`` functions simulate the
four-qubit system explicitly. The oracle is the reference whenever they
disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from bellforge import linalg
from bellforge.gates import as_sign, u_pm
from bellforge.states import FAILURE_THRESHOLD, as_density, as_pure, normalize

# |psi>_13 (x) |psi>_24 comes out of kron in this order
PAIR_ORDER = (1, 3, 2, 4)
LAB_ORDER = (1, 2, 3, 4)


@dataclass(frozen=True)
class StepOutcome:
    """Unnormalized post-selected state of qubits (1, 3) after one step."""

    state: np.ndarray
    success_probability: float
    sign: int
    representation: str  # "closed_form" or "oracle"

    @property
    def failed(self) -> bool:
        return self.success_probability < FAILURE_THRESHOLD

    @property
    def is_pure(self) -> bool:
        return self.state.ndim == 1

    def normalized(self) -> np.ndarray:
        return normalize(self.state)


def _weight(x: np.ndarray) -> float:
    return float(np.vdot(x, x).real) if x.ndim == 1 else float(np.trace(x).real)


def step_pure_closed(s, sign=1) -> StepOutcome:
    c1, c2, c3, c4 = as_pure(s)
    sg = as_sign(sign)
    out = np.array(
        [c1 * c4 + sg * c2 * c3, 0.0, 0.0, c1 * c4 - sg * c2 * c3], dtype=complex
    )
    return StepOutcome(out, _weight(out), sg, "closed_form")


def _pair_vector(s: np.ndarray) -> np.ndarray:
    return linalg.reorder_qubits(linalg.kron(s, s), PAIR_ORDER, LAB_ORDER)


def _pair_density(rho: np.ndarray) -> np.ndarray:
    return linalg.reorder_qubits(linalg.kron(rho, rho), PAIR_ORDER, LAB_ORDER)


def step_pure_oracle(s, sign=1) -> StepOutcome:
    s = as_pure(s)
    sg = as_sign(sign)
    u = u_pm(sg)
    v = linalg.kron(u, u) @ _pair_vector(s)
    out = linalg.project_ancillas_to_zero(v, (2, 4), LAB_ORDER)
    return StepOutcome(out, _weight(out), sg, "oracle")


@dataclass(frozen=True)
class XStateElements:
    """Non-zero entries of the one-step output and the terms they are built from.

    Matrix indices are 1-based as in ``rho_14`` = row 1, column 4.
    """

    a_plus: float
    a_minus: float
    b_plus: float
    b_minus: float
    d_plus: complex
    d_minus: complex
    sign: int
    rho11: float = field(init=False)
    rho14: complex = field(init=False)
    rho22: float = field(init=False)
    rho23: complex = field(init=False)
    rho33: float = field(init=False)
    rho44: float = field(init=False)

    def __post_init__(self):
        # U- flips the sign of the last (d-dependent) term of every element
        sg = self.sign
        dp, dm = self.d_plus, self.d_minus
        set_ = object.__setattr__
        set_(self, "rho11", self.a_plus + self.b_plus + sg * dp.real)
        set_(self, "rho14", self.a_minus + self.b_minus - sg * 1j * dp.imag)
        set_(self, "rho22", self.a_plus - self.b_plus - sg * dm.real)
        set_(self, "rho23", self.a_minus - self.b_minus + sg * 1j * dm.imag)
        set_(self, "rho33", self.a_plus - self.b_plus + sg * dm.real)
        set_(self, "rho44", self.a_plus + self.b_plus - sg * dp.real)

    @property
    def trace(self) -> float:
        return 4.0 * self.a_plus

    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.rho11, self.rho22, self.rho33, self.rho44
        m[0, 3], m[3, 0] = self.rho14, np.conj(self.rho14)
        m[1, 2], m[2, 1] = self.rho23, np.conj(self.rho23)
        return m


def x_state_elements(rho, sign=1) -> XStateElements:
    r = np.asarray(rho, dtype=complex)
    d11, d22, d33, d44 = (r[i, i].real for i in range(4))
    return XStateElements(
        a_plus=(d11 * d44 + d22 * d33) / 2.0,
        a_minus=(d11 * d44 - d22 * d33) / 2.0,
        b_plus=(abs(r[0, 3]) ** 2 + abs(r[1, 2]) ** 2) / 2.0,
        b_minus=(abs(r[0, 3]) ** 2 - abs(r[1, 2]) ** 2) / 2.0,
        d_plus=complex(r[0, 1] * np.conj(r[2, 3]) + r[0, 2] * np.conj(r[1, 3])),
        d_minus=complex(r[0, 1] * np.conj(r[2, 3]) - r[0, 2] * np.conj(r[1, 3])),
        sign=as_sign(sign),
    )


def step_mixed_closed(rho, sign=1, validate: bool = True) -> StepOutcome:
    """X-state map of one step on a mixed input.

    ``validate=False`` skips the density-operator checks; the protocol uses it
    for unnormalized intermediate states.
    """
    if validate:
        rho = as_density(rho)
    el = x_state_elements(rho, sign)
    return StepOutcome(el.matrix(), el.trace, el.sign, "closed_form")


def step_mixed_oracle(rho, sign=1, validate: bool = True) -> StepOutcome:
    if validate:
        rho = as_density(rho)
    sg = as_sign(sign)
    u = u_pm(sg)
    uu = linalg.kron(u, u)
    big = uu @ _pair_density(np.asarray(rho, dtype=complex)) @ uu.conj().T
    out = linalg.project_ancillas_to_zero(big, (2, 4), LAB_ORDER)
    return StepOutcome(out, _weight(out), sg, "oracle")
