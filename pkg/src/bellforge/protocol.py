"""Iterated schemes built from the core step.

Two copies of the current state go into each step, so ``k`` steps consume
``2**k`` input pairs. A batch succeeds only if every measurement in the
binary tree reads 0. The cumulative success probability is therefore
``P1**(2**(k-1)) * P2**(2**(k-2)) * ... * Pk``, where each ``Pi`` is computed
on a normalized level-``i`` input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from bellforge import linalg
from bellforge.core_step import StepOutcome, step_mixed_closed, step_pure_closed
from bellforge.gates import as_sign
from bellforge.states import (
    PHI_PLUS,
    as_density,
    as_pure,
    fidelity_with_pure,
    random_local_unitary,
    apply_local_pair,
)


@dataclass
class IterationTrace:
    steps: list[StepOutcome] = field(default_factory=list)
    n_steps: int = 2
    failed_at_step: int | None = None

    @property
    def pairs_consumed(self) -> int:
        return 2**self.n_steps

    @property
    def step_probabilities(self) -> list[float]:
        return [o.success_probability for o in self.steps]

    @property
    def cumulative_success_probability(self) -> float:
        if self.failed_at_step is not None:
            return 0.0
        total = 1.0
        for level, p in enumerate(self.step_probabilities, start=1):
            total *= p ** (2 ** (self.n_steps - level))
        return total

    @property
    def succeeded(self) -> bool:
        return self.failed_at_step is None

    @property
    def output(self) -> np.ndarray | None:
        """Normalized final state, or ``None`` if the batch failed."""
        if not self.succeeded:
            return None
        return self.steps[-1].normalized()

    @property
    def fidelity(self) -> float:
        """Fidelity of the output with Phi+ (``nan`` on failure)."""
        out = self.output
        return math.nan if out is None else fidelity_with_pure(out, PHI_PLUS)


def _iterate(state, sign, n_steps: int, step) -> IterationTrace:
    trace = IterationTrace(n_steps=n_steps)
    for level in range(1, n_steps + 1):
        outcome = step(state, sign)
        trace.steps.append(outcome)
        if outcome.failed:
            trace.failed_at_step = level
            break
        state = outcome.normalized()
    return trace


def concentrate(s, sign=1) -> IterationTrace:
    """Two steps on four copies of a pure state.

    On success the output is exactly Phi+. Separable and blind-spot inputs
    fail instead.
    """
    return _iterate(as_pure(s), as_sign(sign), 2, step_pure_closed)


def distill(rho, sign=1, steps: int = 3) -> IterationTrace:
    """Iterate the mixed-state step ``steps`` times (2 or 3)."""
    if steps not in (2, 3):
        raise ValueError(f"steps must be 2 or 3, got {steps!r}")
    rho = as_density(rho)

    def step(r, sg):
        return step_mixed_closed(r, sg, validate=False)

    return _iterate(rho, as_sign(sign), steps, step)


def blind_spot_signature(trace: IterationTrace) -> bool:
    """True if step 1 succeeded and step 2 failed on ``|11>`` (U+) or ``|00>`` (U-)."""
    if trace.failed_at_step != 2:
        return False
    first = trace.steps[0]
    expected = np.array([0, 0, 0, 1] if first.sign > 0 else [1, 0, 0, 0], dtype=complex)
    return fidelity_with_pure(first.state, expected) > 1.0 - 1e-10


def scramble_and_retry(
    s,
    rng: np.random.Generator,
    max_attempts: int = 10,
    sign=1,
) -> tuple[IterationTrace, int]:
    """Concentrate, and on a blind-spot failure retry after random local unitaries.

    Returns the last trace and the number of attempts used. A failure without
    the blind-spot signature (e.g. a separable input) is not retried.
    """
    s = as_pure(s)
    trace = concentrate(s, sign)
    attempts = 1
    while not trace.succeeded and attempts < max_attempts and blind_spot_signature(trace):
        u_a, u_b = random_local_unitary(rng), random_local_unitary(rng)
        trace = concentrate(apply_local_pair(s, u_a, u_b), sign)
        attempts += 1
    return trace, attempts


def expected_cost(trace: IterationTrace) -> float:
    """Expected number of input pairs per successful output (inf on failure)."""
    p = trace.cumulative_success_probability
    if p <= 0.0:
        return math.inf
    return trace.pairs_consumed / p


@dataclass(frozen=True)
class PerturbationSeries:
    """First-order noise operators through three U+ steps.

    Writing ``rho = |psi><psi| + eps M``, the unnormalized outputs are
    ``|psi'><psi'| + eps M1 + O(eps^2)``, ``|psi''><psi''| + eps M2 + ...``,
    ``|psi'''><psi'''| + eps M3 + ...`` with ``psi'`` etc. the unnormalized
    pure iterates.
    """

    psi: np.ndarray
    M: np.ndarray
    M1: np.ndarray
    M2: np.ndarray
    M3: np.ndarray
    psi1: np.ndarray
    psi2: np.ndarray
    psi3: np.ndarray


def first_order_step(c, m) -> np.ndarray:
    """Linear response of the unnormalized U+ step at ``|c><c|`` in direction ``m``.

    ``c`` need not be normalized; ``m`` is Hermitian.
    """
    c1, c2, c3, c4 = np.asarray(c, dtype=complex)
    m = np.asarray(m, dtype=complex)
    m11, m22, m33, m44 = (m[i, i].real for i in range(4))
    a1, a2, a3, a4 = (abs(x) ** 2 for x in (c1, c2, c3, c4))
    alpha_p = (a1 * m44 + a2 * m33 + a3 * m22 + a4 * m11) / 2.0
    alpha_m = (a1 * m44 - a2 * m33 - a3 * m22 + a4 * m11) / 2.0
    t14 = c1 * np.conj(c4) * np.conj(m[0, 3])
    t23 = c2 * np.conj(c3) * np.conj(m[1, 2])
    beta_p, beta_m = t14 + t23, t14 - t23
    g_common = c1 * np.conj(c2) * np.conj(m[2, 3]) + np.conj(c3) * c4 * m[0, 1]
    g_flip = c1 * np.conj(c3) * np.conj(m[1, 3]) + np.conj(c2) * c4 * m[0, 2]
    gamma_p, gamma_m = g_common + g_flip, g_common - g_flip

    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = alpha_p + beta_p.real + gamma_p.real
    out[0, 3] = alpha_m + beta_m.real - 1j * gamma_p.imag
    out[1, 1] = alpha_p - beta_p.real - gamma_m.real
    out[1, 2] = alpha_m - beta_m.real + 1j * gamma_m.imag
    out[2, 2] = alpha_p - beta_p.real + gamma_m.real
    out[3, 3] = alpha_p + beta_p.real - gamma_p.real
    out[3, 0] = np.conj(out[0, 3])
    out[2, 1] = np.conj(out[1, 2])
    return out


def second_order_operator(c1p, c4p, m1) -> np.ndarray:
    """``M''`` from the step-1 amplitudes ``c1', c4'`` and ``M'``.

    Only the ``alpha'_+`` and ``beta'_+`` terms survive since ``c2' = c3' = 0``.
    """
    alpha = (abs(c1p) ** 2 * m1[3, 3].real + abs(c4p) ** 2 * m1[0, 0].real) / 2.0
    beta = c1p * np.conj(c4p) * np.conj(m1[0, 3])
    upper, lower = alpha + beta.real, alpha - beta.real
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = out[0, 3] = out[3, 0] = out[3, 3] = upper
    out[1, 1] = out[1, 2] = out[2, 1] = out[2, 2] = lower
    return out


def perturbation_series(psi, M, sign=1, tol: float = 1e-10) -> PerturbationSeries:
    """Propagate a first-order noise operator ``M`` through three U+ steps."""
    if as_sign(sign) != 1:
        raise ValueError("the perturbation series is available for U+ only")
    psi = as_pure(psi)
    M = np.asarray(M, dtype=complex)
    if M.shape != (4, 4) or not linalg.is_hermitian(M, tol):
        raise ValueError("M must be a 4x4 Hermitian operator")
    if abs(np.trace(M)) > tol:
        raise ValueError(f"M must be traceless (trace {np.trace(M)!r})")

    psi1 = _pure_step_raw(psi)
    psi2 = _pure_step_raw(psi1)
    psi3 = _pure_step_raw(psi2)
    M1 = first_order_step(psi, M)
    M2 = second_order_operator(psi1[0], psi1[3], M1)
    M3 = first_order_step(psi2, M2)
    # psi2 is proportional to Phi+, so alpha'_+ and Re(beta'_+) cancel in this
    # block analytically; zero it rather than keep ulp-level residue
    M3[1:3, 1:3] = 0.0
    return PerturbationSeries(psi, M, M1, M2, M3, psi1, psi2, psi3)


def _pure_step_raw(c) -> np.ndarray:
    """U+ amplitude map without the normalization precondition."""
    c1, c2, c3, c4 = c
    return np.array([c1 * c4 + c2 * c3, 0.0, 0.0, c1 * c4 - c2 * c3], dtype=complex)
