import numpy as np
import pytest

from bellforge import linalg
from bellforge.core_step import (
    step_mixed_closed,
    step_mixed_oracle,
    step_pure_closed,
    step_pure_oracle,
    x_state_elements,
)
from bellforge.states import PHI_PLUS, NoiseModel, fidelity_with_pure, random_density, random_pure

from helpers import random_product_state, random_schmidt_state, two_input_step

R = 1 / np.sqrt(2)
WHITE_BELL_01 = 0.9 * linalg.ket_bra(PHI_PLUS) + 0.1 * np.eye(4) / 4


@pytest.mark.parametrize(
    "state, expected, prob",
    [
        (PHI_PLUS, [0.5, 0, 0, 0.5], 0.5),
        ([0.5, 0.5, 0.5, 0.5], [0.5, 0, 0, 0], 0.25),
        ([0, R, -R, 0], [-0.5, 0, 0, 0.5], 0.5),
        ([0.5, 0.5, 0.5, -0.5], [0, 0, 0, -0.5], 0.25),
    ],
)
def test_pure_closed_examples(state, expected, prob):
    out = step_pure_closed(state, 1)
    assert np.allclose(out.state, expected, atol=1e-15)
    assert out.success_probability == pytest.approx(prob, abs=1e-15)


def test_pure_closed_zeroes_middle_amplitudes(rng):
    for sign in (1, -1):
        out = step_pure_closed(random_pure(rng), sign)
        assert out.state[1] == 0 and out.state[2] == 0


def test_pure_product_state_fails_in_both_routes():
    for step in (step_pure_closed, step_pure_oracle):
        out = step([1, 0, 0, 0], 1)
        assert np.array_equal(out.state, np.zeros(4)) and out.failed


@pytest.mark.parametrize("sign", [1, -1])
def test_pure_oracle_matches_closed(rng, sign):
    for _ in range(1000):
        s = random_pure(rng)
        a, b = step_pure_closed(s, sign), step_pure_oracle(s, sign)
        assert np.max(np.abs(a.state - b.state)) <= 1e-12
        assert abs(a.success_probability - b.success_probability) <= 1e-12


def test_probability_is_squared_norm(rng):
    for _ in range(100):
        out = step_pure_closed(random_pure(rng), 1)
        assert out.success_probability == pytest.approx(np.vdot(out.state, out.state).real, abs=1e-15)
        assert 0.0 <= out.success_probability <= 1.0


def test_separable_family_probability(rng):
    for _ in range(1000):
        s = random_product_state(rng)
        p = step_pure_closed(s, 1).success_probability
        assert abs(p - 4 * abs(s[0] * s[3]) ** 2) <= 1e-12


def test_schmidt_family_probability(rng):
    for _ in range(1000):
        s = random_schmidt_state(rng)
        c = 2 * abs(s[0] * s[3])
        assert abs(step_pure_closed(s, 1).success_probability - c**2 / 2) <= 1e-12


def test_x_state_terms_for_white_bell():
    el = x_state_elements(WHITE_BELL_01, 1)
    assert el.a_plus == pytest.approx((0.475**2 + 0.025**2) / 2, abs=1e-15)
    assert el.b_plus == pytest.approx(0.45**2 / 2, abs=1e-15)
    assert el.d_plus == 0 and el.d_minus == 0
    assert el.trace == pytest.approx(0.4525, abs=1e-15)


def test_mixed_white_bell_fixture():
    out = step_mixed_closed(WHITE_BELL_01, 1)
    ref = step_mixed_oracle(WHITE_BELL_01, 1)
    assert np.max(np.abs(out.state - ref.state)) <= 1e-12
    assert out.success_probability == pytest.approx(0.4525, abs=1e-10)
    # rho'_11 + rho'_44 + 2 Re rho'_14 over 2P: (0.42875 + 0.4275) / (2 * 0.4525)
    assert fidelity_with_pure(out.state, PHI_PLUS) == pytest.approx(0.428125 / 0.4525, abs=1e-10)


def test_mixed_pure_bell():
    out = step_mixed_closed(linalg.ket_bra(PHI_PLUS), 1)
    assert out.success_probability == pytest.approx(0.5, abs=1e-15)
    assert fidelity_with_pure(out.state, PHI_PLUS) == pytest.approx(1.0, abs=1e-15)


def test_maximally_mixed_matches_oracle():
    for sign in (1, -1):
        a = step_mixed_closed(np.eye(4) / 4, sign)
        b = step_mixed_oracle(np.eye(4) / 4, sign)
        assert np.max(np.abs(a.state - b.state)) <= 1e-12
        assert a.success_probability == pytest.approx(b.success_probability, abs=1e-12)


@pytest.mark.parametrize("sign", [1, -1])
def test_mixed_oracle_matches_closed(rng, sign):
    for _ in range(500):
        rho = random_density(NoiseModel("ginibre", rng.uniform(0, 0.99)), random_pure(rng), rng)
        a, b = step_mixed_closed(rho, sign), step_mixed_oracle(rho, sign)
        assert np.max(np.abs(a.state - b.state)) <= 1e-12


@pytest.mark.parametrize("sign", [1, -1])
def test_mixed_oracle_matches_loop_reference(rng, sign):
    rho = random_density(NoiseModel("ginibre", 0.5), random_pure(rng), rng)
    assert np.allclose(step_mixed_oracle(rho, sign).state, two_input_step(rho, rho, sign), atol=1e-13)


@pytest.mark.parametrize("sign", [1, -1])
def test_pure_and_mixed_agree(rng, sign):
    for _ in range(200):
        s = random_pure(rng)
        pure = step_pure_closed(s, sign)
        for step in (step_mixed_closed, step_mixed_oracle):
            mixed = step(linalg.ket_bra(s), sign)
            assert np.max(np.abs(mixed.state - linalg.ket_bra(pure.state))) <= 1e-12
            assert abs(mixed.success_probability - pure.success_probability) <= 1e-12


def test_x_structure(rng):
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = mask[i, 3 - i] = False
    for _ in range(200):
        rho = random_density(NoiseModel("ginibre", 0.3), random_pure(rng), rng)
        for sign in (1, -1):
            closed = step_mixed_closed(rho, sign).state
            assert np.all(closed[mask] == 0)
            assert np.max(np.abs(step_mixed_oracle(rho, sign).state[mask])) <= 1e-12
            assert np.all(np.diag(closed).real >= -1e-12)
            assert linalg.is_hermitian(closed) and linalg.is_psd(closed)


def test_trace_is_four_a_plus(rng):
    for _ in range(100):
        rho = random_density(NoiseModel("ginibre", 0.4), random_pure(rng), rng)
        el = x_state_elements(rho, 1)
        out = step_mixed_closed(rho, 1)
        assert out.success_probability == el.trace == 4 * el.a_plus


def test_u_minus_flips_last_terms(rng):
    rho = random_density(NoiseModel("ginibre", 0.4), random_pure(rng), rng)
    p, m = x_state_elements(rho, 1), x_state_elements(rho, -1)
    assert m.rho11 == pytest.approx(p.a_plus + p.b_plus - p.d_plus.real)
    assert m.rho14 == pytest.approx(p.a_minus + p.b_minus + 1j * p.d_plus.imag)
    assert m.rho23 == pytest.approx(p.a_minus - p.b_minus - 1j * p.d_minus.imag)


def test_mixed_rejects_non_density():
    with pytest.raises(ValueError):
        step_mixed_closed(np.diag([1.1, -0.1, 0, 0]), 1)
