"""Unambiguous Bell-pair concentration and distillation by iterated local post-selection."""

from bellforge.core_step import (
    StepOutcome,
    XStateElements,
    step_mixed_closed,
    step_mixed_oracle,
    step_pure_closed,
    step_pure_oracle,
    x_state_elements,
)
from bellforge.gates import u_pm, u_pm_from_decomposition
from bellforge.protocol import (
    IterationTrace,
    PerturbationSeries,
    concentrate,
    distill,
    expected_cost,
    perturbation_series,
    scramble_and_retry,
)
from bellforge.states import (
    BellState,
    InputClass,
    NoiseModel,
    NoPostSelectedState,
    apply_local_pair,
    classify_input,
    concurrence_pure,
    fidelity_with_pure,
    random_density,
    random_local_unitary,
    random_pure,
)

__version__ = "0.1.0"

__all__ = [
    "BellState",
    "InputClass",
    "IterationTrace",
    "NoPostSelectedState",
    "NoiseModel",
    "PerturbationSeries",
    "StepOutcome",
    "XStateElements",
    "apply_local_pair",
    "classify_input",
    "concentrate",
    "concurrence_pure",
    "distill",
    "expected_cost",
    "fidelity_with_pure",
    "perturbation_series",
    "random_density",
    "random_local_unitary",
    "random_pure",
    "scramble_and_retry",
    "step_mixed_closed",
    "step_mixed_oracle",
    "step_pure_closed",
    "step_pure_oracle",
    "u_pm",
    "u_pm_from_decomposition",
    "x_state_elements",
]
