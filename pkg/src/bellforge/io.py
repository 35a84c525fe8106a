"""JSON state files and sweep specifications.

A pure state file::

    {"kind": "pure", "label": "phi+", "amplitudes": [[0.7071067811865476, 0.0], ...]}

A mixed state file::

    {"kind": "mixed", "matrix": [[[re, im], [re, im], [re, im], [re, im]], ...]}

Floats are written with Python's shortest round-trip repr, so reading a file
back gives bit-identical doubles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from bellforge.states import NOISE_KINDS, as_density, as_pure


class StateFileError(ValueError):
    """Malformed file (as opposed to a well-formed but invalid state)."""


@dataclass
class StateFile:
    kind: str
    data: np.ndarray
    label: str | None = None

    @property
    def is_pure(self) -> bool:
        return self.kind == "pure"


def _pairs(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape[-1] != 2:
        raise StateFileError("complex numbers must be written as [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _unpairs(z: np.ndarray) -> list:
    z = np.asarray(z, dtype=complex)
    return np.stack([z.real, z.imag], axis=-1).tolist()


def state_from_dict(obj: dict) -> StateFile:
    """Parse and validate; raises StateFileError on bad structure and
    ValueError on an invalid state."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise StateFileError("state file must be an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "pure":
            data = _pairs(obj["amplitudes"])
            if data.shape != (4,):
                raise StateFileError(f"'amplitudes' must hold 4 entries, got {data.shape}")
        elif kind == "mixed":
            data = _pairs(obj["matrix"])
            if data.shape != (4, 4):
                raise StateFileError(f"'matrix' must be 4x4, got {data.shape}")
        else:
            raise StateFileError(f"unknown state kind {kind!r}")
    except KeyError as exc:
        raise StateFileError(f"missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, StateFileError):
            raise
        raise StateFileError(f"bad numeric data: {exc}") from None
    if kind == "pure":
        as_pure(data)
    else:
        as_density(data)
    return StateFile(kind, data, obj.get("label"))


def state_to_dict(state: StateFile) -> dict:
    out = {"kind": state.kind}
    if state.label is not None:
        out["label"] = state.label
    out["amplitudes" if state.is_pure else "matrix"] = _unpairs(state.data)
    return out


def read_state(path) -> StateFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: invalid JSON ({exc})") from None
    return state_from_dict(obj)


def write_state(path, state: StateFile) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state), indent=2) + "\n")


@dataclass
class SweepSpec:
    """Noise sweep: ``trials`` base states, each mixed with one fixed noise
    operator at every epsilon."""

    base_state: StateFile | str = "haar-random"
    noise: str = "white"
    epsilons: list[float] = field(default_factory=lambda: [0.01, 0.02, 0.04, 0.08])
    steps: int = 3
    sign: int = 1
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.base_state, str) and self.base_state != "haar-random":
            raise StateFileError("base_state must be 'haar-random' or a state object")
        if self.noise not in NOISE_KINDS:
            raise StateFileError(f"noise must be one of {NOISE_KINDS}")
        if not self.epsilons or any(not 0.0 < e < 1.0 for e in self.epsilons):
            raise StateFileError("epsilons must be non-empty and lie in (0, 1)")
        if list(self.epsilons) != sorted(self.epsilons):
            raise StateFileError("epsilons must be sorted ascending")
        if self.steps not in (2, 3):
            raise StateFileError("steps must be 2 or 3")
        if self.sign not in (1, -1):
            raise StateFileError("sign must be '+' or '-'")
        if self.trials < 1:
            raise StateFileError("trials must be >= 1")


def sweep_from_dict(obj: dict, default_seed: int = 0) -> SweepSpec:
    if not isinstance(obj, dict):
        raise StateFileError("sweep spec must be a JSON object")
    unknown = set(obj) - {"base_state", "noise", "epsilons", "steps", "sign", "trials", "seed"}
    if unknown:
        raise StateFileError(f"unknown sweep fields: {sorted(unknown)}")
    base = obj.get("base_state", "haar-random")
    if isinstance(base, dict):
        base = state_from_dict(base)
    sign = obj.get("sign", "+")
    sign = {"+": 1, "-": -1, 1: 1, -1: -1}.get(sign, 0)
    try:
        return SweepSpec(
            base_state=base,
            noise=obj.get("noise", "white"),
            epsilons=[float(e) for e in obj.get("epsilons", [0.01, 0.02, 0.04, 0.08])],
            steps=int(obj.get("steps", 3)),
            sign=sign,
            trials=int(obj.get("trials", 1)),
            seed=int(obj.get("seed", default_seed)),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, StateFileError):
            raise
        raise StateFileError(f"bad sweep spec: {exc}") from None


def read_sweep(path, default_seed: int = 0) -> SweepSpec:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: invalid JSON ({exc})") from None
    return sweep_from_dict(obj, default_seed)
