"""``bellforge`` command line: step, concentrate, distill, sweep, sample.

Exit codes: 0 success, 2 I/O or parse error, 3 invalid state, 4 protocol failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from bellforge import harness
from bellforge.core_step import (
    step_mixed_closed,
    step_mixed_oracle,
    step_pure_closed,
    step_pure_oracle,
)
from bellforge.gates import as_sign
from bellforge.io import StateFileError, read_state, read_sweep
from bellforge.protocol import concentrate, distill, expected_cost, scramble_and_retry
from bellforge.states import (
    BellState,
    NoiseModel,
    classify_input,
    fidelity_with_pure,
    random_density,
    random_pure,
)

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_FAILED = 0, 2, 3, 4
SEED_ENV = "BELLFORGE_SEED"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def default_seed() -> int:
    value = os.environ.get(SEED_ENV)
    if value is None:
        return 0
    try:
        return int(value)
    except ValueError:
        raise CliError(f"{SEED_ENV}={value!r} is not an integer", EXIT_IO) from None


def _load(path):
    try:
        return read_state(path)
    except StateFileError as exc:
        raise CliError(f"parse error: {exc}", EXIT_IO) from None
    except ValueError as exc:
        raise CliError(f"invalid state: {exc}", EXIT_INVALID) from None


def _c(z) -> str:
    z = complex(z)
    return f"{z.real:+.12f}{z.imag:+.12f}j"


def _show(out, label: str) -> None:
    if out.ndim == 1:
        print(f"{label}: [" + ", ".join(_c(z) for z in out) + "]")
    else:
        print(f"{label}:")
        for row in out:
            print("  [" + ", ".join(_c(z) for z in row) + "]")


def _sign(text: str) -> int:
    try:
        return as_sign(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_step(args) -> int:
    st = _load(args.state_file)
    closed, oracle = (
        (step_pure_closed, step_pure_oracle) if st.is_pure else (step_mixed_closed, step_mixed_oracle)
    )
    out = closed(st.data, args.sign)
    print(f"sign: {'+' if out.sign > 0 else '-'}")
    _show(out.state, "unnormalized output")
    print(f"success probability: {out.success_probability:.12g}")
    if args.mixed_oracle:
        ref = oracle(st.data, args.sign)
        gap = max(
            float(np.max(np.abs(out.state - ref.state))),
            abs(out.success_probability - ref.success_probability),
        )
        print(f"oracle max discrepancy: {gap:.3e}")
    if out.failed:
        print(f"FAILURE (probability {out.success_probability:.3g})")
        return EXIT_FAILED
    _show(out.normalized(), "normalized output")
    for bell in BellState:
        print(f"fidelity {bell.label}: {fidelity_with_pure(out.state, bell.vector):.12f}")
    return EXIT_OK


def cmd_concentrate(args) -> int:
    st = _load(args.state_file)
    if not st.is_pure:
        raise CliError("concentrate needs a pure state; use distill", EXIT_INVALID)
    cls = classify_input(st.data)
    print(f"class: {cls.input_class.value}")
    print(f"residuals: |c1c4-c2c3|={cls.residual_minus:.6g} |c1c4+c2c3|={cls.residual_plus:.6g}")
    if args.scramble:
        rng = np.random.default_rng(args.seed)
        trace, attempts = scramble_and_retry(st.data, rng, args.max_attempts, args.sign)
        print(f"attempts: {attempts}")
    else:
        trace = concentrate(st.data, args.sign)
    return _report(trace)


def _report(trace) -> int:
    for i, p in enumerate(trace.step_probabilities, start=1):
        print(f"step {i} probability: {p:.12g}")
    print(f"pairs consumed: {trace.pairs_consumed}")
    if not trace.succeeded:
        print(f"FAILURE failed_at_step={trace.failed_at_step}")
        return EXIT_FAILED
    print(f"cumulative probability: {trace.cumulative_success_probability:.12g}")
    print(f"expected cost (pairs per output): {expected_cost(trace):.12g}")
    print(f"fidelity Phi+: {trace.fidelity:.15f}")
    return EXIT_OK


def cmd_distill(args) -> int:
    rng = np.random.default_rng(args.seed)
    model = NoiseModel(args.noise, args.epsilon)
    if args.generate:
        rho = random_density(model, random_pure(rng), rng)
    elif args.state_file is None:
        raise CliError("give a state file or --generate", EXIT_IO)
    else:
        st = _load(args.state_file)
        rho = random_density(model, st.data, rng) if st.is_pure else st.data
    print(f"steps: {args.steps}")
    return _report(distill(rho, args.sign, args.steps))


def _write(path, text: str) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from None


def cmd_sweep(args) -> int:
    try:
        spec = read_sweep(args.sweep_spec, default_seed=default_seed())
    except StateFileError as exc:
        raise CliError(f"parse error: {exc}", EXIT_IO) from None
    except ValueError as exc:
        raise CliError(f"invalid state: {exc}", EXIT_INVALID) from None
    rows = harness.run_sweep(spec, workers=args.workers)
    _write(args.out, harness.to_csv(harness.SWEEP_COLUMNS, rows))
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.trials < 1:
        raise CliError("--trials must be >= 1", EXIT_IO)
    rows = harness.run_sample(args.trials, args.seed, args.sign, workers=args.workers)
    _write(args.out, harness.to_csv(harness.SAMPLE_COLUMNS, rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellforge", description="Unambiguous Bell-pair concentration and distillation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sign(p):
        p.add_argument("--sign", type=_sign, default=1, help="'+' for U+ (default) or '-' for U-")

    p = sub.add_parser("step", help="apply one core step to a state file")
    p.add_argument("state_file")
    add_sign(p)
    p.add_argument("--mixed-oracle", action="store_true",
                   help="also run the brute-force four-qubit simulation and report the discrepancy")
    p.set_defaults(func=cmd_step)

    p = sub.add_parser("concentrate", help="two-step concentration of a pure state")
    p.add_argument("state_file")
    add_sign(p)
    p.add_argument("--scramble", action="store_true",
                   help="retry blind-spot failures after random local unitaries")
    p.add_argument("--max-attempts", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_concentrate)

    p = sub.add_parser("distill", help="2- or 3-step distillation of a noisy state")
    p.add_argument("state_file", nargs="?")
    p.add_argument("--generate", action="store_true", help="use a Haar-random base state")
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--noise", choices=("white", "dephasing", "ginibre"), default="white")
    p.add_argument("--steps", type=int, choices=(2, 3), default=3)
    add_sign(p)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_distill)

    p = sub.add_parser("sweep", help="noise sweep from a JSON spec, written as CSV")
    p.add_argument("sweep_spec")
    p.add_argument("--out", default="-")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sample", help="Haar-random concentration statistics as CSV")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    add_sign(p)
    p.add_argument("--out", default="-")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.func(args)
    except CliError as exc:
        print(f"bellforge: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"bellforge: invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
