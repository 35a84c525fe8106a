import numpy as np
import pytest

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Record a named acceptance criterion as PASS only if the block finishes."""

    class Recorder:
        def __init__(self):
            self.name = None
            self.detail = ""

        def __call__(self, name):
            self.name = name
            ACCEPTANCE_RESULTS[name] = (False, "")
            return self

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            ok = exc_type is None
            detail = self.detail if ok else f"{self.detail} | {exc_type.__name__}: {exc}".strip(" |")
            ACCEPTANCE_RESULTS[self.name] = (ok, detail)
            return False

    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[name]
        first = detail.splitlines()[0] if detail else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {first}")
