import numpy as np
import pytest
from hypothesis import settings

from duk.validation import random_remote_config

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for the acceptance summary, then assert."""

    def check(name, ok, detail):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        assert ok, f"{name}: {detail}"

    return check


def remote_configs(count, seed, n_values=(2, 3, 4, 5)):
    rng = np.random.default_rng(seed)
    return [random_remote_config(rng, int(rng.choice(n_values))) for _ in range(count)]
