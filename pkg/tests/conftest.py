import sys

import pytest
from hypothesis import HealthCheck, settings

# derandomized so that repeated runs are identical
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")


@pytest.fixture
def report(capsys):
    """Print a line straight to the terminal, bypassing capture."""
    def emit(line):
        with capsys.disabled():
            sys.stdout.write(line + "\n")
            sys.stdout.flush()
    return emit
