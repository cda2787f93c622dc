import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tentmorph import kernels  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request, monkeypatch):
    """Run a test once per importable kernel backend."""
    module = kernels.available_backends()[request.param]
    for name in ("commuter_value", "commuter_sweep", "orbit_numerators", "itinerary"):
        monkeypatch.setattr(kernels, name, getattr(module, name))
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
