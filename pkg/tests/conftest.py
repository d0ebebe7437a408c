import math
import sys

import pytest

from fdmqubit import FrequencyComb, PulseConfig

TWO_PI = 2 * math.pi
OMEGA_Q0 = TWO_PI * 5e9
DELTA = TWO_PI * 10e6


@pytest.fixture
def reference_comb():
    """N = 15, K = [-7, 7], 5 GHz / 10 MHz."""
    return FrequencyComb(-7, 7, DELTA, OMEGA_Q0)


@pytest.fixture
def single_tone():
    return FrequencyComb(0, 0, DELTA, OMEGA_Q0)


def pulse_at(comb, ratio, phi=math.pi / 2):
    return PulseConfig.from_tau_ratio(comb, ratio, phi)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for mod in list(sys.modules.values()):
        lines.extend(getattr(mod, "ACCEPTANCE_LINES", ()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
