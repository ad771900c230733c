import math

import pytest
from hypothesis import settings

from eavesmode import ChannelState, SystemParams

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Record one pass/fail line per acceptance criterion; echoed in the terminal summary."""

    def report(number: int, title: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_channel(g_AR=1.0, g_RB=1.0, g_AM=1.0, g_MR=1.0, g_RM=1.0, g_MB=1.0) -> ChannelState:
    return ChannelState.from_gains(g_AR, g_RB, g_AM, g_MR, g_RM, g_MB)


def unit_params(P_A=1.0, P_R=1.0, sigma2=1.0, Q_max=1.0) -> SystemParams:
    return SystemParams(P_A=P_A, P_R=P_R, sigma2=sigma2, Q_max=Q_max)


def half_log2(x: float) -> float:
    return 0.5 * math.log2(x)
