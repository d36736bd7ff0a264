import pytest

from pcdrive import CompoundTrainGeometry, CycloidStageGeometry, PlanetaryStageGeometry

ACCEPTANCE_LINES = []


@pytest.fixture
def table3():
    return CompoundTrainGeometry.from_counts(39, 24, 87, 59, 60)


@pytest.fixture
def table3_planetary():
    return PlanetaryStageGeometry(39, 24, 87, 3)


@pytest.fixture
def table3_cycloid():
    return CycloidStageGeometry(59, 60)


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion, then assert."""
    def check(number, label, ok, detail="", gating=True):
        status = ("PASS" if ok else "FAIL") if gating else "INFO"
        line = f"[{status}] criterion {number}: {label} {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        if gating:
            assert ok, f"criterion {number} failed: {label} {detail}"
    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
