import pytest

# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    def record(number, passed, detail=""):
        ACCEPTANCE[number] = (bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"AC{number}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def shipped_config():
    from pathlib import Path
    return Path(__file__).resolve().parents[1] / "configs" / "table1.conf"
