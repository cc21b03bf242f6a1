import pytest

# criterion id -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance_line():
    def record(criterion: int, passed: bool, detail: str):
        ACCEPTANCE_LINES[criterion] = (passed, detail)
        print(f"[criterion {criterion}] {'PASS' if passed else 'FAIL'}: {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE_LINES):
        passed, detail = ACCEPTANCE_LINES[criterion]
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if passed else 'FAIL'}  {detail}")
