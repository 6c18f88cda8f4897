import pytest


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion.

    The line is printed immediately and repeated in the terminal summary.
    """
    lines = request.config.acceptance_lines

    def record(number, passed, detail=""):
        line = f"[criterion {number:>2}] {'PASS' if passed else 'FAIL'}  {detail}".rstrip()
        lines[number] = line
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
