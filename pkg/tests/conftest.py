"""Shared test plumbing.

test_acceptance.py appends one human-readable PASS/FAIL line per criterion
to ACCEPTANCE_LINES; the terminal-summary hook below replays them after the
run so they survive pytest's output capture.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
