"""Shared test plumbing: collects acceptance-criterion verdict lines.

Each acceptance test records exactly one ``[acceptance] ...`` line (PASS or
FAIL with measured numbers); this hook replays them in a dedicated section at
the end of the run so the verdicts are visible even for passing tests, whose
stdout pytest would otherwise swallow.
"""

ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
