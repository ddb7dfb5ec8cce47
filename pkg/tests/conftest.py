"""Shared pytest wiring: the acceptance suite registers one verdict line
per criterion and this hook prints them after capture is released."""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not acceptance_lines:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in sorted(acceptance_lines):
        terminalreporter.write_line(line)
