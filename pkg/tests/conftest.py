def pytest_configure(config):
    config.acceptance_lines = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.acceptance_lines
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(lines):
        terminalreporter.write_line(lines[num])
