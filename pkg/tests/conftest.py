import helpers


def pytest_terminal_summary(terminalreporter):
    if not helpers.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(helpers.RESULTS):
        terminalreporter.write_line(helpers.RESULTS[n])
