import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, elapsed, why = results[number]
        line = f"{status} criterion {number} ({elapsed:.2f}s)"
        terminalreporter.write_line(line + (f": {why}" if why else ""))
