from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

CRITERION_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERION_LINES):
            terminalreporter.write_line(CRITERION_LINES[k])
