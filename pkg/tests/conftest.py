import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    from helpers import REPORT_LINES

    if REPORT_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(REPORT_LINES):
            terminalreporter.write_line(REPORT_LINES[n])
