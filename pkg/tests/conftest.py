from hypothesis import HealthCheck, settings

# derandomized: every run draws the same examples
settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, limit_s): acceptance criterion with a wall-clock budget")
    config.addinivalue_line("markers", "property: hypothesis-driven invariant test")
    config.addinivalue_line("markers", "invariant: exact invariant checked over a parametrized family")


def pytest_collection_modifyitems(items):
    import pytest

    for item in items:
        if getattr(getattr(item, "obj", None), "is_hypothesis_test", False):
            item.add_marker(pytest.mark.property)


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is not None:
        _CRITERIA[crit] = (report.outcome, report.duration, dict(report.user_properties).get("limit"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        outcome, secs, limit = _CRITERIA[n]
        word = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {word}  {secs:7.2f} s  (limit {limit} s)")
