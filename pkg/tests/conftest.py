import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the long H4 searches")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="long search; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_VERDICTS: dict[int, str] = {}


@pytest.fixture
def verdict():
    """Record one acceptance line, then fail the test if the criterion failed."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _VERDICTS[number] = line
        print(line)
        assert ok, line

    return record


def pytest_runtest_logreport(report):
    # criteria that never reached their verdict (skipped or crashed) still get a line
    if report.when not in ("setup", "call") or "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    number = int(name.split("_")[2])
    if report.skipped and number not in _VERDICTS:
        reason = report.longrepr[2] if isinstance(report.longrepr, tuple) else "skipped"
        _VERDICTS[number] = f"criterion {number:>2}: SKIP  {reason}"
    elif report.failed and number not in _VERDICTS:
        _VERDICTS[number] = f"criterion {number:>2}: FAIL  error before the verdict"


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        terminalreporter.write_line(_VERDICTS[number])
