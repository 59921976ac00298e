import pytest

_VERDICTS: dict[str, list[tuple[str, str, float]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion "
                            "with its runtime limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args[0], mark.args[1]
    verdict = "PASS" if report.passed else "FAIL"
    _VERDICTS.setdefault(number, []).append((title, verdict, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS, key=lambda n: (int(n.rstrip("abc")), n)):
        for title, verdict, seconds in _VERDICTS[number]:
            terminalreporter.write_line(f"criterion {number:<3} {verdict}  {title} ({seconds:.2f} s)")
