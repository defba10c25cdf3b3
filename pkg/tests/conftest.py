import pytest

_ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


class AcceptanceLog:
    """Records one verdict line per acceptance criterion."""

    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""

    def note(self, text: str) -> None:
        self.detail = text


@pytest.fixture
def acceptance(request):
    number, title = request.node.get_closest_marker("criterion").args
    log = AcceptanceLog(number, title)
    yield log
    _ACCEPTANCE.setdefault(number, (title, "FAIL", log.detail or "did not finish"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    log = item.funcargs.get("acceptance")
    detail = log.detail if log is not None else ""
    _ACCEPTANCE[number] = (title, "PASS" if rep.passed else "FAIL", detail)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, verdict, detail = _ACCEPTANCE[number]
        tr.write_line(f"[{verdict}] {number:2d}. {title}" + (f": {detail}" if detail else ""))
