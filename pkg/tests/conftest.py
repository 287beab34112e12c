import pytest

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


class CriterionRecorder:
    def __init__(self, key: str):
        self.key = key

    def check(self, ok: bool, detail: str) -> None:
        _ACCEPTANCE[self.key] = (bool(ok), detail)
        assert ok, f"{self.key}: {detail}"


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    return CriterionRecorder(marker.args[0] if marker else request.node.name)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label for the summary")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split()[0][2:])):
        ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
