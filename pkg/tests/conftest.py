import pytest

_ACCEPTANCE = {}


class CriterionLog:
    """Collects one result line per acceptance criterion."""

    def record(self, number, title, ok, detail):
        _ACCEPTANCE[number] = f"{'PASS' if ok else 'FAIL'}  [{number:>2}] {title}: {detail}"


@pytest.fixture(scope="session")
def criteria():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[key])
