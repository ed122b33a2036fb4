import pytest

from dwise.setcore import SetFamily

_ACCEPTANCE: dict[int, str] = {}


def record_acceptance(cid: int, line: str) -> None:
    _ACCEPTANCE[cid] = line


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[cid])


@pytest.fixture
def c43():
    """All 3-subsets of [4] on ground set [5]."""
    return SetFamily.from_sets(5, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])
