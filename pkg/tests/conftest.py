import contextlib

import pytest

_VERDICTS = {}


class _Verdict:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion; failures still propagate."""

    @contextlib.contextmanager
    def record(number, title):
        v = _Verdict(number, title)
        try:
            yield v
        except BaseException as exc:
            _VERDICTS[number] = ("FAIL", v.title, v.detail or str(exc).splitlines()[0])
            print(f"criterion {number}: FAIL  {title}  {_VERDICTS[number][2]}")
            raise
        _VERDICTS[number] = ("PASS", v.title, v.detail)
        print(f"criterion {number}: PASS  {title}  {v.detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        status, title, detail = _VERDICTS[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  {detail}".rstrip())
