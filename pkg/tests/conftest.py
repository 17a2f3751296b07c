"""Acceptance-criteria reporting: one summary line per criterion."""

from contextlib import contextmanager

_criteria: dict[int, tuple[bool, str]] = {}


class CriterionLog:
    """Mutable detail slot a criterion test fills in before asserting."""

    def __init__(self):
        self.detail = ""


@contextmanager
def criterion(number: int):
    log = CriterionLog()
    try:
        yield log
    except BaseException as exc:
        _criteria[number] = (False, log.detail or f"{type(exc).__name__}: {exc}")
        raise
    _criteria[number] = (True, log.detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        passed, detail = _criteria[number]
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {word} - {detail}")
