import numpy as np
import pytest

_CRITERIA: dict = {}


class CriterionLog:
    """Collects one pass/fail line per acceptance criterion."""

    def __call__(self, key: str, passed: bool, detail: str = ""):
        prev = _CRITERIA.get(key)
        ok = bool(passed) and (prev is None or prev[0])
        text = detail if prev is None or not prev[1] else f"{prev[1]}; {detail}" if detail else prev[1]
        _CRITERIA[key] = (ok, text)
        return passed


@pytest.fixture
def criterion():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split()[0])):
        ok, text = _CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240601))
