import pytest
from hypothesis import strategies as st

from symspec.spectrum import SymmetricFunction


@st.composite
def symmetric_functions(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    levels = draw(st.lists(st.sampled_from((1, -1)), min_size=n + 1, max_size=n + 1))
    return SymmetricFunction(n, tuple(levels))


@pytest.fixture
def maj3():
    return SymmetricFunction(3, (-1, -1, 1, 1))


def parity(n):
    return SymmetricFunction(n, tuple(-1 if k % 2 else 1 for k in range(n + 1)))


def constant(n, value=1):
    return SymmetricFunction(n, (value,) * (n + 1))


def all_functions(n):
    return [SymmetricFunction.from_index(n, i) for i in range(2 ** (n + 1))]


# acceptance criteria report: number -> (passed, title, detail)
ACCEPTANCE: dict = {}


def record_criterion(number: int, title: str, passed: bool, detail: str):
    ACCEPTANCE[number] = (passed, title, detail)
    line = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}: {title} ({detail})"
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, title, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number:2d} {'PASS' if passed else 'FAIL'}: {title} ({detail})")
