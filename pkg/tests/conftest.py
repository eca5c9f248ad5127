from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qcong.algebra import ParamPoly
from qcong.claims import registry_load


@pytest.fixture(scope="session")
def claims():
    return {c.name: c for c in registry_load()}


small_frac = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def param_polys(draw, max_deg=6, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg - i))
        terms[(i, j)] = draw(small_frac)
    return ParamPoly(terms)


def nonzero(strategy):
    return strategy.filter(lambda p: not p.is_zero())


ACCEPTANCE_LINES: dict = {}


def record_criterion(number: int, ok: bool, detail: str):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
