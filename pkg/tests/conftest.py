from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from monopath.vectors import AlphaSpec, FiniteVec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 7))
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def finite_vecs(draw, max_index: int = 8, min_size: int = 0):
    entries = draw(st.dictionaries(st.integers(1, max_index), rationals, min_size=min_size, max_size=max_index))
    return FiniteVec(entries)


@st.composite
def alphas(draw, max_prefix: int = 4):
    prefix = draw(st.lists(rationals, max_size=max_prefix))
    return AlphaSpec(tuple(prefix), draw(nonzero_rationals))


# acceptance summary lines, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        name, ok = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {name}")
