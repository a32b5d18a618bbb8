from __future__ import annotations

import re
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from liegauge.trigring import GaussRational, TrigScalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gauss = st.builds(GaussRational, small_fraction, small_fraction)
term_key = st.tuples(
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=2),
    st.sampled_from([1, 2, 3, 6, 4, 12]),
)
scalars = st.dictionaries(term_key, gauss, max_size=3).map(TrigScalar)
# lighter elements for matrix-level properties, where products grow fast
light_scalars = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 1), st.sampled_from([1, 2])), gauss, max_size=2
).map(TrigScalar)
constants = st.builds(lambda g: TrigScalar({(0, 0, 1): g}), gauss)


@pytest.fixture
def half():
    return Fraction(1, 2)


# one summary line per acceptance criterion

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    n, name = int(m.group(1)), m.group(2)
    prev = _results.get(n, (name, "PASS"))[1]
    if report.failed:
        _results[n] = (name, "FAIL")
    elif report.when == "call" and prev != "FAIL":
        _results[n] = (name, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        name, status = _results[n]
        terminalreporter.write_line(f"{status}  criterion {n:2d}  {name.replace('_', ' ')}")
