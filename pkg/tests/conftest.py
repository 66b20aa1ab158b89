import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from sigma3 import catalog
from sigma3.wedgemap import AttachingVector, WedgeSpace, admissible_elements

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# Degree-8 hosts with finite groups (bottom >= 5), exponents <= 3.
HOSTS8 = (
    [catalog.sphere(n) for n in (5, 6, 7)]
    + [catalog.moore(2, r, t) for r in (1, 2, 3) for t in (6, 7)]
    + [catalog.moore(3, r, 6) for r in (1, 2)]
    + [catalog.ceta(7)]
    + [catalog.cbar(r, 7) for r in (1, 2, 3)]
    + [catalog.chat(s, 7) for s in (1, 2, 3)]
    + [catalog.ccheck(r, s, 7) for r in (1, 2) for s in (1, 2)]
)


@st.composite
def wedges(draw, max_size=4):
    hosts = draw(st.lists(st.sampled_from(HOSTS8), min_size=1, max_size=max_size))
    return WedgeSpace(tuple(hosts))


@st.composite
def admissible_vectors(draw, max_size=4):
    w = draw(wedges(max_size))
    entries = tuple(draw(st.sampled_from(admissible_elements(x, 8))) for x in w)
    return AttachingVector(w, entries)


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion

ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    def record(number, ok, detail):
        ACCEPTANCE[number] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
