import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from singdist.corpus import load_corpus  # noqa: E402
from singdist.distributions import example_form  # noqa: E402
from singdist.parsing import parse_ring  # noqa: E402

settings.register_profile(
    "default",
    deadline=None,
    max_examples=50,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def p3():
    return parse_ring("ring x0,x1,x2,x3")


@pytest.fixture(scope="session")
def xyzw():
    return parse_ring("ring x,y,z,w")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def omega1(p3):
    return example_form(p3, 1)


@pytest.fixture(scope="session")
def omega2(p3):
    return example_form(p3, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(line + ("" if ok else f"  ({detail})"))
