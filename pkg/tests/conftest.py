from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def F(x):
    return Fraction(x)


def box(*sides):
    """[0, a_1] x ... x [0, a_d] as a vertex list."""
    from itertools import product
    return [tuple(Fraction(c) for c in p) for p in product(*[(0, a) for a in sides])]


@pytest.fixture
def report_line(request):
    """Write a line to the terminal, bypassing output capture."""
    reporter = request.config.pluginmanager.getplugin("terminalreporter")
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def emit(text):
        with capman.global_and_fixture_disabled():
            reporter.write_line(text)
    return emit
