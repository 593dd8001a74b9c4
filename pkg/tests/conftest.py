import mpmath
import pytest


@pytest.fixture(autouse=True)
def _precision():
    # tests compare against mpmath closed forms at a fixed working precision
    with mpmath.workdps(40):
        yield
