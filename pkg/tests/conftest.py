import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def vec(*xs):
    return np.array(xs, dtype=np.int64)


@pytest.fixture
def upper2():
    from almostnil.factory import gen_triangular
    return gen_triangular(2, strict=False, p=5, graded=True)


@pytest.fixture
def full2():
    from almostnil.factory import gen_matrix_algebra
    return gen_matrix_algebra(2, p=5)


@pytest.fixture
def strict4():
    from almostnil.factory import gen_triangular
    return gen_triangular(4, strict=True, p=5, graded=True)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("]")[0].split()[-1])):
            terminalreporter.write_line(line)
