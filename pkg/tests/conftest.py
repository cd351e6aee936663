import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sbrep.arith import GaussianRational, LaurentPoly
from sbrep.linalg import Matrix, is_invertible
from sbrep.sweep import POOL

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")

small_ints = st.integers(min_value=-4, max_value=4)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)

gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(bool)
pool_values = st.sampled_from(POOL)
nonzero_pool = pool_values.filter(bool)

laurents = st.dictionaries(st.integers(-3, 3), gaussians, max_size=4).map(LaurentPoly)


def matrices(m, elements=gaussians):
    return st.lists(st.lists(elements, min_size=m, max_size=m),
                    min_size=m, max_size=m).map(Matrix)


def invertible_matrices(m, elements=small_ints):
    return matrices(m, elements).filter(is_invertible)


@pytest.fixture
def rng():
    return random.Random(20240601)


def random_invertible(rng, m, lo=-3, hi=3, gaussian=True):
    while True:
        rows = [[GaussianRational(rng.randint(lo, hi), rng.randint(lo, hi) if gaussian else 0)
                 for _ in range(m)] for _ in range(m)]
        M = Matrix(rows)
        if is_invertible(M):
            return M


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
