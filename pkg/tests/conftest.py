import pytest

from lrckit.construction import Strategy, build_instance, plan_params


def make_instance(q, r, mu, w, l, t=None, strategy=Strategy.FULL, seed=None):
    return build_instance(plan_params(q, r, mu, w, l, t, strategy), seed=seed)


@pytest.fixture(scope="session")
def full_q4():
    """[9,6] FULL code over GF(4): the d=2 optimal family member."""
    return make_instance(4, 2, 2, 0, 3, 3, Strategy.FULL)


@pytest.fixture(scope="session")
def colwise_q7():
    """[12,6] COLWISE code over GF(7) with one constraint node."""
    return make_instance(7, 3, 2, 1, 3, 3, Strategy.COLWISE)


@pytest.fixture(scope="session")
def global_q5():
    """[12,8] GLOBAL code over GF(5): dimension r*l-w, measured distance."""
    return make_instance(5, 3, 2, 1, 3, 3, Strategy.GLOBAL)


@pytest.fixture(scope="session")
def full_mu3_q5():
    """[12,6] FULL code over GF(5) with mu=3 local distance."""
    return make_instance(5, 2, 3, 0, 3, 3, Strategy.FULL)
