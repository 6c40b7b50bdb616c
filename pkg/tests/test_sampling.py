import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclic_cbd.core import validate
from cyclic_cbd.measures import measure
from cyclic_cbd.sampling import PLACEMENTS, random_marginals, random_system, random_systems


@given(st.integers(0, 2**32 - 1), st.integers(2, 6), st.sampled_from(PLACEMENTS), st.booleans())
def test_draws_are_valid(seed, n, placement, consistent):
    system = random_system(np.random.default_rng(seed), n, consistent, placement)
    v = validate(system)
    assert not v.has_deterministic_variable
    if consistent:
        assert system.is_consistently_connected


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_marginal_range(seed, n):
    m = random_marginals(np.random.default_rng(seed), n, consistent=False)
    assert m.shape == (n, 2)
    assert np.all((m >= 0.05) & (m <= 0.95))


def test_seeded():
    a = random_systems(5, 4, 10)
    b = random_systems(5, 4, 10)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x.marginals, y.marginals)
        np.testing.assert_array_equal(x.bunch_products, y.bunch_products)


def test_unknown_placement():
    with pytest.raises(ValueError):
        random_system(np.random.default_rng(0), 3, placement="corner")


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_mixture_covers_all_regimes(n):
    reports = [measure(s) for s in random_systems(1000 + n, n, 200)]
    contextual = sum(r.contextual for r in reports)
    hyper = sum(r.ncnt_branch == "hyperplane" for r in reports)
    box = sum(r.ncnt_branch == "box" for r in reports)
    assert contextual >= 5 and hyper >= 20 and box >= 20
