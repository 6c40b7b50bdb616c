"""Hypothesis strategies shared by the test modules."""

import numpy as np
from hypothesis import strategies as st

from cyclic_cbd.core import CyclicSystem, frechet_bounds

prob = st.floats(0.02, 0.98, allow_nan=False)
unit = st.floats(0.0, 1.0, allow_nan=False)


@st.composite
def cyclic_systems(draw, min_rank=2, max_rank=6, consistent=None):
    n = draw(st.integers(min_rank, max_rank))
    if consistent is None:
        consistent = draw(st.booleans())
    if consistent:
        p = np.array([draw(prob) for _ in range(n)])
        m = np.column_stack([p, np.roll(p, -1)])
    else:
        m = np.array([[draw(prob), draw(prob)] for _ in range(n)])
    lo, hi = frechet_bounds(m[:, 0], m[:, 1])
    t = np.array([draw(unit) for _ in range(n)])
    return CyclicSystem(m, lo + t * (hi - lo))


def vectors(n_min=1, n_max=8, bound=1.0):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(
            st.floats(-bound, bound, allow_nan=False), min_size=n, max_size=n
        ).map(np.array)
    )


@st.composite
def contextual_expectations(draw, min_rank=2, max_rank=6):
    """Expectation vectors near an odd vertex of the box, mostly contextual."""
    from cyclic_cbd.core import ExpectationVectors
    from cyclic_cbd.measures import box_intervals

    n = draw(st.integers(min_rank, max_rank))
    small = st.floats(-0.05, 0.05, allow_nan=False)
    e_l = np.array([[draw(small), draw(small)] for _ in range(n)])
    neg = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    if sum(neg) % 2 == 0:
        neg[0] = not neg[0]
    lo, hi = box_intervals(e_l)
    vertex = np.where(neg, lo, hi)
    t = draw(st.floats(0.8, 1.0))
    return ExpectationVectors(e_l, t * vertex)
