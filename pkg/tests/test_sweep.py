from pathlib import Path

import numpy as np
import pytest

from cyclic_cbd.errors import BadRank
from cyclic_cbd.measures import Delta, s1
from cyclic_cbd.sweep import (
    CSV_FIELDS,
    MODES,
    continuity,
    diagonal,
    max_margin_on_diagonal,
    step_length,
    sweep,
    sweep_csv,
    sweep_marginals,
)

GOLDEN = Path(__file__).parent / "golden"
CASES = [(n, mode) for n in range(2, 8) for mode in MODES]


@pytest.mark.parametrize("n,mode", CASES)
def test_golden_csv(n, mode):
    expected = (GOLDEN / f"sweep_rank{n}_{mode}.csv").read_text()
    assert sweep_csv(sweep(n, mode)) == expected


def test_repeatable():
    assert sweep_csv(sweep(5, "inconsistent")) == sweep_csv(sweep(5, "inconsistent"))


def test_csv_format():
    text = sweep_csv(sweep(3, "consistent", steps=5))
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_FIELDS)
    assert text.endswith("\n") and len(lines) == 7
    assert "0.25" in lines[2]


def test_rank4_contextual_end():
    rows = sweep(4, "consistent")
    assert rows[0].signed_measure == 2
    assert rows[0].s1 == 4 and rows[0].Delta == 2


def test_rank3_midpoint():
    rows = sweep(3, "consistent")
    mid = rows[len(rows) // 2]
    assert mid.t == 0.5
    assert mid.signed_measure == pytest.approx(-1)


def test_diagonal_shape():
    start, end = diagonal(np.zeros((4, 2)))
    np.testing.assert_array_equal(start, [1, 1, 1, -1])
    np.testing.assert_array_equal(end, [-1, -1, -1, 1])
    start, end = diagonal(np.zeros((3, 2)))
    np.testing.assert_array_equal(start, -1)
    np.testing.assert_array_equal(end, 1)


def test_marginals():
    el = sweep_marginals(3, "inconsistent")
    np.testing.assert_array_equal(el, [[-0.2, 0.1]] * 3)
    with pytest.raises(ValueError):
        sweep_marginals(3, "sideways")


@pytest.mark.parametrize("n", [1, 8])
def test_bad_rank(n):
    with pytest.raises(BadRank):
        sweep(n)


def test_step_length():
    # from (1, 1, 1, -1) to (-1, -1, -1, 1): L1 length 8
    assert step_length(4, "consistent", 201) == pytest.approx(8 / 200)


@pytest.mark.parametrize("n", range(2, 8))
def test_consistent_continuity(n):
    rep = continuity(sweep(n, "consistent"), n, "consistent")
    assert rep.continuous and rep.piecewise_linear and rep.crosses_zero
    assert rep.passed
    assert rep.sign_change == (n > 2)


@pytest.mark.parametrize("n", range(2, 8))
def test_inconsistent_continuity(n):
    rep = continuity(sweep(n, "inconsistent"), n, "inconsistent")
    assert rep.continuous and rep.piecewise_linear
    # the diagonal only reaches the contextual region for small ranks
    assert rep.crosses_zero == (n <= 4)


@pytest.mark.parametrize("n", range(2, 8))
def test_max_margin_matches_samples(n):
    for mode in MODES:
        rows = sweep(n, mode)
        sampled = max(r.s1 - r.Delta for r in rows)
        assert max_margin_on_diagonal(n, mode) == pytest.approx(sampled, abs=1e-12)


def test_inconsistent_high_rank_bound():
    # delta = 0.3 n, so Delta = n from rank 7 on, while the box sides are
    # at most 0.9 from the origin
    for n in (5, 6, 7):
        el = sweep_marginals(n, "inconsistent")
        start, end = diagonal(el)
        assert max(s1(start), s1(end)) <= Delta(el) + 1e-12
