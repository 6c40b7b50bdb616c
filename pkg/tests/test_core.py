import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclic_cbd.core import (
    CyclicSystem,
    ExpectationVectors,
    SignVector,
    TrialCounts,
    canonicalize,
    consistent_system,
    from_expectations,
    has_deterministic_variable,
    ingest_trials,
    maximal_connection_couplings,
    rotate,
    to_expectations,
    validate,
    variant,
)
from cyclic_cbd.errors import EmptyContext, FrechetViolation, OutOfRange, RankTooSmall
from cyclic_cbd.lp.oracle import is_noncontextual_lp
from cyclic_cbd.measures import delta, s1, s1_bruteforce

from strategies import cyclic_systems


def _pair_system(p, q, p12, n=2):
    m = np.tile([p, q], (n, 1))
    return CyclicSystem(m, np.full(n, p12))


class TestValidate:
    def test_independent_uniform(self):
        v = validate(_pair_system(0.5, 0.5, 0.25))
        assert not v.has_deterministic_variable

    def test_frechet_upper(self):
        with pytest.raises(FrechetViolation) as info:
            validate(_pair_system(0.5, 0.5, 0.6))
        assert info.value.side == "upper"

    def test_frechet_lower(self):
        with pytest.raises(FrechetViolation):
            validate(_pair_system(0.8, 0.8, 0.5))

    def test_deterministic_flag(self):
        m = np.full((3, 2), 0.5)
        m[0, 0] = 1.0
        prod = m[:, 0] * m[:, 1]
        v = validate(CyclicSystem(m, prod))
        assert v.has_deterministic_variable

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            validate(_pair_system(1.2, 0.5, 0.5))

    def test_rank_one(self):
        with pytest.raises(RankTooSmall):
            validate(CyclicSystem([[0.5, 0.5]], [0.25]))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            CyclicSystem(np.full((3, 2), 0.5), [0.25, 0.25])


class TestExpectations:
    def test_independence_is_zero(self):
        e = to_expectations(_pair_system(0.5, 0.5, 0.25))
        assert np.all(e.e_l == 0) and np.all(e.e_b == 0)

    def test_perfect_correlation(self):
        e = to_expectations(_pair_system(0.5, 0.5, 0.5))
        assert np.all(e.e_b == 1)

    def test_marginal_map(self):
        e = to_expectations(_pair_system(0.4, 0.55, 0.3))
        assert e.e_l[0, 0] == pytest.approx(-0.2)
        assert e.e_l[0, 1] == pytest.approx(0.1)

    @given(cyclic_systems())
    def test_round_trip(self, system):
        back = from_expectations(to_expectations(system))
        np.testing.assert_allclose(back.marginals, system.marginals, atol=1e-12, rtol=0)
        np.testing.assert_allclose(back.bunch_products, system.bunch_products, atol=1e-12, rtol=0)

    @given(cyclic_systems())
    def test_bunch_within_box(self, system):
        e = to_expectations(system)
        lo = np.abs(e.e_l[:, 0] + e.e_l[:, 1]) - 1
        hi = 1 - np.abs(e.e_l[:, 0] - e.e_l[:, 1])
        assert np.all(e.e_b >= lo - 1e-12) and np.all(e.e_b <= hi + 1e-12)


def _max_coupling_grid(p, q, points=20001):
    """Largest E[XY] over all 2x2 tables with marginals p, q, by grid search."""
    lo, hi = max(0.0, p + q - 1), min(p, q)
    x = np.linspace(lo, hi, points)
    return float(np.max(4 * x - 2 * p - 2 * q + 1))


class TestMaximalCouplings:
    def test_consistent_gives_one(self):
        system = consistent_system([0.3, 0.6, 0.5], p_b=[0.2, 0.3, 0.15])
        _, e_c = maximal_connection_couplings(system)
        np.testing.assert_allclose(e_c, 1.0, atol=1e-12)

    def test_caption_marginals(self):
        # content j: first variable of context j has p=0.4, second of j-1 has p=0.55
        m = np.tile([0.4, 0.55], (4, 1))
        system = CyclicSystem(m, m[:, 0] * m[:, 1])
        p_c, e_c = maximal_connection_couplings(system)
        np.testing.assert_allclose(p_c, 0.4)
        np.testing.assert_allclose(e_c, 0.7, atol=1e-12)
        assert e_c[0] == pytest.approx(_max_coupling_grid(0.4, 0.55), abs=1e-9)

    @given(cyclic_systems())
    def test_two_formulas_agree(self, system):
        p_c, e_c = maximal_connection_couplings(system)
        e = to_expectations(system).with_maximal_couplings()
        np.testing.assert_allclose(e_c, e.e_c, atol=1e-12, rtol=0)
        first = system.marginals[:, 0]
        prev = np.roll(system.marginals[:, 1], 1)
        grid = [_max_coupling_grid(a, b, 2001) for a, b in zip(first, prev)]
        np.testing.assert_allclose(e_c, grid, atol=1e-9)


class TestVariant:
    eb = np.array([-0.3, 0.5, 0.4])

    def _e(self, eb, el=None):
        el = np.zeros((len(eb), 2)) if el is None else el
        return ExpectationVectors(el, eb)

    def test_identity(self):
        e = self._e(self.eb)
        assert variant(e, [False] * 3).allclose(e)

    def test_flip_one_content(self):
        # content index 1 enters bunches 0 and 1
        v = variant(self._e(self.eb), [False, True, False])
        np.testing.assert_allclose(v.e_b, [0.3, -0.5, 0.4])
        assert s1_bruteforce(v.e_b) == pytest.approx(1.2)
        assert s1_bruteforce(self.eb) == pytest.approx(1.2)

    def test_flip_content_shared_by_first_and_last(self):
        v = variant(self._e(self.eb), [True, False, False])
        np.testing.assert_allclose(v.e_b, [0.3, 0.5, -0.4])
        assert s1(v.e_b) == pytest.approx(1.2)

    def test_flip_all(self):
        el = np.array([[0.1, -0.2], [0.3, 0.0], [0.4, 0.5]])
        v = variant(self._e(self.eb, el), [True] * 3)
        np.testing.assert_allclose(v.e_b, self.eb)
        np.testing.assert_allclose(v.e_l, -el)

    @given(cyclic_systems(), st.data())
    def test_invariants(self, system, data):
        e = to_expectations(system).with_maximal_couplings()
        flips = data.draw(st.lists(st.booleans(), min_size=e.rank, max_size=e.rank))
        v = variant(e, flips)
        assert s1_bruteforce(v.e_b) == pytest.approx(s1_bruteforce(e.e_b), abs=1e-12)
        np.testing.assert_allclose(
            v.same_content_differences(), e.same_content_differences(), atol=1e-12
        )
        assert delta(v) == pytest.approx(delta(e), abs=1e-12)
        np.testing.assert_array_equal(v.e_c, e.e_c)


def _canonical_ok(eb):
    return np.all(np.abs(eb[-1]) <= eb[:-1] + 1e-15)


class TestCanonicalize:
    def _e(self, eb):
        return ExpectationVectors(np.zeros((len(eb), 2)), np.array(eb, dtype=float))

    def test_already_canonical(self):
        out, flips, rot = canonicalize(self._e([0.5, 0.4, 0.3]))
        np.testing.assert_allclose(out.e_b, [0.5, 0.4, 0.3])
        assert rot == 0 and not any(flips)
        assert s1(out.e_b) == pytest.approx(0.6)

    def test_rotation(self):
        out, _, rot = canonicalize(self._e([-0.3, 0.5, 0.4]))
        np.testing.assert_allclose(out.e_b, [0.5, 0.4, -0.3])
        assert rot == 1
        assert s1(out.e_b) == pytest.approx(1.2)

    def test_zero(self):
        out, flips, rot = canonicalize(self._e([0, 0, 0]))
        np.testing.assert_array_equal(out.e_b, 0)
        assert rot == 0 and not any(flips)

    def test_tie_takes_smallest_rotation(self):
        # |e| minimal at positions 0 and 2; rotation 0 puts position 2 last
        _, _, rot = canonicalize(self._e([0.2, 0.6, -0.2]))
        assert rot == 0

    @given(cyclic_systems())
    def test_properties(self, system):
        e = to_expectations(system)
        out, flips, rot = canonicalize(e)
        eb = out.e_b
        assert _canonical_ok(eb)
        assert out.allclose(variant(rotate(e, rot), flips))
        assert eb[:-1].sum() - eb[-1] == pytest.approx(s1_bruteforce(e.e_b), abs=1e-12)
        assert delta(out) == pytest.approx(delta(e), abs=1e-12)
        again = canonicalize(out)
        assert again.expectations.allclose(out) and again.rotation == 0


class TestSignVector:
    def test_parity(self):
        assert SignVector((1, 1, -1)).is_odd
        assert not SignVector((-1, -1, 1, 1)).is_odd

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            SignVector((1, 0))


class TestIngest:
    def test_uniform(self):
        s = ingest_trials(TrialCounts([[25, 25, 25, 25]] * 2))
        np.testing.assert_allclose(s.marginals, 0.5)
        np.testing.assert_allclose(s.bunch_products, 0.25)

    def test_all_ones(self):
        s = ingest_trials(TrialCounts([[0, 0, 0, 100]] * 2))
        np.testing.assert_allclose(s.marginals, 1.0)
        np.testing.assert_allclose(s.bunch_products, 1.0)
        assert validate(s).has_deterministic_variable

    def test_frequencies(self):
        s = ingest_trials(TrialCounts([[10, 40, 20, 30], [25, 25, 25, 25]]))
        assert tuple(s.marginals[0]) == pytest.approx((0.5, 0.7))
        assert s.bunch_products[0] == pytest.approx(0.3)

    def test_empty_context(self):
        with pytest.raises(EmptyContext):
            ingest_trials(TrialCounts([[1, 2, 3, 4], [0, 0, 0, 0]]))

    def test_negative_counts(self):
        with pytest.raises(ValueError):
            TrialCounts([[1, -2, 3, 4]])

    @given(st.lists(st.lists(st.integers(0, 50), min_size=4, max_size=4), min_size=2, max_size=5))
    def test_estimates_are_valid(self, rows):
        rows = [r if sum(r) else [1, 0, 0, 0] for r in rows]
        validate(ingest_trials(TrialCounts(rows)))


@given(cyclic_systems(max_rank=4), st.data())
def test_deterministic_systems_are_noncontextual(system, data):
    m = np.array(system.marginals)
    i = data.draw(st.integers(0, system.rank - 1))
    k = data.draw(st.integers(0, 1))
    value = data.draw(st.sampled_from([0.0, 1.0]))
    m[i, k] = value
    prod = np.array(system.bunch_products)
    # with one variable deterministic the pair product is fixed
    prod[i] = m[i, 1 - k] * value
    det = CyclicSystem(m, prod)
    assert has_deterministic_variable(det)
    assert is_noncontextual_lp(det)
