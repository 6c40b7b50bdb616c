import itertools

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cyclic_cbd.core import SignVector, to_expectations
from cyclic_cbd.errors import BadDelta, DegenerateBox, EvenVertex
from cyclic_cbd.measures import Delta, odd_sign_vectors, s1
from cyclic_cbd.polytope import (
    Box,
    HalfspaceSet,
    box_Rb,
    extended_polytope,
    facets_Eb,
    in_facets,
    membership,
    nearest_point_l2,
    pocket_count,
    pocket_cut_points,
    pocket_disjointness_check,
    pockets,
    single_coordinate_moves,
)

from strategies import contextual_expectations, cyclic_systems

el_entry = st.floats(-0.95, 0.95, allow_nan=False)


@st.composite
def marginal_vectors(draw, min_rank=2, max_rank=6):
    n = draw(st.integers(min_rank, max_rank))
    return np.array([[draw(el_entry), draw(el_entry)] for _ in range(n)])


class TestBox:
    def test_center_is_cube(self):
        box = box_Rb(np.zeros((3, 2)))
        np.testing.assert_array_equal(box.lo, -1)
        np.testing.assert_array_equal(box.hi, 1)

    def test_caption_marginals(self):
        box = box_Rb(np.array([[-0.2, 0.1]]))
        assert box.lo[0] == pytest.approx(-0.9)
        assert box.hi[0] == pytest.approx(0.7)

    def test_deterministic_is_flat(self):
        box = box_Rb(np.array([[1.0, 0.3], [0.2, 0.2]]))
        assert box.lo[0] == pytest.approx(0.3) == box.hi[0]
        assert box.is_degenerate

    def test_vertex_parity(self):
        cube = Box.cube(3)
        odd = list(cube.vertices("odd"))
        even = list(cube.vertices("even"))
        assert len(odd) == len(even) == 4
        # odd vertices of the cube have product -1 in coordinates
        assert all(np.prod(v.as_array()) == -1 for v in odd)
        assert all(v.parity == "even" for v in even)


class TestMembership:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_origin(self, n):
        assert membership(np.zeros(n), np.zeros((n, 2))).in_Eb

    def test_pr_box_point(self):
        m = membership([1, 1, 1, -1], np.zeros((4, 2)))
        assert m.in_box and not m.in_Nb and not m.in_Nb_halfspaces and not m.in_Eb

    @given(st.integers(2, 8).flatmap(
        lambda n: st.tuples(
            st.lists(st.floats(-1, 1, allow_nan=False), min_size=n, max_size=n),
            st.floats(0, 2, allow_nan=False),
        )
    ))
    def test_halfspaces_match_closed_form(self, args):
        x, frac = args
        x = np.array(x)
        n = x.shape[0]
        D = n - 2 + frac
        by_rule = s1(x) <= D
        by_enumeration = all(l @ x <= D for l in odd_sign_vectors(n))
        assert by_rule == by_enumeration

    @given(marginal_vectors())
    def test_even_vertices_in_Eb(self, e_l):
        for v in box_Rb(e_l).vertices("even"):
            assert membership(v.as_array(), e_l).in_Eb

    @given(marginal_vectors(), st.data())
    def test_facets_agree_with_membership(self, e_l, data):
        n = e_l.shape[0]
        x = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=n, max_size=n)))
        assert in_facets(x, facets_Eb(e_l)) == membership(x, e_l).in_Eb


class TestPocketCuts:
    def test_delta_n(self):
        cut = pocket_cut_points([1, 1, -1], 3)
        assert cut.cut_distance == 0
        np.testing.assert_array_equal(cut.points, np.tile([1, 1, -1], (3, 1)))

    def test_rank3(self):
        cut = pocket_cut_points(SignVector((1, 1, -1)), 2.5)
        assert cut.cut_distance == 0.5
        np.testing.assert_allclose(cut.points[0], [0.5, 1, -1])
        np.testing.assert_allclose(cut.points[2], [1, 1, -0.5])
        np.testing.assert_allclose(cut.points @ [1, 1, -1], 2.5)

    def test_demicube_regime(self):
        lam = np.array([1, -1, 1, 1])
        cut = pocket_cut_points(lam, 2)
        assert cut.cut_distance == 2
        # each cut is the far end of its edge, an even vertex
        for k, p in enumerate(cut.points):
            assert p[k] == -lam[k] and np.prod(p) == 1

    def test_even_vertex(self):
        with pytest.raises(EvenVertex):
            pocket_cut_points([1, 1], 1)

    def test_bad_delta(self):
        with pytest.raises(BadDelta):
            pocket_cut_points([1, -1], 2.5)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_all_odd_vertices(self, n):
        for D in np.arange(n - 2, n + 0.25, 0.5):
            for lam in odd_sign_vectors(n):
                cut = pocket_cut_points(lam, D)
                assert np.all(np.abs(cut.points - lam).sum(axis=1) == n - D)
                assert np.all(cut.points @ lam == D)


class TestDisjointness:
    def test_rank2_grid(self):
        rep = pocket_disjointness_check(1.0, 2)
        assert rep.passed and rep.overlapping_points == 0
        assert rep.points_checked == 41 ** 2

    def test_rank3_touching(self):
        rep = pocket_disjointness_check(1.0, 3)
        assert rep.passed
        assert rep.coinciding_cuts and rep.cuts_only_at_even_vertices

    def test_rank4_empty(self):
        rep = pocket_disjointness_check(4.0, 4, samples=2000)
        assert rep.passed and rep.overlapping_points == 0

    def test_grid_oracle(self):
        # independent count over a grid of [-1, 1]^3 with Delta = 1.5
        axis = np.linspace(-1, 1, 21)
        lams = [l for l in itertools.product((1, -1), repeat=3) if np.prod(l) == -1]
        for x in itertools.product(axis, repeat=3):
            assert sum(np.dot(l, x) > 1.5 for l in lams) <= 1


class TestPockets:
    def test_center_rank4(self):
        assert pocket_count(np.zeros((4, 2))) == 8

    def test_delta_n(self):
        # delta >= 2 clamps Delta to n
        e_l = np.array([[0.5, 0.5], [-0.5, -0.5], [0.5, 0.5]])
        assert Delta(e_l) == 3
        assert pocket_count(e_l) == 0

    def test_rank2_two_pockets(self):
        e_l = np.array([[0.9, 0.9], [0.9, 0.9]])
        ps = pockets(e_l)
        assert len(ps) == 2
        # vertex values hi_0 - lo_1 = hi_1 - lo_0 = 1 - 0.8
        assert [p.vertex_value for p in ps] == pytest.approx([0.2, 0.2])

    def test_rank2_one_pocket(self):
        e_l = np.array([[0.9, 0.9], [-0.9, 0.9]])
        # Delta = delta = 1.8; box [0.8, 1] x [-1, -0.8]
        assert Delta(e_l) == pytest.approx(1.8)
        ps = pockets(e_l)
        assert len(ps) == 1
        assert ps[0].lam.tolist() == [1, -1]
        assert ps[0].vertex_value == pytest.approx(1 + 1)

    def test_degenerate(self):
        with pytest.raises(DegenerateBox):
            pockets(np.array([[1.0, 0.2], [0.2, 0.2]]))

    @given(cyclic_systems())
    def test_contextual_iff_in_one_pocket(self, system):
        e = to_expectations(system)
        assume(not box_Rb(e.e_l).is_degenerate)
        D = Delta(e.e_l)
        inside = [p for p in pockets(e.e_l) if p.lam @ e.e_b > D + 1e-9]
        assert len(inside) <= 1
        assert (len(inside) == 1) == (s1(e.e_b) > D + 1e-9)


class TestFacets:
    @pytest.mark.parametrize("n,count", [(2, 6), (3, 10), (4, 16)])
    def test_count(self, n, count):
        assert len(facets_Eb(np.zeros((n, 2)))) == count

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_demicube(self, n):
        e_l = np.zeros((n, 2))
        fs = facets_Eb(e_l)
        hs = extended_polytope(e_l)
        assert hs.bound == n - 2
        for v in Box.cube(n).vertices("even"):
            x = v.as_array()
            assert in_facets(x, fs)
            assert hs.values(x).max() == n - 2

    def test_bad_bound(self):
        with pytest.raises(BadDelta):
            HalfspaceSet(3, 0.5)


class TestSingleCoordinateMoves:
    @given(contextual_expectations())
    def test_lands_on_boundary(self, e):
        D = Delta(e.e_l)
        assume(s1(e.e_b) > D + 1e-9)
        assert not membership(e.e_b, e.e_l).in_Nb
        for _, x in single_coordinate_moves(e.e_b, e.e_l):
            assert s1(x) == pytest.approx(D, abs=1e-12)
            assert membership(x, e.e_l).in_Nb


class TestNearestPoint:
    def test_inside_is_itself(self):
        d, x = nearest_point_l2([0.1, 0.2, 0.0], facets_Eb(np.zeros((3, 2))))
        assert d == 0

    def test_box_clip(self):
        # for n = 2 with consistent zero marginals E_b is the segment
        # from (-1, -1) to (1, 1)
        d, x = nearest_point_l2([1.0, -1.0], facets_Eb(np.zeros((2, 2))))
        np.testing.assert_allclose(x, [0, 0], atol=1e-12)
        assert d == pytest.approx(np.sqrt(2))
