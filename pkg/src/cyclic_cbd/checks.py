"""Randomized property suites for the polytope geometry and the measures.

Each suite draws its own inputs from a seeded generator, tests one property
many times and reports pass/fail counts. Suites:

=====================  =====================================================
``variants``           s1 and Delta are invariant under content flips
``pocket_cuts``        the hyperplane at an odd cube vertex cuts each edge
                       at distance ``n - Delta``
``pocket_disjointness`` pockets at different odd vertices never overlap
``point_outside``      inside a pocket, s1 is attained by that vertex's
                       sign vector and exceeds Delta
``point_within``       inside ``N_b(Delta)``, s1 does not exceed Delta
``even_vertices``      every even vertex of ``R_b`` lies in ``E_b``
``demicube``           with ``e_l = 0`` every even cube vertex is on the
                       boundary of ``N_b(n - 2)``
``pocket_count``       a point is contextual iff it is in exactly one pocket
``cnt2_distance``      CNT2 is the L1 distance to ``E_b`` and is reached by a
                       move along any single coordinate
``ncnt2_distance``     NCNT2 is the L1 distance to the surface of ``E_b``
``cnt0_distance``      CNT0 is the L1 distance to the all-couplings polytope
``concatenation``      ``s1(e_b, e_c) = s1(e_b) + n - delta`` when contextual
=====================  =====================================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .core import to_expectations, variant
from .lp.oracle import cnt0_lp, cnt2_lp, ncnt2_lp, polytope_distance_lp
from .measures import (
    Delta,
    bell_criterion,
    concat_s1,
    delta,
    measure,
    odd_sign_vectors,
    s1,
    s1_bruteforce,
)
from .polytope import (
    Box,
    box_Rb,
    membership,
    pocket_cut_points,
    pocket_disjointness_check,
    pockets,
    single_coordinate_moves,
)
from .sampling import random_system

LP_TOL = 1e-7
EXACT_TOL = 1e-9


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, detail=None):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(detail)

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "failures": [str(f) for f in self.failures],
        }


def _random_el(rng, n):
    return rng.uniform(-0.98, 0.98, size=(n, 2))


def _delta_grid(n):
    return np.arange(n - 2, n + 0.25, 0.5)


# -- individual properties ---------------------------------------------------


def _variants(res, rng, n, draws):
    for _ in range(draws):
        e = to_expectations(random_system(rng, n))
        flips = rng.integers(0, 2, size=n).astype(bool)
        v = variant(e, flips)
        ok = abs(s1(v.e_b) - s1(e.e_b)) <= EXACT_TOL and abs(Delta(v.e_l) - Delta(e.e_l)) <= EXACT_TOL
        res.record(ok, (n, flips.tolist()))


def _pocket_cuts(res, rng, n, draws):
    for D in _delta_grid(n):
        for lam in odd_sign_vectors(n):
            cut = pocket_cut_points(lam, D)
            dist = np.abs(cut.points - lam).sum(axis=1)
            ok = cut.cut_distance == n - D and np.all(dist == n - D) and np.all(cut.points @ lam == D)
            res.record(bool(ok), (n, float(D), lam.tolist()))


def _pocket_disjointness(res, rng, n, draws, samples=100_000):
    for D in _delta_grid(n):
        rep = pocket_disjointness_check(D, n, seed=int(rng.integers(2**31)), samples=samples)
        res.record(rep.passed, (n, float(D), rep.overlapping_points, rep.hyperplane_pairs_meeting))


def _pocket_point(rng, lam, D):
    """Uniform-ish point strictly inside the pocket at cube vertex ``lam``."""
    n = lam.shape[0]
    depth = (n - D) * rng.uniform(0.0, 1.0)
    u = rng.dirichlet(np.ones(n)) * depth
    return lam - lam * u


def _point_outside(res, rng, n, draws):
    lams = odd_sign_vectors(n)
    for _ in range(draws):
        D = rng.uniform(n - 2, n)
        k = int(rng.integers(lams.shape[0]))
        lam = lams[k]
        x = _pocket_point(rng, lam, D)
        if lam @ x <= D:
            continue
        others = np.delete(lams, k, axis=0) @ x
        ok = (
            abs(s1_bruteforce(x) - lam @ x) <= EXACT_TOL
            and s1(x) > D
            and (others.size == 0 or np.all(others < n - 2))
        )
        res.record(bool(ok), (n, float(D), x.tolist()))


def _point_within(res, rng, n, draws):
    lams = odd_sign_vectors(n)
    done = 0
    while done < draws:
        D = rng.uniform(n - 2, n)
        x = rng.uniform(-1, 1, size=n)
        if np.any(lams @ x > D):
            continue
        done += 1
        ok = s1(x) <= D + EXACT_TOL and abs(s1(x) - s1_bruteforce(x)) <= EXACT_TOL
        res.record(bool(ok), (n, float(D), x.tolist()))


def _even_vertices(res, rng, n, draws):
    for _ in range(draws):
        e_l = _random_el(rng, n)
        box = box_Rb(e_l)
        for v in box.vertices("even"):
            mem = membership(v.as_array(), e_l)
            res.record(mem.in_Eb and mem.in_Nb_halfspaces, (n, e_l.tolist(), v.at_lo))


def _demicube(res, rng, n, draws):
    e_l = np.zeros((n, 2))
    cube = Box.cube(n)
    for v in cube.vertices("even"):
        x = v.as_array()
        vals = odd_sign_vectors(n) @ x
        ok = membership(x, e_l).in_Eb and np.max(vals) == n - 2 == Delta(e_l)
        res.record(bool(ok), (n, x.tolist()))


def _pocket_count(res, rng, n, draws):
    for _ in range(draws):
        e = to_expectations(random_system(rng, n))
        D = Delta(e.e_l)
        ps = pockets(e.e_l)
        inside = [p for p in ps if p.lam @ e.e_b > D + EXACT_TOL]
        contextual = bell_criterion(e).contextual
        ok = 0 <= len(ps) <= 2 ** (n - 1) and (len(inside) == 1) == contextual and len(inside) <= 1
        res.record(bool(ok), (n, len(ps), len(inside), contextual))


def _contextual_draws(rng, n, draws, max_tries=200):
    """Up to ``draws`` contextual systems, drawn with odd-vertex placement."""
    out = []
    for _ in range(draws * max_tries):
        if len(out) == draws:
            break
        sys_ = random_system(rng, n, placement="odd")
        if bell_criterion(sys_).contextual:
            out.append(sys_)
    return out


def _cnt2_distance(res, rng, n, draws, lp=True):
    for sys_ in _contextual_draws(rng, n, draws):
        e = to_expectations(sys_)
        r = measure(e)
        D = r.Delta
        moves_ok = all(abs(s1(x) - D) <= EXACT_TOL for _, x in single_coordinate_moves(e.e_b, e.e_l))
        ok = moves_ok
        if lp:
            ok = ok and abs(4 * cnt2_lp(sys_) - r.cnt_e_units) <= LP_TOL
            ok = ok and abs(polytope_distance_lp(e) - r.cnt_e_units) <= LP_TOL
        res.record(bool(ok), (n, sys_.label or e.e_b.tolist()))


def _ncnt2_distance(res, rng, n, draws, lp=True):
    done = 0
    while done < draws:
        sys_ = random_system(rng, n)
        r = measure(sys_)
        if r.contextual or r.degenerate:
            continue
        done += 1
        ok = r.ncnt_e_units == min(-r.margin, r.m_value)
        if lp:
            ok = ok and abs(ncnt2_lp(sys_) - r.ncnt_e_units) <= LP_TOL
        res.record(bool(ok), (n, r.ncnt_branch))


def _cnt0_distance(res, rng, n, draws, lp=True):
    for sys_ in _contextual_draws(rng, n, draws):
        r = measure(sys_)
        ok = abs(r.cnt0_e_units - r.cnt_e_units) <= EXACT_TOL
        if lp:
            ok = ok and abs(4 * cnt0_lp(sys_) - r.cnt0_e_units) <= LP_TOL
        res.record(bool(ok), (n,))


def _concatenation(res, rng, n, draws):
    for sys_ in _contextual_draws(rng, n, draws):
        e = to_expectations(sys_).with_maximal_couplings()
        lhs = s1_bruteforce(np.concatenate([e.e_b, e.e_c]))
        rhs = s1(e.e_b) + n - delta(e.e_l)
        res.record(abs(lhs - rhs) <= EXACT_TOL and abs(concat_s1(e) - lhs) <= EXACT_TOL, (n, lhs, rhs))


# -- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable
    ranks: tuple
    uses_lp: bool = False


SUITES = (
    Suite("variants", _variants, (2, 3, 4, 5, 6)),
    Suite("pocket_cuts", _pocket_cuts, (2, 3, 4, 5, 6)),
    Suite("pocket_disjointness", _pocket_disjointness, (2, 3, 4, 5, 6)),
    Suite("point_outside", _point_outside, (2, 3, 4, 5, 6)),
    Suite("point_within", _point_within, (2, 3, 4, 5, 6)),
    Suite("even_vertices", _even_vertices, (2, 3, 4, 5, 6)),
    Suite("demicube", _demicube, (2, 3, 4, 5, 6)),
    Suite("pocket_count", _pocket_count, (2, 3, 4, 5, 6)),
    Suite("cnt2_distance", _cnt2_distance, (2, 3, 4), uses_lp=True),
    Suite("ncnt2_distance", _ncnt2_distance, (2, 3, 4), uses_lp=True),
    Suite("cnt0_distance", _cnt0_distance, (2, 3, 4), uses_lp=True),
    Suite("concatenation", _concatenation, (2, 3, 4, 5, 6)),
)
SUITE_NAMES = tuple(s.name for s in SUITES)


def run_suites(
    seed: int = 0,
    draws: int = 50,
    samples: int = 100_000,
    names: Iterable[str] | None = None,
    corrupt: Iterable[str] = (),
    lp_draws: int | None = None,
) -> list:
    """Run the named suites (all by default) and return their results.

    ``draws`` is the number of random draws per rank for randomized suites;
    ``lp_draws`` (default ``min(draws, 10)``) caps it for LP-backed ones.
    With ``draws == 0`` nothing runs. ``corrupt`` names suites whose verdicts
    are inverted; it exists to test failure reporting.
    """
    if draws <= 0:
        return []
    wanted = SUITE_NAMES if names is None else tuple(names)
    unknown = set(wanted) - set(SUITE_NAMES) | set(corrupt) - set(SUITE_NAMES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    lp_draws = min(draws, 10) if lp_draws is None else lp_draws
    corrupt = set(corrupt)
    out = []
    for k, suite in enumerate(SUITES):
        if suite.name not in wanted:
            continue
        res = SuiteResult(suite.name)
        if suite.name in corrupt:
            inner = res.record
            res.record = lambda ok, detail=None, _inner=inner: _inner(not ok, detail)
        for n in suite.ranks:
            rng = np.random.default_rng([seed, k, n])
            d = lp_draws if suite.uses_lp else draws
            if suite.name == "pocket_disjointness":
                suite.run(res, rng, n, d, samples=samples)
            else:
                suite.run(res, rng, n, d)
        out.append(res)
    return out


def all_passed(results) -> bool:
    return all(r.ok for r in results)
