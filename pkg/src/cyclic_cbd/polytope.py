"""Geometry of the bunch-expectation space.

Four sets live in ``[-1, 1]^n``: the ambient cube, the box ``R_b`` that
circumscribes the noncontextuality polytope, the extended polytope ``N_b``
cut out by ``sum(lam * x) <= Delta`` for every odd sign vector ``lam``, and
the noncontextuality polytope ``E_b = R_b & N_b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import TOL, SignVector, as_expectations
from .errors import BadDelta, DegenerateBox, EvenVertex
from .lp.simplex import LinearProgram, solve
from .measures import Delta, box_intervals, odd_sign_vectors, s1

ZERO_WIDTH = 1e-12


@dataclass(frozen=True, eq=False)
class Box:
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.array(self.lo, dtype=float)
        hi = np.array(self.hi, dtype=float)
        if lo.shape != hi.shape or np.any(lo > hi + ZERO_WIDTH):
            raise ValueError("need lo <= hi with matching shapes")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def cube(cls, n: int) -> "Box":
        return cls(-np.ones(n), np.ones(n))

    @property
    def dim(self) -> int:
        return self.lo.shape[0]

    @property
    def is_degenerate(self) -> bool:
        return bool(np.any(self.hi - self.lo <= ZERO_WIDTH))

    def contains(self, x, tol: float = TOL) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lo - tol) and np.all(x <= self.hi + tol))

    def vertex(self, at_lo) -> "VertexLabel":
        at_lo = tuple(bool(b) for b in at_lo)
        coords = np.where(at_lo, self.lo, self.hi)
        return VertexLabel(tuple(float(c) for c in coords), at_lo)

    def vertices(self, parity: Optional[str] = None):
        for at_lo in itertools.product((False, True), repeat=self.dim):
            v = self.vertex(at_lo)
            if parity is None or (parity == "odd") == v.is_odd:
                yield v

    def odd_vertex(self, lam) -> "VertexLabel":
        """The odd vertex sitting at the min end wherever ``lam`` is -1."""
        return self.vertex(np.asarray(lam) < 0)


@dataclass(frozen=True)
class VertexLabel:
    coordinates: tuple
    at_lo: tuple

    @property
    def n_lo(self) -> int:
        return sum(self.at_lo)

    @property
    def is_odd(self) -> bool:
        return self.n_lo % 2 == 1

    @property
    def parity(self) -> str:
        return "odd" if self.is_odd else "even"

    @property
    def signs(self) -> np.ndarray:
        """+1 on max coordinates, -1 on min coordinates."""
        return np.where(self.at_lo, -1.0, 1.0)

    def as_array(self) -> np.ndarray:
        return np.array(self.coordinates)


@dataclass(frozen=True, eq=False)
class HalfspaceSet:
    """``sum(lam * x) <= bound`` for every odd sign vector ``lam``."""

    n: int
    bound: float
    lambdas: np.ndarray = field(init=False)

    def __post_init__(self):
        if not (self.n - 2 - TOL <= self.bound <= self.n + TOL):
            raise BadDelta(f"Delta={self.bound} outside [n-2, n] for n={self.n}")
        object.__setattr__(self, "lambdas", odd_sign_vectors(self.n))

    def values(self, x) -> np.ndarray:
        return self.lambdas @ np.asarray(x, dtype=float)

    def contains(self, x, tol: float = TOL) -> bool:
        return bool(np.all(self.values(x) <= self.bound + tol))


@dataclass(frozen=True)
class Halfspace:
    normal: tuple
    bound: float
    kind: str  # "box_hi", "box_lo" or "N"
    index: int

    @property
    def a(self) -> np.ndarray:
        return np.array(self.normal, dtype=float)


def box_Rb(e_l) -> Box:
    lo, hi = box_intervals(e_l)
    return Box(lo, np.maximum(hi, lo))


def _is_el_array(obj):
    return isinstance(obj, (np.ndarray, list, tuple)) and np.ndim(obj) == 2


def _el(obj):
    return np.asarray(obj, dtype=float) if _is_el_array(obj) else np.asarray(as_expectations(obj).e_l)


def extended_polytope(e_l) -> HalfspaceSet:
    el = _el(e_l)
    return HalfspaceSet(el.shape[0], Delta(el))


@dataclass(frozen=True)
class Membership:
    in_box: bool
    in_Nb: bool
    in_Eb: bool
    in_Nb_halfspaces: bool


def membership(e_b, e_l, tol: float = TOL) -> Membership:
    """Is ``e_b`` in ``R_b``, ``N_b(Delta)`` and ``E_b``?

    ``in_Nb`` uses the closed-form ``s1(e_b) <= Delta``; ``in_Nb_halfspaces``
    checks the ``2**(n-1)`` inequalities one by one. They must agree.
    """
    el = _el(e_l)
    e_b = np.asarray(e_b, dtype=float)
    D = Delta(el)
    in_box = box_Rb(el).contains(e_b, tol)
    in_nb = s1(e_b) <= D + tol
    in_nb_h = HalfspaceSet(el.shape[0], D).contains(e_b, tol)
    return Membership(in_box, bool(in_nb), bool(in_box and in_nb), in_nb_h)


@dataclass(frozen=True, eq=False)
class PocketCut:
    vertex: np.ndarray
    points: np.ndarray
    cut_distance: float


def pocket_cut_points(vertex, Delta_value: float) -> PocketCut:
    """Points where ``sum(lam * x) = Delta`` cuts the cube edges leaving ``vertex``.

    ``vertex`` is an odd vertex of ``[-1, 1]^n`` (equivalently its sign vector).
    Point ``k`` replaces coordinate ``k`` of the vertex by
    ``lam_k * (1 - n + Delta)``; every cut lies ``n - Delta`` from the vertex.
    """
    lam = vertex.as_array() if isinstance(vertex, (SignVector, VertexLabel)) else np.asarray(vertex, dtype=float)
    n = lam.shape[0]
    if not np.all(np.abs(lam) == 1):
        raise ValueError("vertex must be a vertex of the cube [-1, 1]^n")
    if np.prod(lam) != -1:
        raise EvenVertex(f"{lam.tolist()} is an even vertex")
    if not (n - 2 <= Delta_value <= n):
        raise BadDelta(f"Delta={Delta_value} outside [{n - 2}, {n}]")
    pts = np.tile(lam, (n, 1))
    idx = np.arange(n)
    pts[idx, idx] = lam * (1 - n + Delta_value)
    return PocketCut(lam.copy(), pts, float(n - Delta_value))


@dataclass
class DisjointnessReport:
    n: int
    Delta: float
    points_checked: int = 0
    overlapping_points: int = 0
    hyperplane_pairs_meeting: int = 0
    coinciding_cuts: list = field(default_factory=list)

    @property
    def cuts_only_at_even_vertices(self) -> bool:
        return all(
            np.all(np.abs(p) == 1) and np.prod(p) == 1 for p in self.coinciding_cuts
        )

    @property
    def passed(self) -> bool:
        if self.overlapping_points:
            return False
        if self.Delta > self.n - 2:
            return self.hyperplane_pairs_meeting == 0 and not self.coinciding_cuts
        return self.cuts_only_at_even_vertices


def _hyperplanes_meet_in_cube(lam1, lam2, D) -> bool:
    # x = y - 1, 0 <= y <= 2: lam.y = D + sum(lam), y + s = 2
    n = lam1.shape[0]
    A = np.zeros((2 + n, 2 * n))
    A[0, :n] = lam1
    A[1, :n] = lam2
    A[2:, :n] = np.eye(n)
    A[2:, n:] = np.eye(n)
    b = np.concatenate([[D + lam1.sum(), D + lam2.sum()], 2 * np.ones(n)])
    return solve(LinearProgram(np.zeros(2 * n), A, b)).is_feasible


def pocket_disjointness_check(
    Delta_value: float, n: int, seed: int = 0, samples: int = 100_000, grid_step: float = 0.05
) -> DisjointnessReport:
    """Numerical check that pockets at distinct odd cube vertices never overlap.

    Points come from a grid with ``grid_step`` for ``n <= 3`` and from
    ``samples`` uniform draws otherwise. Pairs of pocket-forming hyperplanes
    are also intersected inside the cube by LP, and the edge cuts of all odd
    vertices are compared for coincidences.
    """
    if not (n - 2 <= Delta_value <= n):
        raise BadDelta(f"Delta={Delta_value} outside [{n - 2}, {n}]")
    rep = DisjointnessReport(n, float(Delta_value))
    lams = odd_sign_vectors(n)
    if n <= 3:
        axis = np.linspace(-1.0, 1.0, int(round(2 / grid_step)) + 1)
        pts = np.array(list(itertools.product(axis, repeat=n)))
    else:
        pts = np.random.default_rng(seed).uniform(-1.0, 1.0, size=(samples, n))
    inside = (pts @ lams.T) > Delta_value
    rep.points_checked = pts.shape[0]
    rep.overlapping_points = int(np.count_nonzero(inside.sum(axis=1) >= 2))
    for a, b in itertools.combinations(range(lams.shape[0]), 2):
        if _hyperplanes_meet_in_cube(lams[a], lams[b], Delta_value):
            rep.hyperplane_pairs_meeting += 1
    cuts = [pocket_cut_points(l, Delta_value).points for l in lams]
    for a, b in itertools.combinations(range(len(cuts)), 2):
        for p in cuts[a]:
            if np.any(np.all(np.abs(cuts[b] - p) <= 1e-12, axis=1)):
                rep.coinciding_cuts.append(p.copy())
    return rep


@dataclass(frozen=True, eq=False)
class Pocket:
    lam: np.ndarray
    vertex: VertexLabel
    vertex_value: float


def pockets(e_l, tol: float = TOL) -> list:
    """Pockets of ``R_b``: odd box vertices beyond their hyperplane.

    At the odd vertex whose min coordinates are where ``lam = -1`` the pocket
    inequality is ``sum(lam * x) > Delta``, which makes every coordinate of the
    vertex extremal in the direction that increases the left side.
    """
    el = _el(e_l)
    box = box_Rb(el)
    if box.is_degenerate:
        raise DegenerateBox("box R_b has a zero-width side")
    D = Delta(el)
    out = []
    for lam in odd_sign_vectors(el.shape[0]):
        v = box.odd_vertex(lam)
        val = float(lam @ v.as_array())
        if val > D + tol:
            out.append(Pocket(lam.copy(), v, val))
    return out


def pocket_count(e_l, e_b_ignored=None, tol: float = TOL) -> int:
    return len(pockets(e_l, tol))


def facets_Eb(e_l) -> list:
    """Halfspaces ``a @ x <= b`` describing ``E_b``: 2n box sides then N_b."""
    el = _el(e_l)
    box = box_Rb(el)
    if box.is_degenerate:
        raise DegenerateBox("box R_b has a zero-width side")
    n = el.shape[0]
    D = Delta(el)
    eye = np.eye(n)
    out = [Halfspace(tuple(eye[i]), float(box.hi[i]), "box_hi", i) for i in range(n)]
    out += [Halfspace(tuple(-eye[i]), float(-box.lo[i]), "box_lo", i) for i in range(n)]
    out += [Halfspace(tuple(l), D, "N", k) for k, l in enumerate(odd_sign_vectors(n))]
    return out


def in_facets(x, facets, tol: float = TOL) -> bool:
    x = np.asarray(x, dtype=float)
    return all(f.a @ x <= f.bound + tol for f in facets)


def nearest_point_l2(z, facets, active: Optional[int] = None, tol: float = 1e-11):
    """Euclidean projection of ``z`` onto the polytope ``{a @ x <= b}``.

    Brute force over active sets: the projection lies on the affine hull of the
    constraints active there, so every subset of at most ``dim`` constraints
    is tried and the nearest feasible candidate wins. With ``active`` the
    search is restricted to the face where that constraint holds with
    equality. Meant for small ranks only.

    Returns ``(distance, point)``; ``(inf, None)`` when nothing is feasible.
    """
    z = np.asarray(z, dtype=float)
    n = z.shape[0]
    A_all = np.array([f.a for f in facets])
    b_all = np.array([f.bound for f in facets])
    others = [k for k in range(len(facets)) if k != active]
    best = (np.inf, None)
    for size in range(0, n + 1):
        need = 1 if active is not None else 0
        if size < need:
            continue
        for combo in itertools.combinations(others, size - need):
            S = list(combo) + ([active] if active is not None else [])
            if S:
                A = A_all[S]
                r = A @ z - b_all[S]
                x = z - A.T @ (np.linalg.pinv(A @ A.T) @ r)
                if np.max(np.abs(A @ x - b_all[S])) > 1e-9:
                    continue
            else:
                x = z
            if np.all(A_all @ x <= b_all + tol):
                d = float(np.linalg.norm(x - z))
                if d < best[0]:
                    best = (d, x)
    return best


def single_coordinate_moves(e_b, e_l):
    """Move each coordinate of a contextual ``e_b`` by ``s1 - Delta`` inward.

    Yields ``(i, moved_point)``; the move is along ``-lam_i`` for the odd sign
    vector attaining ``s1``.
    """
    from .measures import s1_argmax

    el = _el(e_l)
    e_b = np.asarray(e_b, dtype=float)
    gap = s1(e_b) - Delta(el)
    lam = s1_argmax(e_b)
    for i in range(e_b.shape[0]):
        x = e_b.copy()
        x[i] -= lam[i] * gap
        yield i, x
