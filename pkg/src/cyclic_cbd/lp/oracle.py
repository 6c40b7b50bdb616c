"""Linear-programming oracles for cyclic systems.

Every function here works from the coupling definitions (``M h = p`` with
``h >= 0``) or, for the surface distance, from the explicit facet list of
``E_b``. None of them calls the closed-form measures, so they can be used to
check those.

Values are in probability units unless noted; multiply by 4 for expectation
units.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..core import TOL, CyclicSystem, as_expectations, maximal_connection_couplings, validate
from ..errors import DegenerateBox, IsContextual, NotContextual, SolverError
from ..measures import Delta, box_intervals, odd_sign_vectors, s1_bruteforce
from .incidence import IncidenceMatrix, build_incidence_cyclic
from .simplex import FEAS_TOL, OPTIMAL, LinearProgram, LpSolution, solve


@lru_cache(maxsize=16)
def _incidence(n: int) -> IncidenceMatrix:
    return build_incidence_cyclic(n)


def target_vector(system: CyclicSystem, mode: str = "float") -> np.ndarray:
    """``(1, p_l, p_b, p_c*)`` in the row order of the cyclic incidence matrix.

    In exact mode the entries are fractions read from the shortest decimal
    form of each float, and bunch products are clamped onto their Fréchet
    interval. Validation accepts products within tolerance of a bound, and
    without the clamp binary rounding alone could make such a system
    exactly infeasible.
    """
    if mode != "exact":
        p_c, _ = maximal_connection_couplings(system)
        return np.concatenate([[1.0], system.marginals.ravel(), system.bunch_products, p_c])
    validate(system)
    pl = [[Fraction(repr(float(x))) for x in row] for row in system.marginals]
    pb = []
    for (a, b), x in zip(pl, system.bunch_products):
        lo, hi = max(Fraction(0), a + b - 1), min(a, b)
        pb.append(min(max(Fraction(repr(float(x))), lo), hi))
    n = system.rank
    p_c = [min(pl[j][0], pl[j - 1][1]) for j in range(n)]
    out = np.empty(1 + 4 * n, dtype=object)
    out[:] = [Fraction(1), *(v for row in pl for v in row), *pb, *p_c]
    return out


def _rows(M: IncidenceMatrix, *names):
    return np.vstack([M.block(k) for k in names])


def l1_program(fixed_A, fixed_b, free_A, free_b) -> LinearProgram:
    """min ||free_A h - free_b||_1 subject to fixed_A h = fixed_b, h >= 0.

    The residual is split as ``free_b - free_A h = u - v`` with ``u, v >= 0``.
    Variables are ordered ``(h, u, v)``.
    """
    n_h = fixed_A.shape[1]
    k = free_A.shape[0]
    A = np.zeros((fixed_A.shape[0] + k, n_h + 2 * k))
    A[: fixed_A.shape[0], :n_h] = fixed_A
    A[fixed_A.shape[0] :, :n_h] = free_A
    A[fixed_A.shape[0] :, n_h : n_h + k] = np.eye(k)
    A[fixed_A.shape[0] :, n_h + k :] = -np.eye(k)
    b = np.concatenate([fixed_b, free_b])
    c = np.concatenate([np.zeros(n_h), np.ones(2 * k)])
    return LinearProgram(c, A, b)


def _expect_optimal(sol: LpSolution, what: str) -> LpSolution:
    if sol.status != OPTIMAL:
        raise SolverError(f"{what}: solver returned {sol.status}")
    return sol


def feasibility_lp(system: CyclicSystem, mode: str = "float") -> LpSolution:
    """Phase-1 solve of ``M h = (1, p_l, p_b, p_c*)``, ``h >= 0``."""
    validate(system)
    M = _incidence(system.rank)
    return solve(LinearProgram(np.zeros(M.shape[1]), M.matrix, target_vector(system, mode)), mode=mode)


def is_noncontextual_lp(system: CyclicSystem, mode: str = "float") -> bool:
    """Does an overall coupling with maximal connection couplings exist?"""
    return feasibility_lp(system, mode).is_feasible


def cnt1_lp(system: CyclicSystem, mode: str = "float", tol: float = TOL) -> float:
    """``sum(p_c*) - max sum(p_c)`` over couplings reproducing ``p_l``, ``p_b``."""
    validate(system)
    M = _incidence(system.rank)
    t = target_vector(system, mode)
    A = _rows(M, "norm", "l", "b")
    b = np.concatenate([t[M.blocks["norm"]], t[M.blocks["l"]], t[M.blocks["b"]]])
    c = M.block("c").sum(axis=0)
    sol = _expect_optimal(solve(LinearProgram(c, A, b, sense="max"), mode=mode), "cnt1")
    value = float(t[M.blocks["c"]].sum() - sol.objective)
    if value <= tol:
        raise NotContextual("p_c* is feasible; CNT1 is zero")
    return value


def cnt2_lp(system: CyclicSystem, mode: str = "float", tol: float = TOL) -> float:
    """L1 distance from ``p_b*`` to the noncontextuality polytope ``P_b``."""
    validate(system)
    M = _incidence(system.rank)
    t = target_vector(system, mode)
    fixed = _rows(M, "norm", "l", "c")
    fixed_b = np.concatenate([t[M.blocks[k]] for k in ("norm", "l", "c")])
    sol = solve(l1_program(fixed, fixed_b, M.block("b"), t[M.blocks["b"]]), mode=mode)
    value = float(_expect_optimal(sol, "cnt2").objective)
    if value <= tol:
        raise NotContextual("p_b* lies in P_b; CNT2 is zero")
    return value


def cnt0_lp(system: CyclicSystem, mode: str = "float", tol: float = TOL) -> float:
    """L1 distance from ``(p_b*, p_c*)`` to the polytope of all couplings."""
    validate(system)
    M = _incidence(system.rank)
    t = target_vector(system, mode)
    fixed = _rows(M, "norm", "l")
    fixed_b = np.concatenate([t[M.blocks["norm"]], t[M.blocks["l"]]])
    free = _rows(M, "b", "c")
    free_b = np.concatenate([t[M.blocks["b"]], t[M.blocks["c"]]])
    sol = solve(l1_program(fixed, fixed_b, free, free_b), mode=mode)
    value = float(_expect_optimal(sol, "cnt0").objective)
    if value <= tol:
        raise NotContextual("(p_b*, p_c*) lies in P; CNT0 is zero")
    return value


def all_couplings_distance_lp(system: CyclicSystem, mode: str = "float") -> float:
    """Like :func:`cnt0_lp` but returns 0 instead of refusing."""
    validate(system)
    M = _incidence(system.rank)
    t = target_vector(system, mode)
    fixed = _rows(M, "norm", "l")
    fixed_b = np.concatenate([t[M.blocks["norm"]], t[M.blocks["l"]]])
    free = _rows(M, "b", "c")
    free_b = np.concatenate([t[M.blocks["b"]], t[M.blocks["c"]]])
    sol = solve(l1_program(fixed, fixed_b, free, free_b), mode=mode)
    return float(_expect_optimal(sol, "distance to P").objective)


def feasibility_distance_lp(system: CyclicSystem, mode: str = "float") -> float:
    """``sum(p_c*) - max sum(p_c)`` without refusing noncontextual systems."""
    validate(system)
    M = _incidence(system.rank)
    t = target_vector(system, mode)
    A = _rows(M, "norm", "l", "b")
    b = np.concatenate([t[M.blocks["norm"]], t[M.blocks["l"]], t[M.blocks["b"]]])
    sol = solve(LinearProgram(M.block("c").sum(axis=0), A, b, sense="max"), mode=mode)
    return float(t[M.blocks["c"]].sum() - _expect_optimal(sol, "distance to P_c").objective)


# ---------------------------------------------------------------------------
# distances in e_b space from the facet description of E_b


def _eb_halfspaces(e_l):
    """Rows ``(a, b)`` for ``a @ x <= b``: box upper, box lower, then N_b.

    Built directly from the two-variable expectation bounds and the odd sign
    vectors, independent of the polytope module.
    """
    el = np.asarray(e_l, dtype=float)
    n = el.shape[0]
    lo, hi = box_intervals(el)
    D = Delta(el)
    eye = np.eye(n)
    lams = odd_sign_vectors(n)
    A = np.vstack([eye, -eye, lams])
    b = np.concatenate([hi, -lo, np.full(lams.shape[0], D)])
    return A, b


def _distance_program(z, A_h, b_h, equal_rows, norm):
    """min ||x - z|| (norm 1 or inf) over {A_h x <= b_h, rows in equal_rows tight}.

    ``x`` is free; it is written as ``x = xp - xm``. Variables:
    ``(xp, xm, s, u, v[, w, t])`` with slack ``s`` on inequality rows only and
    ``x - z = u - v``.
    """
    n = z.shape[0]
    m = A_h.shape[0]
    eq = np.zeros(m, dtype=bool)
    eq[list(equal_rows)] = True
    ineq_idx = np.nonzero(~eq)[0]
    k = ineq_idx.size
    n_vars = 2 * n + k + 2 * n
    if norm == "inf":
        n_vars += n + 1
    rows = []
    rhs = []
    for r in range(m):
        row = np.zeros(n_vars)
        row[:n] = A_h[r]
        row[n : 2 * n] = -A_h[r]
        if not eq[r]:
            row[2 * n + int(np.searchsorted(ineq_idx, r))] = 1.0
        rows.append(row)
        rhs.append(b_h[r])
    off = 2 * n + k
    for i in range(n):
        row = np.zeros(n_vars)
        row[i] = 1.0
        row[n + i] = -1.0
        row[off + i] = -1.0
        row[off + n + i] = 1.0
        rows.append(row)
        rhs.append(z[i])
    c = np.zeros(n_vars)
    if norm == 1:
        c[off : off + 2 * n] = 1.0
    elif norm == "inf":
        w0 = off + 2 * n
        t = n_vars - 1
        for i in range(n):
            row = np.zeros(n_vars)
            row[off + i] = 1.0
            row[off + n + i] = 1.0
            row[w0 + i] = 1.0
            row[t] = -1.0
            rows.append(row)
            rhs.append(0.0)
        c[t] = 1.0
    else:
        raise ValueError("norm must be 1 or 'inf'")
    return LinearProgram(c, np.array(rows), np.array(rhs))


def surface_distance_by_facet(e, norm=1, mode: str = "float"):
    """Distance from ``e_b`` to each facet of ``E_b`` (expectation units).

    For every halfspace of the facet list, minimize the distance to a point of
    ``E_b`` on which that halfspace is tight. Returns one value per facet,
    ``inf`` where the face is empty.
    """
    e = as_expectations(e)
    A, b = _eb_halfspaces(e.e_l)
    z = np.asarray(e.e_b, dtype=float)
    out = []
    for f in range(A.shape[0]):
        sol = solve(_distance_program(z, A, b, [f], norm), mode=mode)
        out.append(float(sol.objective) if sol.status == OPTIMAL else np.inf)
    return np.array(out)


def ncnt2_lp(system, mode: str = "float", norm=1, tol: float = TOL) -> float:
    """Distance from a noncontextual ``e_b*`` to the surface of ``E_b``.

    Returned in expectation units; divide by 4 for probability units.
    """
    e = as_expectations(system)
    if np.any(np.abs(e.e_l) >= 1 - 2 * tol):
        raise DegenerateBox("a deterministic variable flattens E_b")
    A, b = _eb_halfspaces(e.e_l)
    z = np.asarray(e.e_b, dtype=float)
    if np.any(A @ z > b + tol):
        raise IsContextual("e_b* lies outside E_b")
    return float(surface_distance_by_facet(e, norm, mode).min()) + 0.0


def polytope_distance_lp(system, norm=1, mode: str = "float") -> float:
    """Distance from ``e_b*`` to ``E_b`` (zero inside), expectation units."""
    e = as_expectations(system)
    A, b = _eb_halfspaces(e.e_l)
    z = np.asarray(e.e_b, dtype=float)
    sol = _expect_optimal(solve(_distance_program(z, A, b, [], norm), mode=mode), "distance to E_b")
    return float(sol.objective)


def s1_of_concatenation_bruteforce(system) -> float:
    """``s1(e_b*, e_c*)`` by enumerating all ``2**(2n-1)`` odd sign vectors."""
    e = as_expectations(system).with_maximal_couplings()
    return s1_bruteforce(np.concatenate([e.e_b, e.e_c]))


def coupling_from_solution(sol: LpSolution, n_columns: int) -> np.ndarray:
    if sol.x is None:
        raise SolverError("no primal solution")
    return np.asarray(sol.x[:n_columns], dtype=float)


__all__ = [
    "FEAS_TOL",
    "target_vector",
    "feasibility_lp",
    "is_noncontextual_lp",
    "cnt1_lp",
    "cnt2_lp",
    "cnt0_lp",
    "ncnt2_lp",
    "all_couplings_distance_lp",
    "feasibility_distance_lp",
    "polytope_distance_lp",
    "surface_distance_by_facet",
    "l1_program",
]
