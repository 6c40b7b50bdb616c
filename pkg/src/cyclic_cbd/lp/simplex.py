"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Pricing uses the most negative reduced cost (``rule="auto"``) and switches
to Bland's rule once ``DEGENERATE_LIMIT`` consecutive pivots fail to move the
objective. Bland's rule cannot cycle, so every degenerate run ends, and the
objective strictly improves between runs; hence termination. The rule goes
back to the most negative reduced cost after the first pivot that makes
progress. ``rule="bland"`` uses Bland's rule throughout.

Problems are in standard form::

    minimize (or maximize)  c @ x
    subject to              A @ x == b,   x >= 0

``mode="float"`` runs on float64 with explicit tolerances. ``mode="exact"``
runs the same pivots on :class:`fractions.Fraction` objects; it is slow and
meant for small golden instances, where it removes every rounding question.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ..errors import NumericalFailure

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9
DEGENERATE_LIMIT = 50

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LinearProgram:
    c: np.ndarray
    A_eq: np.ndarray
    b_eq: np.ndarray
    sense: str = "min"

    def __post_init__(self):
        c = np.asarray(self.c)
        A = np.asarray(self.A_eq)
        b = np.asarray(self.b_eq)
        if A.ndim != 2 or c.shape != (A.shape[1],) or b.shape != (A.shape[0],):
            raise ValueError(f"inconsistent LP shapes c{c.shape} A{A.shape} b{b.shape}")
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A_eq", A)
        object.__setattr__(self, "b_eq", b)

    @property
    def shape(self):
        return self.A_eq.shape


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: str
    x: Optional[np.ndarray]
    objective: Optional[float]
    phase1_objective: float
    iterations: int

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL

    @property
    def is_feasible(self) -> bool:
        return self.status in (OPTIMAL, UNBOUNDED)


class _Tableau:
    """Rows 0..m-1 are constraints, row m is the objective (reduced costs).

    Column ``ncols`` holds the right-hand side; ``basis[i]`` is the column basic
    in row ``i``.
    """

    def __init__(self, T, basis, exact, rule="auto"):
        self.T = T
        self.basis = basis
        self.exact = exact
        self.rule = rule
        self.zero = Fraction(0) if exact else 0.0
        self.ptol = 0 if exact else PIVOT_TOL
        self.iterations = 0

    @property
    def m(self):
        return self.T.shape[0] - 1

    def pivot(self, r, c):
        T = self.T
        T[r] = T[r] / T[r, c]
        col = T[:, c].copy()
        col[r] = self.zero
        if self.exact:
            nz = np.nonzero(col != 0)[0]
            if nz.size:
                T[nz] -= np.outer(col[nz], T[r])
        else:
            # in-place rank-one update; rows with col == 0 are unchanged
            T -= col[:, None] * T[r][None, :]
            rhs = T[:-1, -1]
            rhs[(rhs < 0) & (rhs > -PIVOT_TOL)] = 0.0
            T[:, c] = 0.0
            T[r, c] = 1.0
        self.basis[r] = c
        self.iterations += 1

    def run(self, allowed, max_iter):
        """Minimize the objective row over columns in ``allowed`` (bool mask)."""
        T = self.T
        bland = self.rule == "bland"
        stalled = 0
        while True:
            if self.iterations > max_iter:
                raise NumericalFailure(f"simplex exceeded {max_iter} iterations")
            red = T[-1, :-1]
            cand = np.nonzero(allowed & (red < -self.ptol))[0]
            if cand.size == 0:
                return OPTIMAL
            if bland:
                c = int(cand[0])  # lowest index entering
            else:
                c = int(cand[np.argmin(red[cand])])
            col = T[:-1, c]
            rows = np.nonzero(col > self.ptol)[0]
            if rows.size == 0:
                return UNBOUNDED
            ratios = T[rows, -1] / col[rows]
            best = min(ratios) if self.exact else ratios.min()
            if self.exact:
                tied = rows[[rt == best for rt in ratios]]
            else:
                tied = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
            # Bland: among tied rows, the one whose basic variable has lowest index
            r = int(min(tied, key=lambda i: self.basis[i]))
            self.pivot(r, c)
            if self.rule != "bland":
                degenerate = best == 0 if self.exact else best <= PIVOT_TOL
                stalled = stalled + 1 if degenerate else 0
                bland = stalled >= DEGENERATE_LIMIT


def _to_exact(a):
    out = np.empty(np.shape(a), dtype=object)
    flat = np.asarray(a).ravel()
    out.ravel()[:] = [v if isinstance(v, Fraction) else Fraction(v) for v in flat.tolist()]
    return out


def solve(
    lp: LinearProgram, mode: str = "float", max_iter: int = 200_000, rule: str = "auto"
) -> LpSolution:
    """Solve ``lp`` by the two-phase simplex method.

    Returns an :class:`LpSolution`; infeasibility and unboundedness are
    reported through ``status`` rather than raised. Infeasibility means the
    phase-1 optimum exceeds ``FEAS_TOL`` (exactly zero in exact mode).
    """
    exact = mode == "exact"
    if mode not in ("float", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    if rule not in ("auto", "bland"):
        raise ValueError(f"unknown pricing rule {rule!r}")
    if exact:
        A, b, c = _to_exact(lp.A_eq), _to_exact(lp.b_eq), _to_exact(lp.c)
        zero, one = Fraction(0), Fraction(1)
    else:
        A = np.asarray(lp.A_eq, dtype=float)
        b = np.asarray(lp.b_eq, dtype=float)
        c = np.asarray(lp.c, dtype=float)
        zero, one = 0.0, 1.0
    if lp.sense == "max":
        c = -c
    m, n = A.shape
    neg = np.array([v < 0 for v in b], dtype=bool)
    A = A.copy()
    b = b.copy()
    A[neg] = -A[neg]
    b[neg] = -b[neg]

    # columns: original n, artificial m, rhs
    dtype = object if exact else float
    T = np.empty((m + 1, n + m + 1), dtype=dtype)
    T[:m, :n] = A
    T[:m, n : n + m] = zero
    for i in range(m):
        T[i, n + i] = one
    T[:m, -1] = b
    T[m, :] = zero
    # phase-1 reduced costs: minimize sum of artificials
    T[m, :n] = -A.sum(axis=0) if m else zero
    T[m, -1] = -b.sum() if m else zero
    tab = _Tableau(T, list(range(n, n + m)), exact, rule)

    allowed = np.ones(n + m, dtype=bool)
    tab.run(allowed, max_iter)
    phase1 = -T[m, -1]
    phase1_val = float(phase1)
    infeasible = phase1 > 0 if exact else phase1_val > FEAS_TOL
    if infeasible:
        return LpSolution(INFEASIBLE, None, None, phase1_val, tab.iterations)

    # drive artificials out of the basis; drop rows that are redundant
    keep = np.ones(m + 1, dtype=bool)
    for i in range(m):
        if tab.basis[i] >= n:
            row = T[i, :n]
            cand = np.nonzero(row != 0)[0] if exact else np.nonzero(np.abs(row) > PIVOT_TOL)[0]
            if cand.size:
                tab.pivot(i, int(cand[0]))
            else:
                keep[i] = False
    if not keep.all():
        T = T[keep]
        tab.T = T
        tab.basis = [bv for bv, k in zip(tab.basis, keep[:-1]) if k]
    # phase 2: artificials stay out
    T = tab.T
    T[-1, :] = zero
    T[-1, :n] = c
    for i, bv in enumerate(tab.basis):
        coef = T[-1, bv]
        if coef != 0:
            T[-1] = T[-1] - coef * T[i]
    allowed = np.zeros(n + m, dtype=bool)
    allowed[:n] = True
    status = tab.run(allowed, max_iter)
    x = np.full(n, zero, dtype=dtype)
    for i, bv in enumerate(tab.basis):
        if bv < n:
            x[bv] = T[i, -1]
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, x, None, phase1_val, tab.iterations)
    obj = -T[-1, -1]
    if lp.sense == "max":
        obj = -obj
    if not exact:
        x = np.where(np.abs(x) < 1e-13, 0.0, x)
    return LpSolution(OPTIMAL, x, obj if exact else float(obj), phase1_val, tab.iterations)


def is_feasible(A, b, mode: str = "float") -> LpSolution:
    """Phase-1 only: does ``A x = b`` have a solution with ``x >= 0``?"""
    A = np.asarray(A)
    return solve(LinearProgram(np.zeros(A.shape[1]), A, b), mode=mode)
