"""Traverse a diagonal of the box ``R_b`` and record the signed measure.

The signed measure is CNT2 where the system is contextual and ``-NCNT2``
elsewhere (expectation units), so a single curve shows both.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .core import ExpectationVectors
from .errors import BadRank
from .measures import Delta, box_intervals, measure, s1

MODES = ("consistent", "inconsistent")
INCONSISTENT_FIRST = -0.2
INCONSISTENT_SECOND = 0.1
CSV_FIELDS = ("t", "s1", "Delta", "m", "signed_measure")


def sweep_marginals(n: int, mode: str) -> np.ndarray:
    """``e_l`` for a sweep: all zero, or ``(-0.2, 0.1)`` in every context.

    In the inconsistent mode every variable measured in the context of its
    own index has expectation -0.2 and every variable measured in the
    preceding context has expectation 0.1.
    """
    if mode == "consistent":
        return np.zeros((n, 2))
    if mode == "inconsistent":
        return np.tile([INCONSISTENT_FIRST, INCONSISTENT_SECOND], (n, 1))
    raise ValueError(f"unknown marginal mode {mode!r}")


def diagonal(e_l) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints of the traversed box diagonal.

    Even rank: from ``(hi, ..., hi, lo)`` to ``(lo, ..., lo, hi)``, so the
    last coordinate is the single min (then max) coordinate. Odd rank: from
    all-lo to all-hi.
    """
    lo, hi = box_intervals(e_l)
    n = lo.shape[0]
    if n % 2 == 0:
        start = hi.copy()
        start[-1] = lo[-1]
        end = lo.copy()
        end[-1] = hi[-1]
    else:
        start, end = lo.copy(), hi.copy()
    return start, end


@dataclass(frozen=True)
class SweepRow:
    t: float
    s1: float
    Delta: float
    m: float
    signed_measure: float
    branch: str


def sweep(n: int, mode: str = "consistent", steps: int = 201) -> list:
    """``steps`` equally spaced points along the diagonal, endpoints included."""
    if not 2 <= n <= 7:
        raise BadRank(f"sweep rank must be in 2..7, got {n}")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    e_l = sweep_marginals(n, mode)
    start, end = diagonal(e_l)
    rows = []
    for t in np.linspace(0.0, 1.0, steps):
        e_b = (1 - t) * start + t * end
        r = measure(ExpectationVectors(e_l, e_b))
        branch = "contextual" if r.contextual else r.ncnt_branch
        rows.append(SweepRow(float(t), r.s1_b, r.Delta, r.m_value, r.signed_measure, branch))
    return rows


def step_length(n: int, mode: str, steps: int) -> float:
    """L1 length of one step along the diagonal."""
    start, end = diagonal(sweep_marginals(n, mode))
    return float(np.abs(end - start).sum()) / (steps - 1)


def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".12g")


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow([_fmt(r.t), _fmt(r.s1), _fmt(r.Delta), _fmt(r.m), _fmt(r.signed_measure)])
    return buf.getvalue()


@dataclass(frozen=True)
class ContinuityReport:
    max_jump: float
    step: float
    kinks: int
    max_kinks: int
    crosses_zero: bool
    sign_change: bool
    touches_zero: bool

    @property
    def continuous(self) -> bool:
        return self.max_jump <= 2 * self.step + 1e-12

    @property
    def piecewise_linear(self) -> bool:
        return self.kinks <= self.max_kinks

    @property
    def passed(self) -> bool:
        return self.continuous and self.piecewise_linear and self.crosses_zero


def continuity(rows, n: int, mode: str, tol: float = 1e-9) -> ContinuityReport:
    """Jump, kink and zero-crossing statistics of a sweep.

    A kink is an interior sample whose second difference is nonzero. Along a
    line the measure is a minimum or maximum of a few affine pieces whose
    breakpoints come from sign changes and order changes of the coordinates
    and from the switch between branches, so at most ``4n + 4`` breakpoints
    occur; each shows up as at most two kinked samples.

    ``crosses_zero`` means the curve passes from a contextual sample (> 0)
    to a noncontextual one (<= 0). ``sign_change`` additionally requires a
    strictly negative sample, which fails where ``E_b`` is flat along the
    diagonal (consistent rank 2, whose ``E_b`` is a segment).
    """
    y = np.array([r.signed_measure for r in rows])
    steps = len(rows)
    jumps = np.abs(np.diff(y))
    second = np.abs(np.diff(y, 2))
    kinks = int(np.count_nonzero(second > tol))
    return ContinuityReport(
        max_jump=float(jumps.max()),
        step=step_length(n, mode, steps),
        kinks=kinks,
        max_kinks=2 * (4 * n + 4),
        crosses_zero=bool(np.any(y > tol) and np.any(y <= tol)),
        sign_change=bool(np.any(y > tol) and np.any(y < -tol)),
        touches_zero=bool(np.any(np.abs(y) <= tol)),
    )


def max_margin_on_diagonal(n: int, mode: str) -> float:
    """Largest ``s1 - Delta`` along the diagonal.

    ``s1`` is convex, so along a segment it peaks at an endpoint.
    """
    e_l = sweep_marginals(n, mode)
    start, end = diagonal(e_l)
    return max(s1(start), s1(end)) - Delta(e_l)
