"""Closed-form contextuality and noncontextuality measures for cyclic systems.

All distances are computed in expectation units (the +/-1 representation).
Probability units are one quarter of those, because every bunch or connection
product enters the +/-1 transform with coefficient 4 once the single-variable
marginals are fixed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from .core import TOL, as_expectations, has_deterministic_variable
from .errors import (
    BadExponent,
    DegenerateBox,
    EmptyVector,
    IsContextual,
    NotContextual,
    OutsideBox,
)

EXPECTATION_SPACE = "expectation_space"
PROBABILITY_SPACE = "probability_space"


@lru_cache(maxsize=None)
def odd_sign_vectors(n: int) -> np.ndarray:
    """All ``2**(n-1)`` vectors in {-1, +1}^n whose entries multiply to -1.

    Rows are in lexicographic order with -1 before +1.
    """
    rows = [v for v in itertools.product((-1, 1), repeat=n) if math.prod(v) == -1]
    out = np.array(rows, dtype=float).reshape(-1, n)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def even_sign_vectors(n: int) -> np.ndarray:
    rows = [v for v in itertools.product((-1, 1), repeat=n) if math.prod(v) == 1]
    out = np.array(rows, dtype=float)
    out.setflags(write=False)
    return out


def s1(e) -> float:
    """Maximum of ``sum(lam * e)`` over sign vectors with an odd number of -1's.

    Uses the closed rule: if an odd number of entries are negative, or some
    entry is zero, all signs can be matched and the result is ``sum(|e|)``;
    otherwise the smallest magnitude has to be taken with the wrong sign.
    """
    e = np.asarray(e, dtype=float).ravel()
    if e.size == 0:
        raise EmptyVector("s1 of an empty vector")
    a = np.abs(e)
    total = a.sum()
    negatives = int(np.count_nonzero(e < 0))
    if negatives % 2 == 1 or np.any(e == 0):
        return float(total)
    return float(total - 2.0 * a.min())


def s1_bruteforce(e) -> float:
    e = np.asarray(e, dtype=float).ravel()
    if e.size == 0:
        raise EmptyVector("s1 of an empty vector")
    return float(np.max(odd_sign_vectors(e.size) @ e))


def s1_argmax(e) -> np.ndarray:
    """An odd sign vector attaining :func:`s1`."""
    e = np.asarray(e, dtype=float).ravel()
    lam = np.where(e < 0, -1.0, 1.0)
    if np.prod(lam) > 0:
        k = int(np.argmin(np.abs(e)))
        lam[k] = -lam[k]
    return lam


def _e_l(obj) -> np.ndarray:
    if isinstance(obj, np.ndarray) or isinstance(obj, (list, tuple)):
        arr = np.asarray(obj, dtype=float)
        if arr.ndim == 2 and arr.shape[1] == 2:
            return arr
    return np.asarray(as_expectations(obj).e_l)


def delta(e_l) -> float:
    """Total inconsistency ``sum_j |e_j^j - e_j^{j-1}|``.

    Accepts an (n, 2) array of single-variable expectations, an
    :class:`ExpectationVectors` or a :class:`CyclicSystem`.
    """
    el = _e_l(e_l)
    return float(np.sum(np.abs(el[:, 0] - np.roll(el[:, 1], 1))))


def Delta(e_l) -> float:
    el = _e_l(e_l)
    n = el.shape[0]
    return float(min(n - 2 + delta(el), n))


@dataclass(frozen=True)
class Criterion:
    contextual: bool
    margin: float
    s1: float
    Delta: float


def bell_criterion(e, tol: float = TOL) -> Criterion:
    """Generalized Bell-type test: contextual iff ``s1(e_b) - Delta > 0``.

    Margins within ``tol`` of zero count as noncontextual (on the surface).
    """
    e = as_expectations(e)
    s = s1(e.e_b)
    D = Delta(e.e_l)
    margin = s - D
    return Criterion(bool(margin > tol), float(margin), s, D)


def cnt2(e, units: str = "e", tol: float = TOL) -> float:
    """L1 distance from ``e_b`` to the noncontextuality polytope, ``s1 - Delta``."""
    c = bell_criterion(e, tol)
    if not c.contextual:
        raise NotContextual(f"margin {c.margin:.3g} <= 0")
    return _units(c.margin, units)


def box_intervals(e_l) -> tuple[np.ndarray, np.ndarray]:
    el = _e_l(e_l)
    lo = np.abs(el[:, 0] + el[:, 1]) - 1.0
    hi = 1.0 - np.abs(el[:, 0] - el[:, 1])
    return lo, hi


def m_distance(e, tol: float = TOL) -> float:
    """Distance from ``e_b`` to the surface of the circumscribing box.

    It is the same for every L_p norm, since the nearest surface point differs
    from ``e_b`` in a single coordinate.
    """
    e = as_expectations(e)
    lo, hi = box_intervals(e.e_l)
    eb = np.asarray(e.e_b)
    gaps = np.minimum(eb - lo, hi - eb)
    if np.any(gaps < -tol):
        i = int(np.argmin(gaps))
        raise OutsideBox(f"e_b[{i}]={eb[i]} outside [{lo[i]}, {hi[i]}]")
    return float(max(gaps.min(), 0.0))


def ncnt2(e, units: str = "e", tol: float = TOL) -> float:
    """L1 distance from a noncontextual ``e_b`` to the polytope surface.

    Equals ``min(Delta - s1, m)``.
    """
    e = as_expectations(e)
    c = bell_criterion(e, tol)
    if c.contextual:
        raise IsContextual(f"margin {c.margin:.3g} > 0")
    if has_deterministic_variable(e):
        raise DegenerateBox("a deterministic variable flattens the box")
    return _units(min(max(0.0, -c.margin), m_distance(e, tol)), units)


def _exponent_factor(p: float, n: int) -> float:
    if not p >= 1:
        raise BadExponent(f"p must be >= 1, got {p}")
    if math.isinf(p):
        return 1.0 / n
    return n ** ((1.0 - p) / p)


def lp_rescale_cnt(value: float, p: float, n: int) -> float:
    """L_p version of CNT2 from its L1 value."""
    return _exponent_factor(p, n) * value


def lp_rescale_ncnt(margin: float, m: float, p: float, n: int) -> float:
    """L_p version of NCNT2 from ``Delta - s1`` and the box distance ``m``."""
    return min(_exponent_factor(p, n) * margin, m)


def concat_s1(e) -> float:
    """``s1`` of ``(e_b, e_c*)`` with maximal connection couplings."""
    e = as_expectations(e).with_maximal_couplings()
    return s1(np.concatenate([e.e_b, e.e_c]))


def cnt0(e, units: str = "e", tol: float = TOL) -> float:
    """Distance to the polytope of all couplings, ``s1(e_b, e_c*) - (2n - 2)``."""
    e = as_expectations(e)
    n = e.rank
    value = concat_s1(e) - (2 * n - 2)
    if value <= tol:
        raise NotContextual(f"s1(e_b, e_c*) - (2n-2) = {value:.3g} <= 0")
    return _units(value, units)


def _units(value, units):
    if units in ("e", EXPECTATION_SPACE):
        return float(value)
    if units in ("p", PROBABILITY_SPACE):
        return float(value) / 4.0
    raise ValueError(f"unknown units {units!r}")


@dataclass(frozen=True)
class MeasureReport:
    """Criterion verdict and closed-form measures for one cyclic system.

    ``s1_b``, ``delta``, ``Delta`` and ``margin`` always stay in expectation
    units; the distance fields (``cnt_*``, ``ncnt_*``, ``m_value``,
    ``cnt0_*``) follow ``units_note``.
    """

    contextual: bool
    s1_b: float
    delta: float
    Delta: float
    margin: float
    cnt_e_units: Optional[float]
    ncnt_e_units: Optional[float]
    m_value: Optional[float]
    cnt0_e_units: Optional[float]
    units_note: str = EXPECTATION_SPACE
    ncnt_branch: Optional[str] = None
    degenerate: bool = False
    rank: int = 0

    def to_probability_units(self) -> "MeasureReport":
        if self.units_note == PROBABILITY_SPACE:
            return self

        def q(x):
            return None if x is None else x / 4.0

        return replace(
            self,
            cnt_e_units=q(self.cnt_e_units),
            ncnt_e_units=q(self.ncnt_e_units),
            m_value=q(self.m_value),
            cnt0_e_units=q(self.cnt0_e_units),
            units_note=PROBABILITY_SPACE,
        )

    @property
    def signed_measure(self) -> Optional[float]:
        """CNT2 for contextual systems, -NCNT2 otherwise."""
        if self.contextual:
            return self.cnt_e_units
        return None if self.ncnt_e_units is None else 0.0 - self.ncnt_e_units


def measure(e, tol: float = TOL) -> MeasureReport:
    e = as_expectations(e)
    c = bell_criterion(e, tol)
    degenerate = has_deterministic_variable(e)
    d = delta(e.e_l)
    try:
        m = m_distance(e, tol)
    except OutsideBox:
        m = None
    if c.contextual:
        return MeasureReport(
            True, c.s1, d, c.Delta, c.margin, c.margin, None, m, cnt0(e, tol=tol),
            degenerate=degenerate, rank=e.rank,
        )
    if degenerate:
        return MeasureReport(
            False, c.s1, d, c.Delta, c.margin, None, None, m, None,
            degenerate=True, rank=e.rank,
        )
    compliance = max(0.0, -c.margin)
    branch = "hyperplane" if compliance <= m else "box"
    return MeasureReport(
        False, c.s1, d, c.Delta, c.margin, None, min(compliance, m), m, None,
        ncnt_branch=branch, rank=e.rank,
    )
