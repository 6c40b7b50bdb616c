"""Cyclic systems of dichotomous random variables.

A rank-``n`` cyclic system has ``n`` contexts. Context ``i`` (0-based here)
jointly measures content ``i`` and content ``i+1 (mod n)``. Arrays follow one
layout throughout the package:

``marginals[i] = (p_i^i, p_{i+1}^i)``
    probabilities that the two variables of context ``i`` equal 1.
``bunch_products[i] = p_{i,i+1}``
    probability that both equal 1.
``p_c[j] = p^{j,j-1}``
    connection product for content ``j``, coupling the first variable of
    context ``j`` with the second variable of context ``j-1``.

The expectation (+/-1) form uses the same shapes with ``e = 2p - 1`` for single
variables and ``4 p_xy - 2 p_x - 2 p_y + 1`` for products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import EmptyContext, FrechetViolation, OutOfRange, RankTooSmall

TOL = 1e-9


def _frozen(a, dtype=float) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CyclicSystem:
    """Rank-n cyclic system in probability (0/1) form.

    Parameters
    ----------
    marginals : array_like, shape (n, 2)
        ``marginals[i] = (Pr[R_i^i = 1], Pr[R_{i+1}^i = 1])``.
    bunch_products : array_like, shape (n,)
        ``Pr[R_i^i = R_{i+1}^i = 1]``.
    label : str, optional
    """

    marginals: np.ndarray
    bunch_products: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "marginals", _frozen(self.marginals))
        object.__setattr__(self, "bunch_products", _frozen(self.bunch_products))
        if self.marginals.ndim != 2 or self.marginals.shape[1] != 2:
            raise ValueError(f"marginals must have shape (n, 2), got {self.marginals.shape}")
        if self.bunch_products.shape != (self.marginals.shape[0],):
            raise ValueError("bunch_products must have one entry per context")

    @property
    def rank(self) -> int:
        return self.marginals.shape[0]

    @property
    def p_l(self) -> np.ndarray:
        """``(1, p_1^1, p_2^1, ..., p_n^n, p_1^n)``."""
        return np.concatenate([[1.0], self.marginals.ravel()])

    @property
    def p_b(self) -> np.ndarray:
        return np.array(self.bunch_products)

    @property
    def is_consistently_connected(self) -> bool:
        m = self.marginals
        return bool(np.all(np.abs(m[:, 0] - np.roll(m[:, 1], 1)) <= TOL))

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"<CyclicSystem{tag} rank={self.rank}>"

    @classmethod
    def from_arrays(cls, first, second, products, label=None) -> "CyclicSystem":
        return cls(np.column_stack([first, second]), products, label)


@dataclass(frozen=True, eq=False)
class ValidatedSystem:
    system: CyclicSystem
    has_deterministic_variable: bool


@dataclass(frozen=True, eq=False)
class ExpectationVectors:
    """The +/-1 representation ``(e_l, e_b, e_c)``.

    ``e_l`` has shape (n, 2) with the same layout as ``CyclicSystem.marginals``;
    ``e_c`` is optional and, when present, indexed by content.
    """

    e_l: np.ndarray
    e_b: np.ndarray
    e_c: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "e_l", _frozen(self.e_l))
        object.__setattr__(self, "e_b", _frozen(self.e_b))
        if self.e_c is not None:
            object.__setattr__(self, "e_c", _frozen(self.e_c))
        if self.e_l.ndim != 2 or self.e_l.shape[1] != 2 or self.e_b.shape != (self.e_l.shape[0],):
            raise ValueError("e_l must be (n, 2) and e_b must be (n,)")

    @property
    def rank(self) -> int:
        return self.e_b.shape[0]

    def same_content_differences(self) -> np.ndarray:
        """``|e_j^j - e_j^{j-1}|`` for every content ``j``."""
        return np.abs(self.e_l[:, 0] - np.roll(self.e_l[:, 1], 1))

    def with_maximal_couplings(self) -> "ExpectationVectors":
        return ExpectationVectors(self.e_l, self.e_b, 1.0 - self.same_content_differences())

    def allclose(self, other: "ExpectationVectors", atol=1e-12) -> bool:
        ok = np.allclose(self.e_l, other.e_l, atol=atol, rtol=0) and np.allclose(
            self.e_b, other.e_b, atol=atol, rtol=0
        )
        if self.e_c is None or other.e_c is None:
            return ok and self.e_c is None and other.e_c is None
        return ok and np.allclose(self.e_c, other.e_c, atol=atol, rtol=0)


@dataclass(frozen=True)
class SignVector:
    """A vector of +/-1 entries; odd when the product is -1."""

    lam: tuple

    def __post_init__(self):
        if any(x not in (-1, 1) for x in self.lam):
            raise ValueError("sign vector entries must be +1 or -1")

    @property
    def parity(self) -> int:
        return int(np.prod(self.lam))

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    def as_array(self) -> np.ndarray:
        return np.array(self.lam, dtype=float)


@dataclass(frozen=True, eq=False)
class TrialCounts:
    """Per-context counts of the outcomes (0,0), (0,1), (1,0), (1,1)."""

    counts: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        c = np.asarray(self.counts)
        if c.ndim != 2 or c.shape[1] != 4:
            raise ValueError("counts must have shape (n, 4)")
        if np.any(c < 0) or not np.all(np.equal(np.mod(c, 1), 0)):
            raise ValueError("counts must be nonnegative integers")
        object.__setattr__(self, "counts", _frozen(c, dtype=np.int64))


def frechet_bounds(p, q):
    """Bounds on ``Pr[X = Y = 1]`` given ``Pr[X = 1] = p`` and ``Pr[Y = 1] = q``."""
    return np.maximum(0.0, np.asarray(p) + np.asarray(q) - 1.0), np.minimum(p, q)


def validate(system: CyclicSystem, tol: float = TOL) -> ValidatedSystem:
    n = system.rank
    if n < 2:
        raise RankTooSmall(f"cyclic systems need rank >= 2, got {n}")
    for (i, k), v in np.ndenumerate(system.marginals):
        if not (-tol <= v <= 1 + tol) or not np.isfinite(v):
            raise OutOfRange(f"marginals[{i}][{k}]", float(v))
    for i, v in enumerate(system.bunch_products):
        if not (-tol <= v <= 1 + tol) or not np.isfinite(v):
            raise OutOfRange(f"bunch_products[{i}]", float(v))
    lo, hi = frechet_bounds(system.marginals[:, 0], system.marginals[:, 1])
    for i, v in enumerate(system.bunch_products):
        if v < lo[i] - tol:
            raise FrechetViolation(i, "lower", float(v), float(lo[i]))
        if v > hi[i] + tol:
            raise FrechetViolation(i, "upper", float(v), float(hi[i]))
    m = system.marginals
    deterministic = bool(np.any((m <= tol) | (m >= 1 - tol)))
    return ValidatedSystem(system, deterministic)


def to_expectations(system: CyclicSystem) -> ExpectationVectors:
    validate(system)
    m = system.marginals
    e_l = 2.0 * m - 1.0
    e_b = 4.0 * system.bunch_products - 2.0 * m[:, 0] - 2.0 * m[:, 1] + 1.0
    return ExpectationVectors(e_l, e_b)


def from_expectations(e: ExpectationVectors, label=None) -> CyclicSystem:
    m = (np.asarray(e.e_l) + 1.0) / 2.0
    prod = (np.asarray(e.e_b) + 2.0 * m[:, 0] + 2.0 * m[:, 1] - 1.0) / 4.0
    return CyclicSystem(m, prod, label)


def maximal_connection_couplings(system: CyclicSystem):
    """Maximal couplings of all connections.

    Returns ``(p_c, e_c)`` indexed by content: ``p_c[j] = min(p_j^j, p_j^{j-1})``
    and ``e_c`` its +/-1 image.
    """
    validate(system)
    first = system.marginals[:, 0]
    prev_second = np.roll(system.marginals[:, 1], 1)
    p_c = np.minimum(first, prev_second)
    e_c = 4.0 * p_c - 2.0 * first - 2.0 * prev_second + 1.0
    return p_c, e_c


def rotate(e: ExpectationVectors, shift: int) -> ExpectationVectors:
    """Relabel contexts (and contents) so that new index ``i`` is old ``i + shift``."""
    e_c = None if e.e_c is None else np.roll(e.e_c, -shift)
    return ExpectationVectors(np.roll(e.e_l, -shift, axis=0), np.roll(e.e_b, -shift), e_c)


def variant(e: ExpectationVectors, content_flips: Sequence[bool]) -> ExpectationVectors:
    """Negate every variable measuring the flipped contents.

    Flipping content ``j`` negates ``e_j^j``, ``e_j^{j-1}`` and the two bunch
    products involving it; connection products are unchanged.
    """
    flips = np.asarray(content_flips, dtype=bool)
    n = e.rank
    if flips.shape != (n,):
        raise ValueError(f"need {n} flip flags")
    sign = np.where(flips, -1.0, 1.0)
    # context i holds contents i and i+1
    ctx_signs = np.column_stack([sign, np.roll(sign, -1)])
    e_l = np.asarray(e.e_l) * ctx_signs
    e_b = np.asarray(e.e_b) * ctx_signs[:, 0] * ctx_signs[:, 1]
    return ExpectationVectors(e_l, e_b, e.e_c)


@dataclass(frozen=True, eq=False)
class Canonical:
    expectations: ExpectationVectors
    flips: tuple = field(default=())
    rotation: int = 0

    def __iter__(self):
        return iter((self.expectations, self.flips, self.rotation))


def canonicalize(e: ExpectationVectors) -> Canonical:
    """Canonical variant: ``|e_b[-1]| <= e_b[i]`` for every other ``i``.

    The result equals ``variant(rotate(e, rotation), flips)``. Among rotations
    that can be made canonical the smallest shift is used, so a canonical input
    comes back unchanged.
    """
    n = e.rank
    a = np.abs(np.asarray(e.e_b))
    amin = a.min()
    rotation = next(r for r in range(n) if a[(n - 1 + r) % n] <= amin)
    rotated = rotate(e, rotation)
    eb = np.array(rotated.e_b)
    flips = [False] * n
    for i in range(n - 1):
        if eb[i] < 0:
            # content i+1 enters bunches i and i+1
            flips[i + 1] = True
            eb[i] = -eb[i]
            eb[(i + 1) % n] = -eb[(i + 1) % n]
    return Canonical(variant(rotated, flips), tuple(flips), rotation)


def ingest_trials(counts: TrialCounts) -> CyclicSystem:
    """Relative-frequency estimates from per-context outcome counts."""
    c = np.asarray(counts.counts, dtype=float)
    totals = c.sum(axis=1)
    if c.shape[0] == 0:
        raise EmptyContext("no contexts")
    for i, t in enumerate(totals):
        if t <= 0:
            raise EmptyContext(f"context {i} has no trials")
    first = (c[:, 2] + c[:, 3]) / totals
    second = (c[:, 1] + c[:, 3]) / totals
    both = c[:, 3] / totals
    return CyclicSystem.from_arrays(first, second, both, counts.label)


def as_expectations(obj) -> ExpectationVectors:
    if isinstance(obj, ExpectationVectors):
        return obj
    if isinstance(obj, ValidatedSystem):
        obj = obj.system
    if isinstance(obj, CyclicSystem):
        return to_expectations(obj)
    raise TypeError(f"expected CyclicSystem or ExpectationVectors, got {type(obj).__name__}")


def has_deterministic_variable(obj, tol: float = TOL) -> bool:
    e = as_expectations(obj)
    return bool(np.any(np.abs(e.e_l) >= 1 - 2 * tol))


def consistent_system(p, e_b=None, p_b=None, label=None) -> CyclicSystem:
    """Consistently connected system with ``Pr[content j = 1] = p[j]``.

    Exactly one of ``e_b`` (bunch expectations) or ``p_b`` must be given.
    """
    p = np.asarray(p, dtype=float)
    m = np.column_stack([p, np.roll(p, -1)])
    if (e_b is None) == (p_b is None):
        raise ValueError("give exactly one of e_b, p_b")
    if p_b is not None:
        return CyclicSystem(m, p_b, label)
    return from_expectations(ExpectationVectors(2 * m - 1, e_b), label)
