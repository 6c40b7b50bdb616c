"""Seeded generators of random valid cyclic systems."""

from __future__ import annotations

import numpy as np

from .core import CyclicSystem, ExpectationVectors, from_expectations
from .measures import Delta, box_intervals, odd_sign_vectors

PLACEMENTS = ("uniform", "odd", "even", "cut")


def random_marginals(
    rng: np.random.Generator, n: int, consistent: bool, low=0.05, high=0.95, near_half=False
):
    """Marginals in ``[low, high]``.

    The spread around 1/2 is itself random so that both wide boxes (which
    allow contextuality at every rank) and narrow ones occur. Inconsistent
    draws are either fully independent or a small perturbation of a
    consistent draw. ``near_half`` keeps every marginal within 0.1 of 1/2
    and any inconsistency below 0.02, which keeps the box wide.
    """
    half = (high - low) / 2
    mid = (high + low) / 2
    spread = (0.1 if near_half else half) * rng.uniform(0.0, 1.0)
    p = mid + rng.uniform(-spread, spread, size=n)
    m = np.column_stack([p, np.roll(p, -1)])
    if consistent:
        return m
    if not near_half and rng.random() < 0.5:
        return rng.uniform(low, high, size=(n, 2))
    eps = rng.uniform(0.0, 0.02 if near_half else 0.1)
    return np.clip(m + rng.uniform(-eps, eps, size=(n, 2)), low, high)


def random_system(
    rng: np.random.Generator,
    n: int,
    consistent: bool | None = None,
    placement: str | None = None,
) -> CyclicSystem:
    """Draw a nondegenerate rank-``n`` system.

    Marginals come from :func:`random_marginals`. ``e_b`` is placed in the box ``R_b`` by one of

    ``"uniform"``  uniform over the box;
    ``"odd"``      on the segment from a uniform point to a random odd box
                   vertex, biased toward the vertex so it reaches the pockets;
    ``"even"``     the same toward an even vertex, which stays inside ``E_b``
                   near the box surface;
    ``"cut"``      on the ray from the box centre toward an odd vertex, just
                   inside the hyperplane ``sum(lam * x) = Delta`` when the
                   ray crosses it, so the hyperplane is nearer than the box.

    With ``placement=None`` the four are mixed in equal proportion.
    """
    if consistent is None:
        consistent = bool(rng.random() < 0.5)
    if placement is None:
        placement = PLACEMENTS[int(rng.integers(len(PLACEMENTS)))]
    m = random_marginals(rng, n, consistent, near_half=placement == "cut")
    e_l = 2 * m - 1
    lo, hi = box_intervals(e_l)
    u = rng.uniform(lo, hi)
    if placement == "uniform":
        e_b = u
    elif placement == "cut":
        e_b = _near_cut(rng, e_l, lo, hi)
    else:
        lams = odd_sign_vectors(n)
        lam = lams[int(rng.integers(lams.shape[0]))].copy()
        if placement == "even":
            lam[int(rng.integers(n))] *= -1
        elif placement != "odd":
            raise ValueError(f"unknown placement {placement!r}")
        vertex = np.where(lam < 0, lo, hi)
        t = rng.uniform(0.0, 1.0) ** 0.3
        e_b = t * vertex + (1 - t) * u
    e_b = np.clip(e_b, lo, hi)
    return from_expectations(ExpectationVectors(e_l, e_b))


def _near_cut(rng, e_l, lo, hi):
    centre = (lo + hi) / 2
    lams = odd_sign_vectors(e_l.shape[0])
    vertices = np.where(lams < 0, lo, hi)
    scores = np.einsum("ij,ij->i", lams, vertices)
    k = int(np.argmax(scores))
    lam, vertex = lams[k], vertices[k]
    D = Delta(e_l)
    a, b = lam @ centre, scores[k]
    t_max = (D - a) / (b - a) if b > D and b > a else 1.0
    t = t_max * (1.0 - 0.1 * rng.uniform(0.0, 1.0))
    return centre + t * (vertex - centre)


def random_systems(seed: int, n: int, count: int, **kwargs) -> list:
    rng = np.random.default_rng(seed)
    return [random_system(rng, n, **kwargs) for _ in range(count)]
