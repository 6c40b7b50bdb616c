"""Noncyclic systems of binary random variables.

A general system is a list of contexts, each holding a subset of the contents
and a joint pmf over 0/1 values of its variables (1 stands for +1). Contextuality
is decided by linear programming over all ``2**V`` joint events of the ``V``
variables; same-content variables in different contexts are tied pairwise by
their maximal couplings.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import TOL, CyclicSystem
from .errors import EmptyContext, NotContextual, SolverError, ValidationError
from .lp.incidence import IncidenceMatrix, check_variable_count, event_table, product_rows
from .lp.oracle import l1_program
from .lp.simplex import OPTIMAL, LinearProgram, solve


@dataclass(frozen=True, eq=False)
class Context:
    """A context: content indices and a pmf whose axes follow ``contents``."""

    name: str
    contents: tuple
    pmf: np.ndarray

    def __post_init__(self):
        contents = tuple(int(c) for c in self.contents)
        if not contents:
            raise EmptyContext(f"context {self.name!r} has no contents")
        if len(set(contents)) != len(contents):
            raise ValidationError(f"context {self.name!r} repeats a content")
        pmf = np.array(self.pmf, dtype=float)
        if pmf.shape != (2,) * len(contents):
            raise ValidationError(
                f"context {self.name!r}: pmf shape {pmf.shape} does not match "
                f"{len(contents)} variables"
            )
        if np.any(pmf < -TOL):
            raise ValidationError(f"context {self.name!r}: negative probability")
        if abs(pmf.sum() - 1.0) > 1e-9:
            raise ValidationError(f"context {self.name!r}: pmf sums to {pmf.sum()!r}")
        pmf = np.clip(pmf, 0.0, None)
        pmf.setflags(write=False)
        object.__setattr__(self, "contents", contents)
        object.__setattr__(self, "pmf", pmf)

    @property
    def size(self) -> int:
        return len(self.contents)

    def marginal(self, contents: Sequence[int]) -> np.ndarray:
        """Joint pmf of the listed contents, axes in the listed order."""
        axes = [self.contents.index(c) for c in contents]
        drop = tuple(a for a in range(self.size) if a not in axes)
        sub = self.pmf.sum(axis=drop) if drop else self.pmf
        kept = sorted(axes)
        return np.transpose(sub, [kept.index(a) for a in axes])

    def p_one(self, content: int) -> float:
        return float(self.marginal([content])[1])

    def product_moment(self, contents: Sequence[int]) -> float:
        """``Pr[every listed variable equals 1]``."""
        return float(self.marginal(contents)[(1,) * len(contents)])


@dataclass(frozen=True, eq=False)
class GeneralSystem:
    contents: tuple
    contexts: tuple
    label: str | None = None

    def __post_init__(self):
        contents = tuple(str(c) for c in self.contents)
        contexts = tuple(self.contexts)
        seen = set()
        for ctx in contexts:
            for c in ctx.contents:
                if not 0 <= c < len(contents):
                    raise ValidationError(f"context {ctx.name!r}: unknown content {c}")
                seen.add(c)
        missing = [contents[c] for c in range(len(contents)) if c not in seen]
        if missing:
            raise ValidationError(f"contents in no context: {missing}")
        object.__setattr__(self, "contents", contents)
        object.__setattr__(self, "contexts", contexts)

    @property
    def variables(self) -> tuple:
        """``(context index, content index)`` for every variable, context-major."""
        return tuple((k, c) for k, ctx in enumerate(self.contexts) for c in ctx.contents)

    @property
    def n_variables(self) -> int:
        return sum(ctx.size for ctx in self.contexts)

    def variable_index(self) -> dict:
        return {v: i for i, v in enumerate(self.variables)}

    def connections(self) -> dict:
        """Content index -> indices of the contexts containing it."""
        out = {c: [] for c in range(len(self.contents))}
        for k, ctx in enumerate(self.contexts):
            for c in ctx.contents:
                out[c].append(k)
        return out

    def connection_pairs(self) -> list:
        return [
            ConnectionPair.of(self, c, a, b)
            for c, ks in self.connections().items()
            for a, b in itertools.combinations(ks, 2)
        ]

    def replace_context(self, k: int, pmf) -> "GeneralSystem":
        ctx = self.contexts[k]
        new = Context(ctx.name, ctx.contents, pmf)
        return GeneralSystem(self.contents, self.contexts[:k] + (new,) + self.contexts[k + 1 :], self.label)

    @classmethod
    def from_cyclic(cls, system: CyclicSystem) -> "GeneralSystem":
        n = system.rank
        contexts = []
        for i in range(n):
            p1, p2 = system.marginals[i]
            p12 = system.bunch_products[i]
            pmf = np.array([[1 - p1 - p2 + p12, p2 - p12], [p1 - p12, p12]])
            contexts.append(Context(f"c{i + 1}", (i, (i + 1) % n), pmf))
        return cls(tuple(f"q{j + 1}" for j in range(n)), tuple(contexts), system.label)


@dataclass(frozen=True)
class ConnectionPair:
    """Two same-content variables tied at their maximal coupling."""

    content: int
    contexts: tuple
    target: float

    @classmethod
    def of(cls, system: GeneralSystem, content: int, a: int, b: int) -> "ConnectionPair":
        pa = system.contexts[a].p_one(content)
        pb = system.contexts[b].p_one(content)
        return cls(content, (a, b), min(pa, pb))


def pmf_from_table(rows, n_vars: int) -> np.ndarray:
    """pmf from ``(values, probability)`` rows, values given as +1/-1."""
    pmf = np.zeros((2,) * n_vars)
    for values, prob in rows:
        pmf[tuple(1 if v > 0 else 0 for v in values)] += prob
    return pmf


# ---------------------------------------------------------------------------
# incidence and LPs


def _subsets(items):
    for r in range(1, len(items) + 1):
        yield from itertools.combinations(items, r)


def build_incidence_general(system: GeneralSystem) -> IncidenceMatrix:
    """Rows: constant 1; every nonempty subset product per context; one row per
    same-content context pair.

    Blocks: ``"norm"``, ``"b"`` (all context rows), ``"c"`` (connection rows).
    ``row_vars`` holds the variable indices of each product.
    """
    V = system.n_variables
    check_variable_count(V)
    idx = system.variable_index()
    rows = [()]
    labels = ["1"]
    for k, ctx in enumerate(system.contexts):
        for sub in _subsets(ctx.contents):
            rows.append(tuple(idx[(k, c)] for c in sub))
            labels.append(f"<{' '.join(system.contents[c] + '^' + ctx.name for c in sub)}>")
    n_b = len(rows) - 1
    for pair in system.connection_pairs():
        a, b = pair.contexts
        rows.append((idx[(a, pair.content)], idx[(b, pair.content)]))
        q = system.contents[pair.content]
        labels.append(
            f"<{q}^{system.contexts[a].name} {q}^{system.contexts[b].name}>"
        )
    M = product_rows(event_table(V), rows)
    M.setflags(write=False)
    blocks = {
        "norm": slice(0, 1),
        "b": slice(1, 1 + n_b),
        "c": slice(1 + n_b, len(rows)),
    }
    names = tuple(f"{system.contents[c]}^{system.contexts[k].name}" for k, c in system.variables)
    return IncidenceMatrix(M, tuple(labels), tuple(rows), blocks, names)


def general_targets(system: GeneralSystem) -> np.ndarray:
    """Right-hand side aligned with :func:`build_incidence_general` rows."""
    t = [1.0]
    for ctx in system.contexts:
        t.extend(ctx.product_moment(sub) for sub in _subsets(ctx.contents))
    t.extend(p.target for p in system.connection_pairs())
    return np.array(t)


def _singleton_mask(M: IncidenceMatrix) -> np.ndarray:
    return np.array([len(v) == 1 for v in M.row_vars])


def is_contextual_general(system: GeneralSystem, mode: str = "float") -> bool:
    """Infeasibility of ``M h = targets``, ``h >= 0``."""
    M = build_incidence_general(system)
    sol = solve(LinearProgram(np.zeros(M.shape[1]), M.matrix, general_targets(system)), mode=mode)
    return not sol.is_feasible


def cnt1_general(system: GeneralSystem, mode: str = "float", tol: float = TOL) -> float:
    """Shortfall of the connection rows from their maximal values.

    Context rows are fixed at their observed values and the sum of
    connection-product probabilities is maximized. Probability units.
    """
    M = build_incidence_general(system)
    t = general_targets(system)
    keep = np.zeros(M.shape[0], dtype=bool)
    keep[M.blocks["norm"]] = True
    keep[M.blocks["b"]] = True
    c = M.block("c").sum(axis=0)
    sol = solve(LinearProgram(c, M.matrix[keep], t[keep], sense="max"), mode=mode)
    if sol.status != OPTIMAL:
        raise SolverError(f"cnt1: solver returned {sol.status}")
    value = float(t[M.blocks["c"]].sum() - float(sol.objective))
    if value <= tol:
        raise NotContextual("connection rows reach their maximal values")
    return value


def _pmf_rows(system: GeneralSystem) -> tuple:
    """One indicator row per (context, joint value) and the observed pmf."""
    events = event_table(system.n_variables)
    idx = system.variable_index()
    rows, target = [], []
    for k, ctx in enumerate(system.contexts):
        cols = [idx[(k, c)] for c in ctx.contents]
        sub = events[:, cols]
        for value in itertools.product((0, 1), repeat=ctx.size):
            rows.append(np.all(sub == np.array(value), axis=1).astype(float))
            target.append(ctx.pmf[value])
    return np.array(rows), np.array(target)


def cnt2_general(
    system: GeneralSystem, coordinates: str = "moments", mode: str = "float", tol: float = TOL
) -> float:
    """L1 distance from the observed bunches to those compatible with the
    maximal connections. Probability units.

    ``coordinates="moments"`` measures the distance over product moments of
    two or more variables while single-variable marginals stay fixed, which
    reduces to the cyclic CNT2 for cyclic input. ``coordinates="pmf"``
    measures it over the concatenated per-context pmfs with only the
    connection rows fixed.
    """
    M = build_incidence_general(system)
    t = general_targets(system)
    norm = M.blocks["norm"]
    conn = M.blocks["c"]
    if coordinates == "moments":
        b_rows = np.arange(M.shape[0])[M.blocks["b"]]
        single = _singleton_mask(M)
        fixed_idx = np.concatenate([np.arange(M.shape[0])[norm], b_rows[single[b_rows]], np.arange(M.shape[0])[conn]])
        free_idx = b_rows[~single[b_rows]]
        fixed_A, fixed_b = M.matrix[fixed_idx], t[fixed_idx]
        free_A, free_b = M.matrix[free_idx], t[free_idx]
    elif coordinates == "pmf":
        fixed_A = np.vstack([M.matrix[norm], M.matrix[conn]])
        fixed_b = np.concatenate([t[norm], t[conn]])
        free_A, free_b = _pmf_rows(system)
    else:
        raise ValueError("coordinates must be 'moments' or 'pmf'")
    sol = solve(l1_program(fixed_A, fixed_b, free_A, free_b), mode=mode)
    if sol.status != OPTIMAL:
        raise SolverError(f"cnt2: solver returned {sol.status}")
    value = float(sol.objective)
    if value <= tol:
        raise NotContextual("observed bunches are compatible with maximal connections")
    return value


# ---------------------------------------------------------------------------
# cyclic subsystems


@dataclass(frozen=True)
class Cycle:
    """Contexts ``K_0..K_{k-1}`` and contents ``Q_0..Q_{k-1}``; ``K_i`` holds
    ``Q_i`` and ``Q_{i+1}``."""

    contexts: tuple
    contents: tuple

    @property
    def rank(self) -> int:
        return len(self.contexts)

    def key(self) -> frozenset:
        k = self.rank
        return frozenset(
            (self.contexts[i], q) for i in range(k) for q in (self.contents[i], self.contents[(i + 1) % k])
        )

    def label(self, system: GeneralSystem) -> str:
        k = self.rank
        parts = []
        for i in range(k):
            a, b = self.contents[i], self.contents[(i + 1) % k]
            parts.append(
                f"{system.contexts[self.contexts[i]].name}[{system.contents[a]},{system.contents[b]}]"
            )
        return "-".join(parts)


def find_cycles(system: GeneralSystem) -> list:
    """Every cycle of distinct contexts and distinct contents, once each up to
    rotation and reflection."""
    holders = system.connections()
    out, keys = [], set()
    n_ctx = len(system.contexts)

    def extend(ctxs, qs):
        # ctxs[-1] must hold qs[-1] (entering) and the next content (leaving)
        last = system.contexts[ctxs[-1]]
        for q_next in last.contents:
            if q_next in qs:
                if q_next == qs[0] and len(ctxs) >= 2 and q_next != qs[-1]:
                    cyc = Cycle(tuple(ctxs), tuple(qs))
                    if cyc.key() not in keys:
                        keys.add(cyc.key())
                        out.append(cyc)
                continue
            for k_next in holders[q_next]:
                if k_next in ctxs or k_next < ctxs[0]:
                    continue
                extend(ctxs + [k_next], qs + [q_next])

    for k0 in range(n_ctx):
        for q0 in system.contexts[k0].contents:
            extend([k0], [q0])
    out.sort(key=lambda c: (c.rank, c.contexts, c.contents))
    return out


def cycle_subsystem(system: GeneralSystem, cycle: Cycle) -> CyclicSystem:
    k = cycle.rank
    marginals = np.empty((k, 2))
    products = np.empty(k)
    for i in range(k):
        ctx = system.contexts[cycle.contexts[i]]
        a, b = cycle.contents[i], cycle.contents[(i + 1) % k]
        pair = ctx.marginal([a, b])
        marginals[i] = (pair[1].sum(), pair[:, 1].sum())
        products[i] = pair[1, 1]
    return CyclicSystem(marginals, products, cycle.label(system))


def cyclic_subsystems(system: GeneralSystem) -> list:
    return [cycle_subsystem(system, c) for c in find_cycles(system)]


# ---------------------------------------------------------------------------
# counterexamples

_TRIPARTITE_TABLES = (
    ((0, 1, 2), [((-1, -1, 1), 0.25), ((-1, 1, -1), 0.25), ((1, -1, -1), 0.25), ((1, 1, 1), 0.25)]),
    ((1, 2, 3), [((-1, -1, 1), 0.25), ((-1, 1, -1), 0.25), ((1, -1, -1), 0.25), ((1, 1, 1), 0.25)]),
    ((0, 2, 3), [((1, 1, -1), 0.25), ((1, -1, 1), 0.25), ((-1, 1, 1), 0.25), ((-1, -1, -1), 0.25)]),
)


def tripartite_system() -> GeneralSystem:
    """Three contexts over four contents, strongly consistently connected,
    pairwise independent within each bunch, yet contextual."""
    contexts = tuple(
        Context(f"c{k + 1}", contents, pmf_from_table(rows, 3))
        for k, (contents, rows) in enumerate(_TRIPARTITE_TABLES)
    )
    return GeneralSystem(("q1", "q2", "q3", "q4"), contexts, "tripartite")


STAR_PAIRS = ((0, 1), (1, 2), (2, 3), (0, 3))


def star_system(c5_pmf=None) -> GeneralSystem:
    """Four two-variable contexts whose variables are always equal, plus a
    four-variable context ``c5``. All variables are uniform.

    ``c5_pmf`` has shape ``(2, 2, 2, 2)`` with uniform marginals; the default
    is the product of four fair coins.
    """
    equal = np.array([[0.5, 0.0], [0.0, 0.5]])
    contexts = [Context(f"c{k + 1}", pair, equal) for k, pair in enumerate(STAR_PAIRS)]
    if c5_pmf is None:
        c5_pmf = np.full((2, 2, 2, 2), 1 / 16)
    c5 = Context("c5", (0, 1, 2, 3), c5_pmf)
    for c in range(4):
        if abs(c5.p_one(c) - 0.5) > 1e-9:
            raise ValidationError("c5 marginals must be uniform")
    return GeneralSystem(("q1", "q2", "q3", "q4"), tuple(contexts) + (c5,), "star")


@dataclass(frozen=True)
class Counterexamples:
    star: GeneralSystem
    tripartite: GeneralSystem

    def __iter__(self):
        return iter((self.star, self.tripartite))


def build_counterexamples() -> Counterexamples:
    return Counterexamples(star_system(), tripartite_system())


# ---------------------------------------------------------------------------
# star-system c5 sampling


def uniform_marginal_constraints(k: int = 4):
    """``A p = b`` describing pmfs on ``{0,1}**k`` with every marginal 1/2."""
    events = event_table(k)
    A = np.vstack([np.ones(2**k), events.T.astype(float)])
    b = np.concatenate([[1.0], np.full(k, 0.5)])
    return A, b


def _balanced_sets(k: int = 4):
    """Supports of the simplest uniform-marginal pmfs: complementary pairs and
    four-point sets in which every coordinate is 1 exactly twice."""
    pts = event_table(k)
    out = []
    for i in range(2**k):
        j = 2**k - 1 - i
        if i < j:
            out.append((i, j))
    for quad in itertools.combinations(range(2**k), 4):
        if np.all(pts[list(quad)].sum(axis=0) == 2):
            # skip unions of two complementary pairs; those are mixtures
            pairs = sum(1 for a, b in itertools.combinations(quad, 2) if a + b == 2**k - 1)
            if pairs < 2:
                out.append(quad)
    return out


def sample_c5_lattice(rng: np.random.Generator, n_parts: int = 3, grid: int = 4) -> np.ndarray:
    """Mixture of ``n_parts`` balanced supports with weights on a ``1/grid``
    lattice. The discreteness makes exact ties between samples common."""
    pool = _balanced_sets()
    picks = rng.choice(len(pool), size=n_parts, replace=False)
    cuts = np.sort(rng.integers(0, grid + 1, size=n_parts - 1))
    weights = np.diff(np.concatenate([[0], cuts, [grid]])) / grid
    p = np.zeros(16)
    for w, s in zip(weights, picks):
        members = pool[s]
        p[list(members)] += w / len(members)
    return p.reshape((2, 2, 2, 2))


def sample_c5_uniform(rng: np.random.Generator, burn: int = 200) -> np.ndarray:
    """Uniform draw from the polytope of uniform-marginal pmfs by hit-and-run.

    The uniform measure on the simplex is Dirichlet(1, ..., 1); restricted to
    the affine subspace it remains uniform, which hit-and-run targets.
    """
    A, b = uniform_marginal_constraints()
    _, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > 1e-12))
    basis = vt[rank:].T
    x = np.full(16, 1 / 16)
    for _ in range(burn):
        d = basis @ rng.standard_normal(basis.shape[1])
        d /= np.linalg.norm(d)
        with np.errstate(divide="ignore", invalid="ignore"):
            lim = -x / d
        t_hi = np.min(lim[d < 0]) if np.any(d < 0) else np.inf
        t_lo = np.max(lim[d > 0]) if np.any(d > 0) else -np.inf
        x = x + rng.uniform(t_lo, t_hi) * d
        x = np.clip(x, 0.0, None)
    x /= x.sum()
    return x.reshape((2, 2, 2, 2))


@dataclass(frozen=True)
class StarSample:
    index: int
    c5: np.ndarray = field(repr=False)
    contextual: bool
    cnt1: float
    cnt2: float


_SAMPLERS = {"lattice": sample_c5_lattice, "uniform": sample_c5_uniform}


def _star_task(args):
    index, seq, sampler, coordinates = args
    c5 = _SAMPLERS[sampler](np.random.default_rng(seq))
    system = star_system(c5)
    try:
        c1 = cnt1_general(system)
        c2 = cnt2_general(system, coordinates)
    except NotContextual:
        return StarSample(index, c5, False, 0.0, 0.0)
    return StarSample(index, c5, True, c1, c2)


def star_scan(
    seed: int,
    samples: int = 200,
    sampler: str = "lattice",
    coordinates: str = "moments",
    workers: int = 1,
) -> list:
    """CNT1 and CNT2 of the star system over seeded ``c5`` draws.

    Sample ``i`` uses the ``i``-th child of ``SeedSequence(seed)``, so results
    do not depend on ``workers``. Noncontextual draws are kept with both
    measures set to 0.
    """
    if sampler not in _SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}")
    tasks = [
        (i, child, sampler, coordinates)
        for i, child in enumerate(np.random.SeedSequence(seed).spawn(samples))
    ]
    if workers <= 1:
        return [_star_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_star_task, tasks, chunksize=max(1, samples // (4 * workers))))


def aligned_pairs(samples, tie: float = 1e-7, gap: float = 1e-3):
    """Pairs of contextual samples tied in one measure and apart in the other.

    Returns ``(same_cnt1, same_cnt2)``: index pairs with equal CNT1 but CNT2
    differing by more than ``gap``, and the reverse.
    """
    ctx = [s for s in samples if s.contextual]
    same1, same2 = [], []
    for a, b in itertools.combinations(ctx, 2):
        if abs(a.cnt1 - b.cnt1) <= tie and abs(a.cnt2 - b.cnt2) > gap:
            same1.append((a.index, b.index))
        if abs(a.cnt2 - b.cnt2) <= tie and abs(a.cnt1 - b.cnt1) > gap:
            same2.append((a.index, b.index))
    return same1, same2


# ---------------------------------------------------------------------------
# tracing the tripartite contradiction


@dataclass(frozen=True)
class BlockingReport:
    """Outcome of forcing one joint value in one context of a coupling.

    ``feasible`` says whether some coupling puts all its mass on the forced
    value while respecting every context's support and every same-content
    equality. ``forced`` maps each context name to the single joint value
    (as ±1) left to it by the equalities that involve the forced context, or
    ``None`` if several remain. ``conflicts`` names the remaining equalities
    that every such event violates; ``restoring`` names the equalities whose
    removal alone restores feasibility.
    """

    forced_context: int
    forced_value: tuple
    feasible: bool
    forced: dict
    conflicts: tuple
    restoring: tuple


def _equality_rows(system, events, idx):
    rows, labels, pairs = [], [], []
    for pair in system.connection_pairs():
        a, b = pair.contexts
        va, vb = idx[(a, pair.content)], idx[(b, pair.content)]
        rows.append((events[:, va] != events[:, vb]).astype(float))
        q = system.contents[pair.content]
        labels.append(f"{q}:{system.contexts[a].name}-{system.contexts[b].name}")
        pairs.append((a, b))
    return rows, labels, pairs


def blocking_analysis(
    system: GeneralSystem, context: int = 0, value=(-1, -1, 1), mode: str = "float"
) -> BlockingReport:
    """Force context ``context`` to the ±1 ``value`` in a coupling whose
    same-content variables are all equal, and trace why that fails.

    Feasibility is tested by phase 1 of the simplex method on rows that put
    all mass on the forced value, none outside each context's support, and
    none where two same-content variables differ.
    """
    events = event_table(system.n_variables)
    idx = system.variable_index()
    ctx = system.contexts[context]
    bits = np.array([1 if v > 0 else 0 for v in value])
    cols = [idx[(context, c)] for c in ctx.contents]
    base = [np.ones(len(events)), np.all(events[:, cols] == bits, axis=1).astype(float)]
    for k, other in enumerate(system.contexts):
        ocols = [idx[(k, c)] for c in other.contents]
        outside = other.pmf[tuple(events[:, ocols].T)] <= 0
        base.append(outside.astype(float))
    eq_rows, eq_labels, eq_pairs = _equality_rows(system, events, idx)

    def phase1(rows):
        A = np.array(base + rows)
        b = np.zeros(A.shape[0])
        b[:2] = 1.0
        return solve(LinearProgram(np.zeros(A.shape[1]), A, b), mode=mode).is_feasible

    feasible = phase1(eq_rows)
    restoring = ()
    if not feasible:
        restoring = tuple(
            lab for i, lab in enumerate(eq_labels) if phase1(eq_rows[:i] + eq_rows[i + 1 :])
        )
    direct = [i for i, pr in enumerate(eq_pairs) if context in pr]
    # events allowed by the forced value, the supports and the direct equalities
    live = base[1] == 1
    for row in base[2:] + [eq_rows[i] for i in direct]:
        live &= row == 0
    forced = {}
    for k, other in enumerate(system.contexts):
        ocols = [idx[(k, c)] for c in other.contents]
        vals = {tuple(2 * int(x) - 1 for x in row) for row in events[live][:, ocols]}
        forced[other.name] = vals.pop() if len(vals) == 1 else None
    conflicts = tuple(
        eq_labels[i]
        for i in range(len(eq_rows))
        if i not in direct and live.any() and np.all(eq_rows[i][live] == 1)
    )
    return BlockingReport(context, tuple(value), feasible, forced, conflicts, restoring)
