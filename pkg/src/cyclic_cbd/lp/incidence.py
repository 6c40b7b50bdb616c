"""Boolean incidence matrices linking coupling events to product expectations.

Columns enumerate every 0/1 assignment to the coupling variables, most
significant bit first: column ``k`` assigns variable ``v`` the value
``(k >> (V - 1 - v)) & 1``. A row records one product expectation; its cell is
1 exactly when every variable in the product equals 1 in that column's event.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import RankTooLarge, TooManyVariables

MAX_CYCLIC_RANK = 8
MAX_VARIABLES = 14


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """0/1 matrix with labelled rows and row blocks.

    ``blocks`` maps a block name (``"norm"``, ``"l"``, ``"b"``, ``"c"`` for
    cyclic systems) to the row slice it occupies.
    """

    matrix: np.ndarray
    row_labels: tuple
    row_vars: tuple
    blocks: dict
    variable_labels: tuple

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def n_variables(self) -> int:
        return len(self.variable_labels)

    def block(self, name: str) -> np.ndarray:
        return self.matrix[self.blocks[name]]

    def events(self) -> np.ndarray:
        return event_table(self.n_variables)


def event_table(n_vars: int) -> np.ndarray:
    """``(2**n_vars, n_vars)`` array of 0/1 values, MSB-first column order."""
    k = np.arange(2**n_vars, dtype=np.int64)
    shifts = np.arange(n_vars - 1, -1, -1, dtype=np.int64)
    return ((k[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


def product_rows(events: np.ndarray, row_vars: Sequence[Sequence[int]]) -> np.ndarray:
    out = np.empty((len(row_vars), events.shape[0]), dtype=np.float64)
    for r, vs in enumerate(row_vars):
        if len(vs) == 0:
            out[r] = 1.0
        else:
            out[r] = np.all(events[:, list(vs)] == 1, axis=1)
    return out


def cyclic_variable_labels(n: int) -> tuple:
    """``S_1^1, S_2^1, S_2^2, S_3^2, ..., S_n^n, S_1^n`` (1-based names)."""
    labels = []
    for i in range(n):
        labels.append(f"S{i + 1}^{i + 1}")
        labels.append(f"S{(i + 1) % n + 1}^{i + 1}")
    return tuple(labels)


def build_incidence_cyclic(n: int) -> IncidenceMatrix:
    """Incidence matrix of shape ``(1 + 4n, 2**(2n))`` for a rank-``n`` system.

    Variable ``2i`` is ``S_i^i`` and ``2i + 1`` is ``S_{i+1}^i`` (0-based
    contexts). Rows: the constant 1; the ``2n`` single variables in the same
    order; the ``n`` bunch products; the ``n`` connection products
    ``S_j^j S_j^{j-1}`` ordered by content ``j``.
    """
    if n < 2:
        raise ValueError("rank must be at least 2")
    if n > MAX_CYCLIC_RANK:
        raise RankTooLarge(f"rank {n} exceeds {MAX_CYCLIC_RANK}")
    names = cyclic_variable_labels(n)
    rows = [()]
    labels = ["1"]
    for v in range(2 * n):
        rows.append((v,))
        labels.append(f"<{names[v]}>")
    for i in range(n):
        rows.append((2 * i, 2 * i + 1))
        labels.append(f"<{names[2 * i]} {names[2 * i + 1]}>")
    for j in range(n):
        prev_second = 2 * ((j - 1) % n) + 1
        rows.append((2 * j, prev_second))
        labels.append(f"<{names[2 * j]} {names[prev_second]}>")
    events = event_table(2 * n)
    M = product_rows(events, rows)
    M.setflags(write=False)
    blocks = {
        "norm": slice(0, 1),
        "l": slice(1, 1 + 2 * n),
        "b": slice(1 + 2 * n, 1 + 3 * n),
        "c": slice(1 + 3 * n, 1 + 4 * n),
    }
    return IncidenceMatrix(M, tuple(labels), tuple(map(tuple, rows)), blocks, names)


def check_variable_count(n_vars: int, limit: int = MAX_VARIABLES):
    if n_vars > limit:
        raise TooManyVariables(f"{n_vars} variables need 2**{n_vars} columns (limit {limit})")
