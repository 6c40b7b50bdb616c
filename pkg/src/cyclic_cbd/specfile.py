"""JSON system specifications and trial-count CSV files.

A cyclic specification::

    {"kind": "cyclic", "rank": 4,
     "marginals": [[p_1^1, p_2^1], [p_2^2, p_3^2], ...],
     "bunch_products": [p_12^1, p_23^2, ...],
     "label": "optional"}

``marginals[i]`` holds the probabilities that the two variables of context
``i`` (contents ``i`` and ``i + 1``, cyclically) equal 1; ``bunch_products[i]``
is the probability that both equal 1.

A general specification::

    {"kind": "general", "contents": ["q1", "q2", ...],
     "contexts": [{"name": "c1", "contents": ["q1", "q2"],
                   "pmf": [[p00, p01], [p10, p11]]}, ...]}

Instead of ``pmf`` a context may give ``table``: a list of
``{"values": [+1/-1, ...], "p": prob}`` rows, unlisted rows having
probability 0. Probabilities are the source of truth; expectations are
derived from them. Unknown fields are rejected.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .core import CyclicSystem, TrialCounts, ingest_trials, validate
from .errors import ParseError
from .general import Context, GeneralSystem, pmf_from_table

TRIAL_COLUMNS = ("context_id", "c00", "c01", "c10", "c11")

_CYCLIC_KEYS = {"kind", "rank", "marginals", "bunch_products", "label"}
_GENERAL_KEYS = {"kind", "contents", "contexts", "label"}
_CONTEXT_KEYS = {"name", "contents", "pmf", "table"}
_ROW_KEYS = {"values", "p"}


def _check_keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")
    missing = set(required) - set(obj)
    if missing:
        raise ParseError(f"{where}: missing fields {sorted(missing)}")


def _array(value, where, shape=None):
    try:
        a = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: not numeric ({exc})") from None
    if shape is not None and a.shape != shape:
        raise ParseError(f"{where}: expected shape {shape}, got {a.shape}")
    return a


def parse_spec(doc):
    """Build a :class:`CyclicSystem` or :class:`GeneralSystem` from a parsed
    JSON document. Cyclic systems are also validated."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("specification must be an object with a 'kind' field")
    kind = doc["kind"]
    if kind == "cyclic":
        _check_keys(doc, _CYCLIC_KEYS, ("kind", "marginals", "bunch_products"), "cyclic spec")
        m = _array(doc["marginals"], "marginals")
        if m.ndim != 2 or m.shape[1] != 2:
            raise ParseError(f"marginals: expected shape (n, 2), got {m.shape}")
        n = m.shape[0]
        if "rank" in doc and doc["rank"] != n:
            raise ParseError(f"rank {doc['rank']!r} does not match {n} contexts")
        pb = _array(doc["bunch_products"], "bunch_products", (n,))
        system = CyclicSystem(m, pb, doc.get("label"))
        validate(system)
        return system
    if kind == "general":
        _check_keys(doc, _GENERAL_KEYS, ("kind", "contents", "contexts"), "general spec")
        names = [str(c) for c in doc["contents"]]
        index = {c: i for i, c in enumerate(names)}
        contexts = []
        for k, raw in enumerate(doc["contexts"]):
            where = f"contexts[{k}]"
            _check_keys(raw, _CONTEXT_KEYS, ("contents",), where)
            try:
                cidx = tuple(index[str(c)] for c in raw["contents"])
            except KeyError as exc:
                raise ParseError(f"{where}: unknown content {exc}") from None
            if ("pmf" in raw) == ("table" in raw):
                raise ParseError(f"{where}: give exactly one of 'pmf' and 'table'")
            if "pmf" in raw:
                pmf = _array(raw["pmf"], f"{where}.pmf", (2,) * len(cidx))
            else:
                rows = []
                for r in raw["table"]:
                    _check_keys(r, _ROW_KEYS, _ROW_KEYS, f"{where}.table")
                    if len(r["values"]) != len(cidx) or any(v not in (-1, 1) for v in r["values"]):
                        raise ParseError(f"{where}.table: values must be {len(cidx)} entries of +1/-1")
                    rows.append((r["values"], float(r["p"])))
                pmf = pmf_from_table(rows, len(cidx))
            contexts.append(Context(str(raw.get("name", f"c{k + 1}")), cidx, pmf))
        return GeneralSystem(tuple(names), tuple(contexts), doc.get("label"))
    raise ParseError(f"unknown kind {kind!r}")


def load_spec(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return parse_spec(doc)


def cyclic_to_spec(system: CyclicSystem) -> dict:
    out = {
        "kind": "cyclic",
        "rank": system.rank,
        "marginals": system.marginals.tolist(),
        "bunch_products": system.bunch_products.tolist(),
    }
    if system.label is not None:
        out["label"] = system.label
    return out


def read_trials(text: str, label=None) -> TrialCounts:
    """Trial counts from CSV with columns ``context_id, c00, c01, c10, c11``.

    ``cab`` counts trials where the context's first variable was ``a`` and its
    second ``b``. Rows are ordered by integer ``context_id``.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(f.strip() for f in reader.fieldnames) != TRIAL_COLUMNS:
        raise ParseError(f"trial CSV header must be {','.join(TRIAL_COLUMNS)}")
    rows = []
    for line, rec in enumerate(reader, start=2):
        try:
            rows.append(
                (int(rec["context_id"]), [int(rec[c]) for c in TRIAL_COLUMNS[1:]])
            )
        except (TypeError, ValueError):
            raise ParseError(f"line {line}: counts must be integers") from None
    ids = [r[0] for r in rows]
    if len(set(ids)) != len(ids):
        raise ParseError("duplicate context_id")
    rows.sort()
    try:
        return TrialCounts(np.array([r[1] for r in rows]).reshape(-1, 4), label)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def ingest_csv(text: str, label=None) -> CyclicSystem:
    system = ingest_trials(read_trials(text, label))
    validate(system)
    return system
