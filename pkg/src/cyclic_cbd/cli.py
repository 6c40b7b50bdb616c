"""Command-line interface.

Subcommands: ``analyze``, ``sweep``, ``lemmas``, ``counterexamples`` and
``ingest``. Reports are JSON; tabular output is CSV. Exit codes: 0 success,
2 malformed input, 3 invalid system, 4 solver failure, 5 a checked property
failed.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from importlib import metadata
from pathlib import Path

from .checks import SUITE_NAMES, all_passed, run_suites
from .core import TOL, CyclicSystem, has_deterministic_variable
from .errors import (
    CbdError,
    MeasureError,
    ParseError,
    SamplesTooFew,
    SolverError,
    ValidationError,
)
from .general import (
    GeneralSystem,
    aligned_pairs,
    blocking_analysis,
    cnt1_general,
    cnt2_general,
    cyclic_subsystems,
    is_contextual_general,
    star_scan,
    tripartite_system,
)
from .lp.oracle import cnt0_lp, cnt1_lp, cnt2_lp, is_noncontextual_lp, ncnt2_lp
from .lp.simplex import FEAS_TOL
from .measures import bell_criterion, measure
from .specfile import cyclic_to_spec, ingest_csv, load_spec
from .sweep import MODES, continuity, sweep, sweep_csv

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SOLVER = 4
EXIT_PROPERTY = 5

MIN_STAR_SAMPLES = 50
ALIGN_TOL = 1e-6
ALIGN_GAP = 1e-3


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _provenance(text: str | None = None, seed=None, **extra) -> dict:
    out = {
        "version": _version(),
        "tolerance": TOL,
        "lp_feasibility_tolerance": FEAS_TOL,
        "seed": seed,
    }
    if text is not None:
        out["input_sha256"] = hashlib.sha256(text.encode("utf-8")).hexdigest()
    out.update(extra)
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        p = Path(out)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


# -- analyze -------------------------------------------------------------------


def _scale(x, units):
    """Expectation-unit value to the requested units."""
    return None if x is None else (x if units == "e" else x / 4.0)


def analyze_cyclic(system: CyclicSystem, units: str = "e", lp_mode: str = "float") -> dict:
    r = measure(system)
    closed = {
        "contextual": r.contextual,
        "s1_b": r.s1_b,
        "delta": r.delta,
        "Delta": r.Delta,
        "margin": r.margin,
        "cnt2": _scale(r.cnt_e_units, units),
        "cnt0": _scale(r.cnt0_e_units, units),
        "ncnt2": _scale(r.ncnt_e_units, units),
        "m": _scale(r.m_value, units),
        "ncnt_branch": r.ncnt_branch,
        "degenerate": r.degenerate,
    }
    lp = {"mode": lp_mode, "noncontextual": is_noncontextual_lp(system, lp_mode)}
    agree = {"criterion": lp["noncontextual"] == (not r.contextual)}
    if r.contextual:
        # LP distances come back in probability units
        for key, fn in (("cnt1", cnt1_lp), ("cnt2", cnt2_lp), ("cnt0", cnt0_lp)):
            lp[key] = _scale(4 * fn(system, lp_mode), units)
        for key in ("cnt1", "cnt2", "cnt0"):
            ref = closed["cnt0"] if key == "cnt0" else closed["cnt2"]
            agree[key] = abs(lp[key] - ref)
    elif not r.degenerate:
        lp["ncnt2"] = _scale(ncnt2_lp(system, lp_mode), units)
        agree["ncnt2"] = abs(lp["ncnt2"] - closed["ncnt2"])
    return {
        "kind": "cyclic",
        "label": system.label,
        "rank": system.rank,
        "units": "expectation" if units == "e" else "probability",
        "has_deterministic_variable": has_deterministic_variable(system),
        "closed_form": closed,
        "lp": lp,
        "agreement": agree,
    }


def analyze_general(system: GeneralSystem, units: str = "e", lp_mode: str = "float") -> dict:
    contextual = is_contextual_general(system, lp_mode)
    subs = []
    for sub in cyclic_subsystems(system):
        c = bell_criterion(sub)
        subs.append({"cycle": sub.label, "rank": sub.rank, "margin": c.margin, "contextual": c.contextual})
    out = {
        "kind": "general",
        "label": system.label,
        "contextual": contextual,
        "cyclic_subsystems": subs,
        "units": "probability",
    }
    if contextual:
        out["cnt1"] = cnt1_general(system, lp_mode)
        out["cnt2"] = cnt2_general(system, "moments", lp_mode)
        out["cnt2_pmf"] = cnt2_general(system, "pmf", lp_mode)
    return out


def cmd_analyze(args) -> int:
    text = _read(args.path)
    system = load_spec(text)
    if isinstance(system, CyclicSystem):
        report = analyze_cyclic(system, args.units, args.lp)
        failed = not report["agreement"]["criterion"] or any(
            v > 1e-7 for k, v in report["agreement"].items() if k != "criterion"
        )
    else:
        report = analyze_general(system, args.units, args.lp)
        failed = False
    report["provenance"] = _provenance(text, None, units=args.units, lp_mode=args.lp)
    _emit(_json(report), args.out)
    return EXIT_PROPERTY if failed else EXIT_OK


# -- sweep ---------------------------------------------------------------------


def cmd_sweep(args) -> int:
    rows = sweep(args.rank, args.mode, args.steps)
    _emit(sweep_csv(rows), args.out)
    rep = continuity(rows, args.rank, args.mode)
    summary = {
        "rank": args.rank,
        "mode": args.mode,
        "steps": args.steps,
        "max_jump": rep.max_jump,
        "step_l1": rep.step,
        "kinks": rep.kinks,
        "crosses_zero": rep.crosses_zero,
        "continuous": rep.continuous,
    }
    print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK


# -- lemmas --------------------------------------------------------------------


def cmd_lemmas(args) -> int:
    results = run_suites(
        seed=args.seed,
        draws=args.samples,
        samples=args.points,
        corrupt=args.inject_failure or (),
    )
    payload = {
        "suites": [r.as_dict() for r in results],
        "all_passed": all_passed(results),
        "provenance": _provenance(None, args.seed, draws=args.samples, points=args.points),
    }
    _emit(_json(payload), args.out)
    return EXIT_OK if payload["all_passed"] else EXIT_PROPERTY


# -- counterexamples -----------------------------------------------------------


def scatter_csv(samples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("sample", "contextual", "cnt1", "cnt2"))
    for s in samples:
        w.writerow((s.index, int(s.contextual), format(s.cnt1, ".12g"), format(s.cnt2, ".12g")))
    return buf.getvalue()


def cmd_counterexamples(args) -> int:
    if args.samples < MIN_STAR_SAMPLES:
        raise SamplesTooFew(f"need at least {MIN_STAR_SAMPLES} samples, got {args.samples}")
    tri = tripartite_system()
    subs = cyclic_subsystems(tri)
    sub_ctx = sum(bell_criterion(s).contextual for s in subs)
    tri_ctx = is_contextual_general(tri, args.lp)
    block = blocking_analysis(tri, mode=args.lp)
    samples = star_scan(args.seed, args.samples, workers=args.workers)
    same1, same2 = aligned_pairs(samples, ALIGN_TOL, ALIGN_GAP)
    if args.out:
        _emit(scatter_csv(samples), args.out)
    ok = tri_ctx and sub_ctx == 0 and bool(same1) and bool(same2)
    report = {
        "tripartite": {
            "contextual": tri_ctx,
            "cyclic_subsystems": len(subs),
            "cyclic_subsystems_contextual": sub_ctx,
            "summary": f"contextual: {'yes' if tri_ctx else 'no'}; "
            f"cyclic subsystems contextual: {sub_ctx}/{len(subs)}",
            "blocking": {
                "forced": {k: list(v) if v else None for k, v in block.forced.items()},
                "conflicts": list(block.conflicts),
                "restoring": list(block.restoring),
            },
        },
        "star": {
            "samples": len(samples),
            "contextual": sum(s.contextual for s in samples),
            "pairs_equal_cnt1": len(same1),
            "pairs_equal_cnt2": len(same2),
            "example_equal_cnt1": list(same1[0]) if same1 else None,
            "example_equal_cnt2": list(same2[0]) if same2 else None,
            "tie_tolerance": ALIGN_TOL,
            "gap": ALIGN_GAP,
        },
        "passed": ok,
        "provenance": _provenance(None, args.seed, samples=args.samples, lp_mode=args.lp),
    }
    sys.stdout.write(_json(report))
    return EXIT_OK if ok else EXIT_PROPERTY


# -- ingest --------------------------------------------------------------------


def cmd_ingest(args) -> int:
    text = _read(args.path)
    system = ingest_csv(text, args.label)
    spec = cyclic_to_spec(system)
    _emit(_json(spec), args.out)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclic-cbd",
        description="Contextuality and noncontextuality measures for cyclic systems.",
    )
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="closed-form measures with LP cross-checks")
    p.add_argument("path", help="JSON system specification, or - for stdin")
    p.add_argument("--units", choices=("e", "p"), default="e")
    p.add_argument("--lp", choices=("float", "exact"), default="float")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="signed measure along a box diagonal, as CSV")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="consistent")
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lemmas", help="run the randomized property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50, help="random draws per rank")
    p.add_argument("--points", type=int, default=100_000, help="points for disjointness sampling")
    p.add_argument("--out")
    p.add_argument(
        "--inject-failure", action="append", choices=SUITE_NAMES, help=argparse.SUPPRESS
    )
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("counterexamples", help="tripartite system and star-system scan")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--lp", choices=("float", "exact"), default="float")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV of (cnt1, cnt2) per sample")
    p.set_defaults(func=cmd_counterexamples)

    p = sub.add_parser("ingest", help="trial-count CSV to a cyclic specification")
    p.add_argument("path", help="CSV with context_id,c00,c01,c10,c11, or - for stdin")
    p.add_argument("--label")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ingest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, SamplesTooFew) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except MeasureError as exc:
        print(f"measure error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CbdError as exc:  # pragma: no cover - every family is handled above
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
