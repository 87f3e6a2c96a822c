"""Command-line front end: ``radsolve solve | sweep | verify``.

Exit codes: 0 success, 1 internal failure, 2 syntax or usage error,
3 unsupported equation form, 4 oracle/solver disagreement.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .algebra import AlgebraicReal, refine
from .equation import (
    EquationSyntaxError,
    RadicalEquation,
    UnsupportedForm,
    normalize,
    parameters,
    parse,
)
from .oracle import FORMAL_ONLY, NEITHER, REFINE_WIDTH, STRONG, residual, scan, verify
from .realset import Component
from .report import MODES, render
from .solver import REJECTED, SolutionReport, solve

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_SYNTAX = 2
EXIT_UNSUPPORTED = 3
EXIT_DISAGREE = 4

# a binding that no case boundary of a sensible template should hit
GENERIC_VALUE = Fraction(7919, 104729)


class UsageError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_binding(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise UsageError(f"expected NAME=VALUE, got {text!r}")
    return name.strip(), parse_rational(value)


def _bindings(items: Optional[Sequence[str]]) -> dict[str, Fraction]:
    return dict(parse_binding(s) for s in items or ())


def _syntax_message(err: EquationSyntaxError) -> str:
    return f"syntax error: {err}"


# --- solve ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    lhs, rhs = parse(args.equation)
    eq = normalize(lhs, rhs, _bindings(args.set))
    print(render(solve(eq), args.format, args.mode))
    return EXIT_OK


# --- sweep ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    template: str
    bindings: dict
    sweep_param: str
    lo: Fraction
    hi: Fraction
    step: Fraction

    def grid(self) -> list[Fraction]:
        n = int((self.hi - self.lo) // self.step)
        return [self.lo + k * self.step for k in range(n + 1)]


def validate_sweep(spec: SweepSpec) -> str:
    """Check the sweep settings and return the form at a generic parameter value."""
    if spec.step <= 0:
        raise UsageError("step must be positive")
    if spec.lo > spec.hi:
        raise UsageError("lo must not exceed hi")
    lhs, rhs = parse(spec.template)
    names = parameters(lhs) | parameters(rhs)
    missing = names - set(spec.bindings) - {spec.sweep_param}
    if missing:
        raise UsageError(f"unbound parameters: {', '.join(sorted(missing))}")
    if spec.sweep_param in spec.bindings:
        raise UsageError(f"{spec.sweep_param} is both fixed and swept")
    generic = dict(spec.bindings)
    generic[spec.sweep_param] = GENERIC_VALUE
    return normalize(lhs, rhs, generic).form


def sweep_row(template: str, bindings: dict, param: str, value: Fraction,
              generic_form: str) -> dict:
    """Classification of one grid point; a degenerate instance never raises."""
    lhs, rhs = parse(template)
    b = dict(bindings)
    b[param] = value
    row = {"value": str(value), "form": None, "degenerate": False,
           "verdicts": [], "candidates": [], "strong_count": 0, "formal_count": 0,
           "strong": None, "formal": None}
    try:
        eq = normalize(lhs, rhs, b)
    except (UnsupportedForm, ZeroDivisionError) as exc:
        row["degenerate"] = True
        row["reason"] = str(exc) or type(exc).__name__
        return row
    report = solve(eq)
    row["form"] = eq.form
    row["degenerate"] = eq.form != generic_form
    row["verdicts"] = [c.verdict for c in report.candidates]
    row["candidates"] = [c.approx for c in report.candidates]
    row["strong_count"] = sum(c.verdict == STRONG for c in report.candidates)
    row["formal_count"] = sum(c.verdict in (STRONG, FORMAL_ONLY) for c in report.candidates)
    row["strong"] = str(report.strong)
    row["formal"] = str(report.formal)
    return row


def _row_key(row: dict) -> tuple:
    return (row["degenerate"],) + tuple(row["verdicts"])


def regions(rows: list[dict]) -> list[dict]:
    """Maximal runs of grid rows that share a verdict tuple."""
    out = []
    for row in rows:
        if out and _row_key(out[-1]["_row"]) == _row_key(row):
            out[-1]["to"] = row["value"]
            out[-1]["rows"] += 1
            continue
        out.append({"from": row["value"], "to": row["value"], "rows": 1,
                    "degenerate": row["degenerate"], "verdicts": list(row["verdicts"]),
                    "_row": row})
    for r in out:
        del r["_row"]
    return out


def _threads() -> int:
    raw = os.environ.get("RADSOLVE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"RADSOLVE_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"RADSOLVE_THREADS must be a positive integer, got {raw!r}")
    return n


def run_sweep(spec: SweepSpec, workers: int = 1) -> dict:
    generic_form = validate_sweep(spec)
    grid = spec.grid()
    jobs = [(spec.template, spec.bindings, spec.sweep_param, v, generic_form) for v in grid]
    if workers > 1 and len(grid) > 1:
        # processes, since rows are CPU bound; map keeps grid order
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(sweep_row, *zip(*jobs)))
    else:
        rows = [sweep_row(*j) for j in jobs]
    return {
        "template": spec.template,
        "bindings": {k: str(v) for k, v in sorted(spec.bindings.items())},
        "parameter": spec.sweep_param,
        "lo": str(spec.lo),
        "hi": str(spec.hi),
        "step": str(spec.step),
        "form": generic_form,
        "rows": rows,
        "regions": regions(rows),
    }


def sweep_csv(result: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([result["parameter"], "form", "degenerate", "strong_count",
                "formal_count", "verdicts", "candidates", "strong", "formal"])
    for r in result["rows"]:
        w.writerow([r["value"], r["form"] or "", int(r["degenerate"]), r["strong_count"],
                    r["formal_count"], " ".join(r["verdicts"]), " ".join(r["candidates"]),
                    r["strong"] or "", r["formal"] or ""])
    w.writerow([])
    w.writerow(["region_from", "region_to", "rows", "degenerate", "verdicts"])
    for g in result["regions"]:
        w.writerow([g["from"], g["to"], g["rows"], int(g["degenerate"]), " ".join(g["verdicts"])])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    spec = SweepSpec(args.template, _bindings(args.set), args.sweep,
                     parse_rational(args.lo), parse_rational(args.hi),
                     parse_rational(args.step))
    result = run_sweep(spec, _threads())
    if args.format == "csv":
        sys.stdout.write(sweep_csv(result))
    else:
        print(json.dumps(result, ensure_ascii=False, indent=2))
    return EXIT_OK


# --- verify --------------------------------------------------------------------------

SCAN_LO, SCAN_HI, SCAN_STEP = -50.0, 50.0, 1e-3
TOL = 1e-9
MATCH = 1e-6


def _sample_component(c: Component, rng: np.random.Generator, count: int) -> list[float]:
    lo = float(c.lo) if c.lo is not None else SCAN_LO
    hi = float(c.hi) if c.hi is not None else SCAN_HI
    if c.lo is None and hi <= SCAN_LO:
        lo = hi - 10.0
    if c.hi is None and lo >= SCAN_HI:
        hi = lo + 10.0
    xs = rng.uniform(lo, hi, size=count)
    return [float(x) for x in xs if (c.lo is None or x > lo) and (c.hi is None or x < hi)]


def check_report(eq: RadicalEquation, report: SolutionReport, samples: int = 20,
                 seed: int = 0) -> tuple[list[str], list[str]]:
    """Compare a report with the numeric oracle; returns (mismatches, notes)."""
    problems: list[str] = []
    notes: list[str] = []
    for c in report.candidates:
        seen = verify(eq, c.value, TOL)
        expected = {STRONG: STRONG, FORMAL_ONLY: FORMAL_ONLY, REJECTED: NEITHER}[c.verdict]
        if seen != expected:
            res, _ = residual(eq, _mid(c.value))
            problems.append(f"candidate {c.approx}: solver says {c.verdict}, "
                            f"oracle says {seen} (residual {abs(res):.3e})")
    for hit in scan(eq, SCAN_LO, SCAN_HI, SCAN_STEP):
        for x in {hit.lo, hit.hi, hit.x}:
            if report.strong.distance(x) > MATCH:
                problems.append(f"scan found a real solution near {x:.10g} "
                                f"missing from the strong set")
                break
    rng = np.random.default_rng(seed)
    sampled = 0
    for which, s in (("strong", report.strong), ("formal", report.formal)):
        for comp in s.intervals():
            for x in _sample_component(comp, rng, samples):
                sampled += 1
                res, rads = residual(eq, Fraction(x))
                if abs(res) >= TOL:
                    problems.append(f"{which} interval {comp}: residual {abs(res):.3e} at {x:.10g}")
                elif which == "strong" and any(float(r.real if isinstance(r, complex) else r) < 0
                                               for r in rads):
                    problems.append(f"strong interval {comp}: negative radicand at {x:.10g}")
    if sampled:
        notes.append(f"interval solutions verified by sampling ({sampled} points)")
    return problems, notes


def _mid(alpha: AlgebraicReal) -> Fraction:
    a = refine(alpha, REFINE_WIDTH)
    return (a.iso_lo + a.iso_hi) / 2


def cmd_verify(args) -> int:
    lhs, rhs = parse(args.equation)
    eq = normalize(lhs, rhs, _bindings(args.set))
    report = solve(eq)
    problems, notes = check_report(eq, report, args.samples, args.seed)
    print(f"{eq.to_text()}  [{eq.form}]")
    print(f"candidates checked: {len(report.candidates)}")
    for n in notes:
        print(f"note: {n}")
    if problems:
        for p in problems:
            print(f"MISMATCH {p}")
        return EXIT_DISAGREE
    print("agreement: ok")
    return EXIT_OK


# --- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="radsolve",
                                description="Exact solver for radical equations of depth at most two.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one equation")
    s.add_argument("equation")
    s.add_argument("--mode", choices=MODES, default="strong")
    s.add_argument("--format", choices=("json", "text", "steps"), default="text")
    s.add_argument("--set", action="append", metavar="NAME=VALUE",
                   help="bind a parameter to a rational value")
    s.set_defaults(func=cmd_solve)

    w = sub.add_parser("sweep", help="classify a parametric equation over a rational grid")
    w.add_argument("template")
    w.add_argument("--set", action="append", metavar="NAME=VALUE")
    w.add_argument("--sweep", required=True, metavar="NAME")
    w.add_argument("--lo", required=True)
    w.add_argument("--hi", required=True)
    w.add_argument("--step", required=True)
    w.add_argument("--format", choices=("json", "csv"), default="json")
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="check the solver against the numeric oracle")
    v.add_argument("equation")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--set", action="append", metavar="NAME=VALUE")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EquationSyntaxError as exc:
        print(_syntax_message(exc), file=sys.stderr)
        return EXIT_SYNTAX
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except UnsupportedForm as exc:
        print(f"unsupported form: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except Exception as exc:  # noqa: BLE001 - last-resort exit code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
