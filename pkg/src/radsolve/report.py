"""Rendering of solution reports: JSON, one-line text and step-by-step."""

from __future__ import annotations

import json
from typing import Optional

from .algebra import AlgebraicReal, _primitive_ints
from .equation import FORM_SHAPES
from .realset import Component, RealSet, approx_decimal, format_number
from .solver import FORMAL_ONLY, REJECTED, SolutionReport, formula_text

MODES = ("strong", "formal", "both")


def number_json(alpha: Optional[AlgebraicReal]) -> Optional[dict]:
    if alpha is None:
        return None
    return {
        "defining_coeffs": [str(c) for c in _primitive_ints(alpha.defining)],
        "iso_lo": str(alpha.iso_lo),
        "iso_hi": str(alpha.iso_hi),
        "approx": approx_decimal(alpha),
    }


def component_json(c: Component) -> dict:
    return {
        "kind": c.kind,
        "lo": number_json(c.lo),
        "hi": number_json(c.hi),
        "lo_closed": c.lo_closed,
        "hi_closed": c.hi_closed,
    }


def set_json(s: RealSet) -> list:
    return [component_json(c) for c in s.components]


def report_dict(report: SolutionReport, mode: str = "strong") -> dict:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    candidates = []
    for c in report.candidates:
        entry = number_json(c.value)
        entry["verdict"] = c.verdict
        entry["failed"] = list(c.failed)
        candidates.append(entry)
    return {
        "equation": report.equation.to_text(),
        "form": report.form,
        "strong": set_json(report.strong) if mode != "formal" else None,
        "formal": set_json(report.formal) if mode != "strong" else None,
        "candidates": candidates,
        "notes": list(report.notes),
    }


def to_json(report: SolutionReport, mode: str = "strong") -> str:
    return json.dumps(report_dict(report, mode), ensure_ascii=False, indent=2)


def _failure_text(report: SolutionReport, failed) -> str:
    parts = []
    for name in failed:
        cond = report.system.condition(name)
        parts.append(f"{name}: {cond}" if cond else name)
    return "fails " + ", ".join(parts)


def _verdict_list(report: SolutionReport, verdict: str) -> Optional[str]:
    items = []
    for c in report.by_verdict(verdict):
        text = format_number(c.value)
        if c.failed:
            text += f" ({_failure_text(report, c.failed)})"
        items.append(text)
    return ", ".join(items) if items else None


def to_text(report: SolutionReport, mode: str = "strong") -> str:
    """Two lines: the canonical equation, then the solution summary.

    Example summary: ``strong: {12}; rejected: 2 (fails A1: g ≥ 0)``.
    """
    parts = []
    if mode in ("strong", "both"):
        parts.append(f"strong: {report.strong}")
    if mode in ("formal", "both"):
        parts.append(f"formal: {report.formal}")
    fo = _verdict_list(report, FORMAL_ONLY)
    if fo:
        parts.append(f"formal only: {fo}")
    rej = _verdict_list(report, REJECTED)
    if rej:
        parts.append(f"rejected: {rej}")
    lines = [f"{report.equation.to_text()}  [{report.form}]", "; ".join(parts)]
    lines += [f"note: {n}" for n in report.notes]
    return "\n".join(lines)


def to_steps(report: SolutionReport, mode: str = "strong") -> str:
    """Derivation in the order a person would write it by hand."""
    sys = report.system
    out = [f"Equation: {report.equation.to_text()}",
           f"Form: {report.form}   {FORM_SHAPES[report.form]}"]
    for name, f in report.equation.functions().items():
        out.append(f"  {name} = {f}")
    out.append("")
    out.append("Squaring chain:")
    out += [f"  {line}" for line in sys.chain]
    out.append("")
    out.append("Sets:")
    out.append(f"  domain = {sys.domain}")
    out.append(f"  S0 = {{x : {sys.s0_equation}}} = {sys.s0}")
    for r in sys.restrictions:
        out.append(f"  {r.name} = {{x : {r.condition}}} = {r.set}")
    out.append("")
    if mode in ("strong", "both"):
        out.append(f"Strong solutions: {formula_text(sys.strong_formula)} = {report.strong}")
    if mode in ("formal", "both"):
        if sys.formal_formula is None:
            out.append(f"Formal solutions: (strong only) = {report.formal}")
        else:
            out.append(f"Formal solutions: {formula_text(sys.formal_formula)} = {report.formal}")
    if report.candidates:
        out.append("")
        out.append("Candidates:")
        for c in report.candidates:
            line = f"  x = {format_number(c.value)}: {c.verdict}"
            if c.failed:
                line += f" ({_failure_text(report, c.failed)})"
            out.append(line)
    if report.notes:
        out.append("")
        out += [f"Note: {n}" for n in report.notes]
    return "\n".join(out)


def render(report: SolutionReport, fmt: str, mode: str = "strong") -> str:
    if fmt == "json":
        return to_json(report, mode)
    if fmt == "text":
        return to_text(report, mode)
    if fmt == "steps":
        return to_steps(report, mode)
    raise ValueError(f"unknown format {fmt!r}")


__all__ = [
    "MODES",
    "component_json",
    "number_json",
    "render",
    "report_dict",
    "to_json",
    "to_steps",
    "to_text",
]
