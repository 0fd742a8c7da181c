"""Serialization of reports and result records to JSON, CSV and text."""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

import numpy as np

from .certify import CertificationReport, ExtremalReport

FORMATS = ("json", "csv", "text")
SIG_DIGITS = 15


def _num(x):
    """Round to 15 significant digits; non-finite values become strings."""
    x = float(x)
    if not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return float(f"{x:.{SIG_DIGITS}g}") + 0.0  # folds -0.0 into 0.0


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _num(obj.real), "im": _num(obj.imag)}
    return obj


def _angle(z: complex) -> float:
    return float(np.mod(np.angle(z), 2 * np.pi))


def certification_record(r: CertificationReport) -> dict:
    w = r.witness
    bound = f"{r.theoretical_bound.numerator}/{r.theoretical_bound.denominator}"
    return {
        "class": r.class_tag.value,
        "theoretical_bound": bound,
        "bound_exact": bound,
        "bound_float": float(r.theoretical_bound),
        "search_max": r.search_max,
        "gap": r.gap,
        "sound": r.sound,
        "attained": r.attained,
        "witness": {
            "tau1": w.tau1,
            "tau2_re": w.tau2.real,
            "tau2_im": w.tau2.imag,
            "tau3_re": w.tau3.real,
            "tau3_im": w.tau3.imag,
            "tau2_abs": abs(w.tau2),
            "tau2_arg": _angle(w.tau2),
            "value": r.witness_value,
        },
        "cross_form_spread": r.cross_form_spread,
        "grid": dict(r.grid_meta),
        "diagnostics": list(r.case_diagnostics),
    }


def extremal_record(r: ExtremalReport) -> dict:
    bound = f"{r.theoretical_bound.numerator}/{r.theoretical_bound.denominator}"
    return {
        "class": r.class_tag.value,
        "bound_exact": bound,
        "bound_float": float(r.theoretical_bound),
        "candidates": [
            {
                "label": c.label,
                "a2": c.a2,
                "a3": c.a3,
                "a4": c.a4,
                "h21": c.h21,
                "abs_h21": c.abs_h21,
                "h21_gamma_path": c.h21_gamma_path,
                "matches_bound": c.matches_bound,
                "driver_min_re": c.driver_min_re,
                "driver_poles_inside": c.driver_poles_inside,
                "f_margin": c.f_margin,
                "f_membership_ok": c.f_membership_ok,
                "membership_ok": c.membership_ok,
                "note": c.note,
            }
            for c in r.candidates
        ],
    }


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "_"))
        elif isinstance(v, list):
            continue
        else:
            out[key] = v
    return out


def _text(d, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list):
            lines.append(f"{pad}{k}: [{len(v)} entries]")
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def emit_records(records: list[dict], fmt: str = "json") -> bytes:
    """Serialize one or more flat-or-nested records."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    cleaned = [_clean(r) for r in records]
    if fmt == "json":
        payload = cleaned[0] if len(cleaned) == 1 else cleaned
        return (json.dumps(payload, indent=2) + "\n").encode()
    if fmt == "csv":
        rows = [_flatten(r) for r in cleaned]
        fields = list(dict.fromkeys(k for row in rows for k in row))
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().encode()
    chunks = ["\n".join(_text(r)) for r in cleaned]
    return ("\n\n".join(chunks) + "\n").encode()


def emit_report(report, fmt: str = "json") -> bytes:
    if isinstance(report, CertificationReport):
        return emit_records([certification_record(report)], fmt)
    if isinstance(report, ExtremalReport):
        return emit_records([extremal_record(report)], fmt)
    raise TypeError(f"cannot serialize {type(report).__name__}")
