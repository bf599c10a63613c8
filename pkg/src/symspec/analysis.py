"""One analysis row per function, with a fixed, versioned schema.

Every field has a declared kind:

* ``int``, ``bool``, ``str``: plain values
* ``exact``: a rational, written ``p/q`` (or ``p`` when integral)
* ``float``: IEEE double, written in shortest round-trip form
* ``mixed``: exact on the exact path, float above the exact limit; the
  row's ``arith`` column says which one applies
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, fields
from fractions import Fraction

from .approx import approx_spectral_norm, conjecture_ratio
from .bounds import R_lower_bound_sides, envelope_ratio, l1_upper_bound
from .pdt import build_pdt, leaf_count
from .spectrum import (SymmetricFunction, exact_limit, level_spectrum, spectral_norm,
                       spectral_norm_float)
from .structure import R_functional, r_parameters

SCHEMA_VERSION = "symspec.analysis/1"

PROVENANCE = {
    "function_id": "str",
    "n": "int",
    "arith": "str",
    "r0": "int",
    "r1": "int",
    "r": "int",
    "clamped": "bool",
    "t0": "int",
    "t1": "int",
    "l1_norm": "mixed",
    "log_l1": "float",
    "R": "exact",
    "envelope_ratio": "float",
    "pdt_leaves": "int",
    "upper_margin": "float",
    "lower_margin": "exact",
    "eps": "exact",
    "approx_norm": "exact",
    "log_approx": "float",
    "conjecture_ratio": "float",
    "conjecture_ratio_per_log_n": "float",
    "conjecture_undefined": "bool",
}


@dataclass(frozen=True)
class AnalysisRow:
    """``upper_margin`` is ``2 r log2(n/r) + 3 - log2 ||f^||_1`` (``r >= 1``);
    ``lower_margin`` is ``R - R_lower_bound`` for unclamped functions.
    """

    function_id: str
    n: int
    arith: str
    r0: int
    r1: int
    r: int
    clamped: bool
    t0: int
    t1: int
    l1_norm: Fraction | float
    log_l1: float
    R: Fraction
    envelope_ratio: float | None
    pdt_leaves: int
    upper_margin: float | None
    lower_margin: Fraction | None
    eps: Fraction | None = None
    approx_norm: Fraction | None = None
    log_approx: float | None = None
    conjecture_ratio: float | None = None
    conjecture_ratio_per_log_n: float | None = None
    conjecture_undefined: bool | None = None


FIELDS = tuple(f.name for f in fields(AnalysisRow))
assert FIELDS == tuple(PROVENANCE)


def _log2(q) -> float:
    if isinstance(q, Fraction):
        return math.log2(q.numerator) - math.log2(q.denominator)
    return math.log2(q)


def analyze_function(f: SymmetricFunction, function_id: str | None = None, eps=None) -> AnalysisRow:
    spec = level_spectrum(f)
    exact = f.n <= exact_limit()
    norm = spectral_norm(spec) if exact else spectral_norm_float(spec).value
    log_l1 = _log2(norm)
    report = r_parameters(f)
    R = R_functional(spec)
    env = envelope_ratio(f, norm=norm, r=report.r)
    leaves, _ = leaf_count(build_pdt(f))
    upper = l1_upper_bound(f.n, report.r) - log_l1 if report.r >= 1 else None
    lower = None if report.clamped else R - R_lower_bound_sides(f.n, report.r0, report.r1)
    extra = {}
    if eps is not None:
        eps = Fraction(eps)
        if f.n >= 2:
            conj = conjecture_ratio(f, eps, norm=spectral_norm(spec))
            extra = dict(eps=eps, approx_norm=approx_spectral_norm(f, eps),
                         log_approx=conj.log_approx, conjecture_ratio=conj.ratio,
                         conjecture_ratio_per_log_n=conj.normalized_ratio,
                         conjecture_undefined=conj.undefined)
        else:
            extra = dict(eps=eps, approx_norm=approx_spectral_norm(f, eps))
    return AnalysisRow(
        function_id=function_id or f.level_string(), n=f.n,
        arith="exact" if exact else "float",
        r0=report.r0, r1=report.r1, r=report.r, clamped=report.clamped,
        t0=report.t0, t1=report.t1, l1_norm=norm, log_l1=log_l1, R=R,
        envelope_ratio=env.ratio, pdt_leaves=leaves,
        upper_margin=upper, lower_margin=lower, **extra)


def format_value(value) -> str:
    """Text form shared by CSV and JSON string fields."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def row_values(row: AnalysisRow) -> list[str]:
    return [format_value(getattr(row, name)) for name in FIELDS]


def csv_header() -> str:
    return ",".join(FIELDS)


def csv_line(row: AnalysisRow) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(row_values(row))
    return buf.getvalue().rstrip("\n")


def _json_value(value):
    if value is None or isinstance(value, (bool, int, float)) and not isinstance(value, Fraction):
        return value
    return format_value(value)


def row_json(row: AnalysisRow, timestamp: str | None = None) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "provenance": PROVENANCE,
        "row": {name: _json_value(getattr(row, name)) for name in FIELDS},
    }
    if timestamp is not None:
        doc["generated_at"] = timestamp
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
