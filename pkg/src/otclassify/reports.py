"""Job documents, report documents, and their canonical serialization.

One self-describing JSON format is used for both input jobs and output
reports.  All rationals travel as "p/q" strings (exactness), enclosure
endpoints as dyadic-rational strings, and the canonical encoding is
byte-deterministic: sorted keys, fixed separators, no timestamps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import SchemaError
from .intervals import Box, Interval

SCHEMA = "otclassify/report-v1"


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {s!r}: {exc}") from None
    raise SchemaError(f"expected rational string or integer, got {type(s).__name__}")


def _width_log2(width: Fraction):
    """Smallest k with width <= 2**k (None for exact values)."""
    if width == 0:
        return None
    k = 0
    w = Fraction(width)
    while w > 1:
        w /= 2
        k += 1
    while w <= Fraction(1, 2):
        w *= 2
        k -= 1
    return k


def interval_doc(v: Interval) -> dict:
    return {
        "lo": frac_str(v.lo),
        "hi": frac_str(v.hi),
        "width_log2": _width_log2(v.width),
    }


def enclosure_doc(v) -> dict:
    if isinstance(v, Box):
        return {"kind": "box", "re": interval_doc(v.re), "im": interval_doc(v.im),
                "width_log2": _width_log2(v.width)}
    return {"kind": "interval", **interval_doc(v)}


def verdict_doc(value, status: str) -> dict:
    if status not in ("exact", "certified-interval", "inconclusive"):
        raise ValueError(f"bad certification status {status!r}")
    return {"value": value, "status": status}


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class JobSpec:
    """Validated classification job."""

    polynomial: tuple            # integer coefficients, lowest degree first
    units: tuple                 # tuples of Fractions (power-basis coordinates)
    order_basis: tuple | None
    precision: int
    precision_cap: int
    flags: dict = dc_field(default_factory=dict)

    def doc(self) -> dict:
        out = {
            "polynomial": [int(c) for c in self.polynomial],
            "units": [[frac_str(c) for c in u] for u in self.units],
            "precision": self.precision,
            "precision_cap": self.precision_cap,
        }
        if self.order_basis is not None:
            out["order_basis"] = [[frac_str(c) for c in row]
                                  for row in self.order_basis]
        if self.flags:
            out["flags"] = dict(sorted(self.flags.items()))
        return out


_KNOWN_KEYS = {"polynomial", "units", "order_basis", "precision",
               "precision_cap", "flags"}
_KNOWN_FLAGS = {"reading", "sufficient_only"}


def parse_job(doc) -> JobSpec:
    """Validate a job document before any computation starts."""
    if not isinstance(doc, dict):
        raise SchemaError("job document must be a JSON object")
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise SchemaError(f"unknown job keys: {sorted(unknown)}")
    poly = doc.get("polynomial")
    if (not isinstance(poly, list) or len(poly) < 3
            or not all(isinstance(c, int) for c in poly)):
        raise SchemaError("polynomial must be a list of >= 3 integers "
                          "(coefficients, lowest degree first)")
    n = len(poly) - 1
    units = doc.get("units", [])
    if not isinstance(units, list):
        raise SchemaError("units must be a list of coordinate vectors")
    parsed_units = []
    for u in units:
        if not isinstance(u, list) or len(u) > n:
            raise SchemaError(f"unit vector must have at most {n} coordinates")
        coords = tuple(parse_frac(c) for c in u)
        parsed_units.append(coords + (Fraction(0),) * (n - len(coords)))
    basis = doc.get("order_basis")
    parsed_basis = None
    if basis is not None:
        if (not isinstance(basis, list) or len(basis) != n
                or any(not isinstance(r, list) or len(r) != n for r in basis)):
            raise SchemaError(f"order_basis must be a {n}x{n} matrix")
        parsed_basis = tuple(tuple(parse_frac(c) for c in row) for row in basis)
    precision = doc.get("precision", 128)
    cap = doc.get("precision_cap", 16384)
    if not isinstance(precision, int) or precision < 64:
        raise SchemaError("precision must be an integer >= 64")
    if not isinstance(cap, int) or cap < precision:
        raise SchemaError("precision_cap must be an integer >= precision")
    flags = doc.get("flags", {})
    if not isinstance(flags, dict) or set(flags) - _KNOWN_FLAGS:
        raise SchemaError(f"flags may only contain {sorted(_KNOWN_FLAGS)}")
    if "reading" in flags and flags["reading"] not in ("as-printed", "strict-ijk"):
        raise SchemaError("flags.reading must be 'as-printed' or 'strict-ijk'")
    if "sufficient_only" in flags and not isinstance(flags["sufficient_only"], bool):
        raise SchemaError("flags.sufficient_only must be a boolean")
    return JobSpec(tuple(poly), tuple(parsed_units), parsed_basis,
                   precision, cap, dict(flags))


def load_job(path) -> JobSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read job file {path}: {exc}") from None
    return parse_job(doc)


# --- report assembly ---------------------------------------------------------

def field_doc(field) -> dict:
    return {
        "polynomial": [int(c) for c in field.f.coeffs],
        "degree": field.n,
        "signature": {"s": field.s, "t": field.t},
        "order_basis": "power" if field.uses_power_order else "user",
    }


def embeddings_doc(field, data, precision) -> list:
    data.ensure(max(precision // 2, 32))
    out = []
    for lab in data.labels():
        out.append({
            "index": lab.index,
            "kind": lab.kind,
            "pair_index": lab.pair_index,
            "partner": lab.partner,
            "root": enclosure_doc(data.enclosure(lab.index)),
        })
    return out


def report_skeleton(command: str, job: JobSpec) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "input": job.doc(),
        "caveats": [],
    }


def order_caveat(field) -> list:
    if field.uses_power_order:
        return ["integrality is relative to the default power order Z[alpha]; "
                "supply order_basis when it is not maximal"]
    return ["integrality is relative to the user-supplied order basis"]
