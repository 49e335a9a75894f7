"""Exact rational serialization: "p/q" strings, JSON helpers."""

from __future__ import annotations

import json
from fractions import Fraction


def format_rational(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    s = str(s).strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_vector(v):
    return [format_rational(x) for x in v]


def parse_vector(v):
    return tuple(parse_rational(x) for x in v)


def jsonable(obj):
    """Recursively convert Fractions/tuples to JSON-safe structures."""
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dump_json(obj, fp=None):
    text = json.dumps(jsonable(obj), sort_keys=True, indent=2)
    if fp is not None:
        fp.write(text + "\n")
    return text
