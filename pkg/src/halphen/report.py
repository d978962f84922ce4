"""Discrepancy records and JSON-friendly number encoding."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactmath import QComplex, Surd, Polynomial


@dataclass(frozen=True)
class Discrepancy:
    """A printed formula disagreeing with the value rebuilt from first principles."""

    location: str
    paper: object
    derived: object
    note: str = ""

    def to_dict(self) -> dict:
        return {"location": self.location, "paper": encode(self.paper),
                "derived": encode(self.derived), "note": self.note}


def _float(x: float):
    # fixed repr keeps JSON byte-stable across platforms
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return float(repr(x))


def encode(x):
    """Tag every number with an exactness flag; exact values become "p/q" strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return {"value": str(x), "exact": True}
    if isinstance(x, Fraction):
        return {"value": f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator),
                "exact": True}
    if isinstance(x, QComplex):
        if x.im == 0:
            return encode(x.re)
        return {"re": encode(x.re)["value"], "im": encode(x.im)["value"], "exact": True}
    if isinstance(x, Surd):
        if x.b == 0:
            return encode(x.a)
        return {"value": repr(x), "approx": encode(complex(x)), "exact": True}
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        x = complex(x)
    if isinstance(x, float):
        return {"value": _float(x), "exact": False}
    if isinstance(x, complex):
        if x.imag == 0:
            return {"value": _float(x.real), "exact": False}
        return {"re": _float(x.real), "im": _float(x.imag), "exact": False}
    if isinstance(x, Polynomial):
        return {"coefficients": [encode(c) for c in x.coeffs]}
    if isinstance(x, dict):
        return {k: encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    if hasattr(x, "__float__"):
        return {"value": _float(float(x)), "exact": False}
    return str(x)


def fmt(x) -> str:
    """Plain text for tables and CSV cells."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (QComplex, Surd)):
        return repr(x)
    if isinstance(x, complex):
        return repr(x.real) if x.imag == 0 else f"{x.real!r}{x.imag:+.17g}j"
    if isinstance(x, float):
        return repr(x)
    return str(x)
