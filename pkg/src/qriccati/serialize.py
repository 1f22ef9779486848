"""JSON-ready encodings.

Exact values become strings (``"p/q"``); exact complex values become
``{"re": "p/q", "im": "p/q"}``.  Floating-point values carry the accuracy
target they were computed to in an ``"eps"`` field.
"""

from __future__ import annotations

import json
import math

from fractions import Fraction

from .exact import CQ, POLE, INDETERMINATE, Polynomial, RationalFunction
from .roots import Root


def exact_scalar(c) -> str | dict:
    c = CQ.of(c)
    if c.im == 0:
        return _frac(c.re)
    return {"re": _frac(c.re), "im": _frac(c.im)}


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _finite(x: float):
    # JSON has no inf/nan
    return x if math.isfinite(x) else str(x)


def numeric(v, eps: float) -> dict | str:
    if v is POLE:
        return "pole"
    if v is INDETERMINATE:
        return "indeterminate"
    v = complex(v)
    return {"re": _finite(v.real), "im": _finite(v.imag), "eps": eps}


def real(x: float, eps: float) -> dict:
    return {"value": _finite(float(x)), "eps": eps}


def expression(f) -> str:
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    return str(f)


def root_value(exact: CQ | None, value: complex, eps: float):
    return exact_scalar(exact) if exact is not None else numeric(value, eps)


def roots_out(rs: list[Root], eps: float) -> list:
    return [{"value": root_value(r.exact, r.value, eps), "multiplicity": r.multiplicity} for r in rs]


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)
