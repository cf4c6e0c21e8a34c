"""Conversion of library values to deterministic JSON-compatible data."""

from __future__ import annotations

import json
import math
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .fields import ExtElement, RationalFunction
from .finite_field import GFElement
from .local_fields import LaurentSeries, PadicNumber, Sqrt
from .poly import Poly


def jsonable(x):
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GFElement):
        return str(x.symmetric()) if x.field.k == 1 else str(x)
    if isinstance(x, (RationalFunction, ExtElement, Poly, LaurentSeries, Sqrt)):
        return str(x)
    if isinstance(x, PadicNumber):
        return {"p": x.p, "valuation": x.val, "unit": x.unit, "digits": x.relprec}
    if hasattr(x, "label") and callable(x.label):
        return x.label()
    if hasattr(x, "as_dict") and callable(x.as_dict):
        return jsonable(x.as_dict())
    if isinstance(x, dict):
        return {str(k) if not hasattr(k, "label") else k.label(): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if is_dataclass(x):
        return {f.name: jsonable(getattr(x, f.name)) for f in fields(x)}
    return str(x)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))
