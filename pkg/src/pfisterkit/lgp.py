"""Global isotropy over Q and F_p(t) from local data, and divisor witness search."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import HypothesisFailed, NotFound, UnsupportedField, ZeroInput
from .factor import factor_with_unit
from .fields import QQ, Rationals, RationalFunctionField
from .finite_field import FiniteField
from .hilbert import product_formula_check, relevant_place_list  # noqa: F401  (re-export)
from .quadforms import (ANISOTROPIC, ISOTROPIC, DiagForm, IsotropyVerdict, PfisterPresentation,
                        completion_for, expand, isotropy_local)
from .valuations import DegreeValuation, LaurentTower, PolyValuation, RealPlace

DEFAULT_HEIGHT_BOUND = 200
# cap on the number of vectors tried by the naive witness search
DEFAULT_WORK_CAP = 4_000_000


@dataclass
class RelevantPlaceSet:
    places: list
    reasons: dict = dc_field(default_factory=dict)

    def __iter__(self):
        return iter(self.places)

    def __len__(self):
        return len(self.places)

    def labels(self):
        return [pl.label() for pl in self.places]

    def as_dict(self):
        return {"places": self.labels(), "reasons": {pl.label(): self.reasons[pl] for pl in self.places}}


def relevant_places(q) -> RelevantPlaceSet:
    """Support of the coefficients, plus the dyadic and real place (Q) or the degree place (F_p(t))."""
    coeffs = q.coeffs if isinstance(q, DiagForm) else tuple(q)
    fld = q.field if isinstance(q, DiagForm) else QQ
    pairs = relevant_place_list(coeffs, fld)
    return RelevantPlaceSet([pl for pl, _ in pairs], {pl: r for pl, r in pairs})


def global_is_square(a, field) -> bool:
    """Exact square test in Q or in F_p(t)."""
    if isinstance(field, Rationals):
        return QQ.is_square(Fraction(a))
    if isinstance(field, FiniteField):
        return field.is_square(field(a))
    if isinstance(field, RationalFunctionField) and len(field.variables) == 1:
        a = field(a)
        if not a:
            raise ZeroInput("zero has no square class")
        var = field.variables[0]
        num, den = field.to_polys(a, var)
        # a is a square iff num * den is
        lc, facs = factor_with_unit(num * den)
        if any(m % 2 for _, m in facs):
            return False
        cf = field.coefficient_field(var)
        if isinstance(cf, FiniteField):
            return cf.is_square(lc)
        return QQ.is_square(lc)
    raise UnsupportedField(f"no square test over {field}")


def _local_table(coeffs, field):
    form = DiagForm(tuple(coeffs), field)
    table = []
    for pl, reason in relevant_place_list(coeffs, field):
        verdict = isotropy_local(form, completion_for(pl, field), want_witness=False)
        table.append({"place": pl, "reason": reason, "status": verdict.status,
                      "certificate": verdict.certificate})
    return table


def global_isotropy_status(coeffs, field=QQ):
    """(isotropic, failing place or None, per-place table) over Q or F_p(t), p odd."""
    coeffs = [field(c) for c in coeffs]
    if any(c == field.zero for c in coeffs):
        raise ZeroInput("diagonal forms need nonzero coefficients")
    n = len(coeffs)
    if n <= 1:
        return False, None, [{"rule": "dimension <= 1"}]
    if n == 2:
        iso = global_is_square(-coeffs[1] / coeffs[0], field)
        return iso, None, [{"rule": "global square test of -b/a", "square": iso}]
    if not isinstance(field, (Rationals, RationalFunctionField)) or (
            isinstance(field, RationalFunctionField)
            and (len(field.variables) != 1 or not isinstance(field.base, FiniteField))):
        # e.g. Q(x): local isotropy everywhere does not give a global zero
        raise UnsupportedField(f"local-global decisions are made over Q or F_p(t), not {field}")
    table = _local_table(coeffs, field)
    # a failing real place is reported first: its sign count is the simplest obstruction
    for row in sorted(table, key=lambda r: not isinstance(r["place"], RealPlace)):
        if row["status"] != ISOTROPIC:
            return False, row["place"], table
    return True, None, table


def _integral_coeffs(coeffs):
    cs = [Fraction(c) for c in coeffs]
    den = math.lcm(*(c.denominator for c in cs))
    return [int(c * den) for c in cs]


def _search_rational_zero(coeffs, bound, work_cap):
    """Nonzero integer vector with sum c_i x_i^2 = 0, solving the last coordinate.

    Boxes [0, B]^(n-1) are enumerated for B = 1, 2, 4, ... up to ``bound``; the
    first box already holding a zero decides the reported witness.
    """
    cs = _integral_coeffs(coeffs)
    n = len(cs)
    head, last = np.array(cs[:-1], dtype=object), cs[-1]
    tried = 0
    box = 1
    while True:
        box = min(box, bound)
        size = (box + 1) ** (n - 1)
        if tried + size > work_cap:
            return None, tried, box
        grid = np.array(list(itertools.product(range(box + 1), repeat=n - 1)), dtype=np.int64)
        grid = grid[grid.any(axis=1)]
        tried += size
        big = max(abs(c) for c in cs) * (n - 1) * box * box
        if big < 2 ** 52:
            s = (grid * grid * np.array(cs[:-1], dtype=np.int64)).sum(axis=1)
            num = -s
            ok = (num % last == 0)
            target = np.where(ok, num // last, -1)
            good = target >= 0
            roots = np.floor(np.sqrt(np.where(good, target, 0).astype(np.float64))).astype(np.int64)
            for adj in (0, 1):
                r = roots + adj
                hits = np.nonzero(good & (r * r == target))[0]
                if hits.size:
                    h = hits[0]
                    return tuple(int(v) for v in grid[h]) + (int(r[h]),), tried, box
        else:
            for row in grid:
                s = sum(int(c) * int(v) * int(v) for c, v in zip(head, row))
                if (-s) % last == 0 and -s // last >= 0:
                    t = -s // last
                    r = math.isqrt(t)
                    if r * r == t:
                        return tuple(int(v) for v in row) + (r,), tried, box
        if box >= bound:
            return None, tried, box
        box *= 2


def isotropy_global(q, height_bound: int = DEFAULT_HEIGHT_BOUND, work_cap: int = DEFAULT_WORK_CAP) -> IsotropyVerdict:
    """Local-global verdict, plus a height-bounded witness search over Q."""
    if not isinstance(q, DiagForm):
        q = DiagForm(tuple(q), QQ)
    field = q.field
    iso, failing, table = global_isotropy_status(q.coeffs, field)
    cert = {"kind": "LocalGlobal", "places": table}
    if not iso:
        cert["failing_place"] = failing
        return IsotropyVerdict(ANISOTROPIC, None, cert,
                               f"anisotropic at {failing.label()}" if failing is not None else "dimension or square test")
    if not isinstance(field, Rationals):
        cert["witness_search"] = {"status": "absent_with_bound", "bound": 0, "reason": "search runs over Q only"}
        return IsotropyVerdict(ISOTROPIC, None, cert)
    z, tried, box = _search_rational_zero(q.coeffs, height_bound, work_cap)
    if z is None:
        cert["witness_search"] = {"status": "absent_with_bound", "bound": box, "vectors_tried": tried}
        return IsotropyVerdict(ISOTROPIC, None, cert, "no witness within the search bound")
    witness = tuple(Fraction(v) for v in z)
    if q.evaluate(witness) != 0:
        raise AssertionError("witness search produced a nonzero value")
    cert["witness_search"] = {"status": "found", "bound": box, "vectors_tried": tried}
    return IsotropyVerdict(ISOTROPIC, witness, cert)


# ----------------------------------------------------------------------
# divisor witnesses over k1(x)


def _candidate_valuations(entries, field, var):
    from .factor import irreducible_factors
    seen = {}
    for a in entries:
        num, den = field.to_polys(field(a), var)
        for f in (num, den):
            if f.degree >= 1:
                for g in irreducible_factors(f):
                    seen[g] = True
    out = [PolyValuation(field, var, g) for g in sorted(seen, key=lambda g: g.sort_key())]
    out.append(DegreeValuation(field, var))
    return out


def divisor_witness_search(p: PfisterPresentation, certificate=None, var: str | None = None, precision: int = 16):
    """First support place of k1(x) whose completion makes the Pfister form anisotropic.

    Places are tried in canonical order and must satisfy w(a0) = 0, w(a1) >= 0
    and w(a_i) != 0 for some entry.  Raises NotFound when none qualifies.
    """
    if certificate is not None and not getattr(certificate, "nice", True):
        raise HypothesisFailed("the tail certificate does not certify a nice pair")
    field = p.field
    if not isinstance(field, RationalFunctionField):
        raise UnsupportedField("divisor witnesses live over a rational function field k1(x)")
    var = var or field.variables[-1]
    a1, a0 = p.tail
    form = expand(p)
    tried = []
    for v in _candidate_valuations(p.entries, field, var):
        vals = [v.valuation(a) for a in p.entries]
        side = v.valuation(a0) == 0 and v.valuation(a1) >= 0 and any(w != 0 for w in vals)
        row = {"place": str(v), "values": vals, "side_conditions": side}
        tried.append(row)
        if not side:
            continue
        verdict = isotropy_local(form, LaurentTower(v, precision))
        row["status"] = verdict.status
        if verdict.anisotropic:
            verdict.certificate["candidates"] = tried
            return v, verdict
    raise NotFound(f"no support place of {field} certifies anisotropy; tried {len(tried)} candidates")
