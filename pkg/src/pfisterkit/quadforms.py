"""Pfister presentations, their expansions, and local isotropy decisions.

Conventions: the 1-fold form of ``a`` is ``x^2 - a y^2``.  A presentation
``(a_d, ..., a_1, a_0)`` expands over index vectors ``chi`` in lexicographic
order aligned with the entries, so the last entry varies fastest.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import (DyadicResidue, HypothesisFailed, NonUnitArtinSchreierSlot, NotAUnit,
                     PrecisionExhausted, UnsupportedField, WrongCharacteristic, ZeroInput)
from .fields import QQ, Rationals, RationalFunction, RationalFunctionField
from .finite_field import FiniteField, GFElement
from .hilbert import hilbert_symbol
from .local_fields import (LaurentField, LaurentSeries, PadicNumber, Qp, Reals, Sqrt, laurent_sqrt,
                           padic_sqrt, residue_mod, square_of, vp)
from .valuations import (CompositeValuation, LaurentTower, PadicPlace, PadicValuation, RealPlace,
                         Valuation)

ISOTROPIC = "isotropic"
ANISOTROPIC = "anisotropic"
UNKNOWN = "unknown"


# ----------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class PfisterPresentation:
    """Ordered entries ``(a_d, ..., a_1, a_0)``; no normalisation is ever applied."""

    entries: tuple
    field: object = QQ

    def __post_init__(self):
        if not self.entries:
            raise ZeroInput("a presentation needs at least one entry")
        coerced = tuple(self.field(a) for a in self.entries)
        for a in coerced:
            if a == self.field.zero:
                raise ZeroInput("presentation entries must be nonzero")
        object.__setattr__(self, "entries", coerced)

    @property
    def fold(self) -> int:
        return len(self.entries)

    @property
    def char2(self) -> bool:
        return self.field.characteristic == 2

    @property
    def tail(self):
        return self.entries[-2], self.entries[-1]

    def __str__(self):
        return "pf[" + ";".join(str(a) for a in self.entries) + f"]@{self.field}"


@dataclass(frozen=True)
class DiagForm:
    coeffs: tuple
    field: object = QQ

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def evaluate(self, x):
        if len(x) != self.dim:
            raise ValueError("vector length does not match the form")
        acc = None
        for c, xi in zip(self.coeffs, x):
            if isinstance(xi, int) and xi == 0:
                continue
            term = c * square_of(xi)
            acc = term if acc is None else acc + term
        return 0 if acc is None else acc

    def scaled(self, c) -> "DiagForm":
        return DiagForm(tuple(c * a for a in self.coeffs), self.field)

    def __add__(self, other: "DiagForm") -> "DiagForm":
        return DiagForm(self.coeffs + other.coeffs, self.field)

    def __str__(self):
        return "diag[" + ",".join(str(c) for c in self.coeffs) + f"]@{self.field}"


@dataclass(frozen=True)
class Char2Form:
    """sum_chi b_chi (x^2 + x y + a0 y^2), all blocks sharing one Artin-Schreier slot."""

    blocks: tuple
    a0: object
    field: object

    @property
    def dim(self) -> int:
        return 2 * len(self.blocks)

    def evaluate(self, x):
        if len(x) != self.dim:
            raise ValueError("vector length does not match the form")
        acc = None
        for i, b in enumerate(self.blocks):
            u, w = x[2 * i], x[2 * i + 1]
            term = b * (u * u + u * w + self.a0 * w * w)
            acc = term if acc is None else acc + term
        return acc

    def __str__(self):
        return "c2[" + ",".join(str(b) for b in self.blocks) + f";{self.a0}]@{self.field}"


@dataclass
class IsotropyVerdict:
    status: str
    witness: tuple | None = None
    certificate: dict = dc_field(default_factory=dict)
    reason: str = ""

    @property
    def isotropic(self) -> bool:
        return self.status == ISOTROPIC

    @property
    def anisotropic(self) -> bool:
        return self.status == ANISOTROPIC

    def as_dict(self):
        return {"status": self.status, "witness": self.witness,
                "certificate": self.certificate, "reason": self.reason}


class SpringerSplit(NamedTuple):
    unit_form: object
    uniformizer_form: object
    transcript: list


# ----------------------------------------------------------------------
# expansions


def pfister_expand(p: PfisterPresentation) -> DiagForm:
    """Diagonal expansion: coefficient at chi is prod_j (-a_j)^chi(j)."""
    if p.char2:
        raise WrongCharacteristic("use pfister_expand_char2 in characteristic 2")
    negs = [-a for a in p.entries]
    out = []
    for chi in itertools.product((0, 1), repeat=len(negs)):
        c = p.field.one
        for bit, a in zip(chi, negs):
            if bit:
                c = c * a
        out.append(c)
    return DiagForm(tuple(out), p.field)


def pfister_expand_char2(p: PfisterPresentation) -> Char2Form:
    """Blocks b_chi = prod_j a_j^chi(j) over the multiplicative slots (a_d..a_1)."""
    if not p.char2:
        raise WrongCharacteristic("pfister_expand_char2 needs characteristic 2")
    mult = p.entries[:-1]
    blocks = []
    for chi in itertools.product((0, 1), repeat=len(mult)):
        c = p.field.one
        for bit, a in zip(chi, mult):
            if bit:
                c = c * a
        blocks.append(c)
    return Char2Form(tuple(blocks), p.entries[-1], p.field)


def expand(p: PfisterPresentation):
    return pfister_expand_char2(p) if p.char2 else pfister_expand(p)


# ----------------------------------------------------------------------
# completions and coercion


def completion_for(place, field=QQ):
    """Local field (or valuation) standing for the completion at a place."""
    from .valuations import place_valuation
    if isinstance(place, RealPlace):
        return Reals()
    if isinstance(place, PadicPlace) and isinstance(field, Rationals):
        return Qp(place.p)
    return place_valuation(place, field)


def _to_local(c, where):
    if isinstance(where, (Qp, Reals)):
        if isinstance(c, PadicNumber):
            return c
        return QQ(c)
    if isinstance(where, FiniteField):
        return where(c)
    if isinstance(where, LaurentField):
        if isinstance(c, RationalFunction):
            f = c.field
            num, den = f.to_polys(c, f.variables[0])
            return where(num.map_coeffs(lambda a: where.base(a), where.base)) / \
                where(den.map_coeffs(lambda a: where.base(a), where.base))
        return where(c)
    return c


def _as_valuation(v):
    """Objects exposing valuation / unit_residue / residue_field."""
    if isinstance(v, (Qp, LaurentField, Valuation)):
        return v
    if isinstance(v, PadicPlace):
        return Qp(v.p)
    raise UnsupportedField(f"{v!r} is not a discretely valued field")


# ----------------------------------------------------------------------
# Springer decomposition


def springer_decompose(q, v) -> SpringerSplit:
    """Split coefficients by value parity and reduce each class to unit residues."""
    val = _as_valuation(v)
    rf = val.residue_field
    transcript = []
    if isinstance(q, Char2Form):
        a0 = _to_local(q.a0, val) if isinstance(val, LaurentField) else q.a0
        if val.valuation(a0) != 0:
            raise NonUnitArtinSchreierSlot("the Artin-Schreier slot must be a unit")
        r0 = val.unit_residue(a0)
        classes = ([], [])
        for i, b in enumerate(q.blocks):
            b = _to_local(b, val) if isinstance(val, LaurentField) else b
            w = val.valuation(b)
            r = val.unit_residue(b)
            classes[w % 2].append(r)
            transcript.append({"index": i, "value": w, "class": w % 2, "residue": r})
        return SpringerSplit(Char2Form(tuple(classes[0]), r0, rf),
                             Char2Form(tuple(classes[1]), r0, rf), transcript)
    if rf.characteristic == 2:
        raise DyadicResidue("Springer decomposition needs a non-dyadic residue field")
    classes = ([], [])
    for i, c in enumerate(q.coeffs):
        c = _to_local(c, val) if isinstance(val, (Qp, LaurentField)) else c
        w = val.valuation(c)
        if w == math.inf:
            raise ZeroInput("zero coefficient in a diagonal form")
        r = val.unit_residue(c)
        classes[w % 2].append(r)
        transcript.append({"index": i, "value": w, "class": w % 2, "residue": r})
    return SpringerSplit(DiagForm(tuple(classes[0]), rf), DiagForm(tuple(classes[1]), rf), transcript)


# ----------------------------------------------------------------------
# finite fields


def ff_zero(coeffs, F: FiniteField):
    """A zero of the diagonal form over F_q (q odd), or None if anisotropic.

    Binary subforms are tried first in index order, then the first ternary one.
    """
    coeffs = [F(c) for c in coeffs]
    n = len(coeffs)
    for i in range(n):
        for j in range(i + 1, n):
            s = F.sqrt(-coeffs[i] / coeffs[j])
            if s is not None:
                z = [F.zero] * n
                z[i], z[j] = F.one, s
                return z
    if n >= 3:
        c0, c1, c2 = coeffs[:3]
        for x in F.elements():
            s = F.sqrt(-(c0 + c1 * x * x) / c2)
            if s is not None:
                z = [F.zero] * n
                z[0], z[1], z[2] = F.one, x, s
                return z
        raise AssertionError("ternary forms over finite fields are isotropic")
    return None


def _as_root(c, F):
    """A root of X^2 + X + c in F_{2^k}, or None."""
    for x in F.elements():
        if x * x + x + c == F.zero:
            return x
    return None


def ff_char2_zero(blocks, a0, F: FiniteField):
    blocks = [F(b) for b in blocks]
    a0 = F(a0)
    n = len(blocks)
    if n == 0:
        return None
    z = [F.zero] * (2 * n)
    r = _as_root(a0, F)
    if r is not None:
        z[0], z[1] = r, F.one
        return z
    if n == 1:
        return None
    # b1 N(z1) = b2 N(1, 0): find z1 with N(z1) = b2 / b1
    target = blocks[1] / blocks[0]
    for y in F.nonzero_elements():
        for x in F.elements():
            if x * x + x * y + a0 * y * y == target:
                z[0], z[1], z[2] = x, y, F.one
                return z
    raise AssertionError("forms of dimension >= 3 over finite fields are isotropic")


def _ff_verdict(q, F):
    if isinstance(q, Char2Form):
        z = ff_char2_zero(q.blocks, q.a0, F)
        if z is None:
            return IsotropyVerdict(ANISOTROPIC, None, {"kind": "LocalInvariant", "rule": "Artin-Schreier trace 1",
                                                       "trace": F.trace(F(q.a0))}), None
        return IsotropyVerdict(ISOTROPIC, tuple(z), {"kind": "FiniteFieldZero"}), z
    if F.characteristic == 2:
        raise WrongCharacteristic("diagonal forms are degenerate in characteristic 2")
    z = ff_zero(q.coeffs, F)
    if z is None:
        rule = "empty form" if q.dim == 0 else ("dimension 1" if q.dim == 1 else "-c2/c1 nonsquare")
        return IsotropyVerdict(ANISOTROPIC, None, {"kind": "LocalInvariant", "rule": rule}), None
    return IsotropyVerdict(ISOTROPIC, tuple(z), {"kind": "FiniteFieldZero"}), z


def ff_isotropic(coeffs, F) -> bool:
    return ff_zero(coeffs, F) is not None


# ----------------------------------------------------------------------
# Hasse-invariant criterion (any Q_p, used at p = 2)


def _square_in_qp(a: Fraction, p: int) -> bool:
    return Qp(p).is_square(a)


def hasse_isotropic(coeffs, p: int) -> bool:
    """Isotropy over Q_p from dimension, discriminant and Hasse invariant."""
    coeffs = [Fraction(c) for c in coeffs]
    n = len(coeffs)
    if n <= 1:
        return False
    if n >= 5:
        return True
    d = Fraction(1)
    for c in coeffs:
        d *= c
    eps = 1
    for i in range(n):
        for j in range(i + 1, n):
            eps *= hilbert_symbol(coeffs[i], coeffs[j], PadicPlace(p))
    if n == 2:
        return _square_in_qp(-d, p)
    if n == 3:
        return hilbert_symbol(-1, -d, PadicPlace(p)) == eps
    if not _square_in_qp(d, p):
        return True
    return eps == hilbert_symbol(-1, -1, PadicPlace(p))


def _hasse_certificate(coeffs, p):
    d = Fraction(1)
    for c in coeffs:
        d *= Fraction(c)
    eps = 1
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            eps *= hilbert_symbol(coeffs[i], coeffs[j], PadicPlace(p))
    return {"kind": "LocalInvariant", "prime": p, "dimension": len(coeffs),
            "discriminant": d, "discriminant_is_square": _square_in_qp(d, p) if d else None,
            "hasse_invariant": eps}


# ----------------------------------------------------------------------
# witnesses over complete fields


def _uniformizer_power(where, k):
    if isinstance(where, Qp):
        return Fraction(where.p) ** k
    return LaurentSeries.monomial(where, k)


def _local_sqrt(t, where):
    if isinstance(where, Qp):
        return padic_sqrt(t, where.p, where.prec)
    return laurent_sqrt(t, where.prec)


def _lift_residue(r, where):
    if isinstance(where, Qp):
        return Fraction(r.symmetric())
    return where(r)


def _lift_class_zero(coeffs, values, members, rzero, where):
    """Lift a residue zero of one parity class to a zero in the completion."""
    n = len(coeffs)
    x = [where.zero if isinstance(where, LaurentField) else Fraction(0)] * n
    nonzero = [k for k, r in enumerate(rzero) if r != r.field.zero]
    last = nonzero[-1]
    rest = None
    for k in nonzero[:-1]:
        i = members[k]
        xi = _lift_residue(rzero[k], where) * _uniformizer_power(where, -(values[i] // 2))
        x[i] = xi
        term = coeffs[i] * xi * xi
        rest = term if rest is None else rest + term
    i = members[last]
    t = -rest / coeffs[i] if rest is not None else None
    if t is None:
        raise AssertionError("a residue zero has at least two nonzero coordinates")
    root = _local_sqrt(t, where)
    if root is None:
        raise AssertionError("the lifted target is not a square; residue zero was wrong")
    x[i] = root
    return x


def _q2_witness(coeffs):
    """A zero over Q_2 of an isotropic form, by a search modulo 8 or 32 plus Newton."""
    n = len(coeffs)
    use = min(n, 5)
    cs = [Fraction(c) for c in coeffs[:use]]
    ks = [vp(c, 2) // 2 for c in cs]
    ds = [c / Fraction(4) ** k for c, k in zip(cs, ks)]
    if all(vp(d, 2) == 1 for d in ds):
        ds = [d / 2 for d in ds]
    order = sorted(range(use), key=lambda j: (vp(ds[j], 2), j))
    for j in order:
        need = 3 if vp(ds[j], 2) == 0 else 5
        m = 2 ** need
        others = [i for i in range(use) if i != j]
        res = np.array([residue_mod(ds[i], 2, need) for i in others], dtype=np.int64)
        dj = residue_mod(ds[j], 2, need)
        grid = np.array(list(itertools.product(range(m), repeat=len(others))), dtype=np.int64)
        if grid.size == 0:
            continue
        vals = (grid * grid * res).sum(axis=1) + dj
        hits = np.nonzero(vals % m == 0)[0]
        for h in hits:
            ys = [int(v) for v in grid[h]]
            rest = sum((ds[i] * y * y for i, y in zip(others, ys)), Fraction(0))
            root = padic_sqrt(-rest / ds[j], 2, 24)
            if root is None:
                continue
            y = [Fraction(0)] * use
            for i, yi in zip(others, ys):
                y[i] = Fraction(yi)
            y[j] = root
            x = [yi / Fraction(2) ** k if not isinstance(yi, PadicNumber) else yi * Fraction(1, 2 ** k)
                 for yi, k in zip(y, ks)]
            return tuple(x) + (Fraction(0),) * (n - use)
    raise AssertionError("no dyadic witness found for a form decided isotropic")


def _real_witness(coeffs):
    cs = [Fraction(c) for c in coeffs]
    i = next(k for k, c in enumerate(cs) if c > 0)
    j = next(k for k, c in enumerate(cs) if c < 0)
    x = [Fraction(0)] * len(cs)

    def root(r):
        s = QQ.sqrt(r)
        return s if s is not None else Sqrt(r)

    x[i] = root(-cs[j])
    x[j] = root(cs[i])
    return tuple(x)


# ----------------------------------------------------------------------
# isotropy over local fields


def _springer_verdict(q, where, want_witness=True):
    split = springer_decompose(q, where)
    rf = where.residue_field
    parts = []
    for cls, form in ((0, split.unit_form), (1, split.uniformizer_form)):
        verdict, z = _ff_verdict(form, rf)
        parts.append((cls, form, verdict, z))
    transcript = {
        "kind": "ResidueDecomposition",
        "coefficients": split.transcript,
        "unit_form": list(split.unit_form.coeffs) if isinstance(split.unit_form, DiagForm) else None,
        "uniformizer_form": list(split.uniformizer_form.coeffs) if isinstance(split.uniformizer_form, DiagForm) else None,
    }
    for cls, form, verdict, z in parts:
        if verdict.isotropic:
            transcript["isotropic_class"] = cls
            transcript["residue_zero"] = z
            witness = None
            if want_witness and isinstance(where, (Qp, LaurentField)) and isinstance(q, DiagForm):
                members = [t["index"] for t in split.transcript if t["class"] == cls]
                values = {t["index"]: t["value"] for t in split.transcript}
                coeffs = [_to_local(c, where) for c in q.coeffs]
                witness = tuple(_lift_class_zero(coeffs, values, members, z, where))
            elif want_witness and isinstance(where, LaurentField) and isinstance(q, Char2Form):
                witness = tuple(_char2_lift(q, where, split, cls, z))
            return IsotropyVerdict(ISOTROPIC, witness, transcript)
    transcript["residue_verdicts"] = [p[2].certificate for p in parts]
    return IsotropyVerdict(ANISOTROPIC, None, transcript)


def _char2_lift(q, where, split, cls, z):
    """Lift a residue zero of a characteristic-2 block class by Newton on one coordinate."""
    L = where
    a0 = _to_local(q.a0, L)
    members = [t["index"] for t in split.transcript if t["class"] == cls]
    values = {t["index"]: t["value"] for t in split.transcript}
    blocks = [_to_local(b, L) for b in q.blocks]
    x = [L.zero] * q.dim
    zero = L.base.zero
    pairs = [(members[k], z[2 * k], z[2 * k + 1]) for k in range(len(members))
             if z[2 * k] != zero or z[2 * k + 1] != zero]
    steps = int(L.prec).bit_length() + 3
    if len(pairs) == 1:
        # X^2 + X + a0 = 0; r -> r^2 + a0 contracts near a residue root in characteristic 2
        i = pairs[0][0]
        r = L(pairs[0][1])
        for _ in range(steps):
            r = (r * r + a0).truncate(L.prec)
        s = _uniformizer_power(L, -(values[i] // 2))
        x[2 * i], x[2 * i + 1] = r * s, s
        return x
    (i1, xa, ya), (i2, xb, yb) = pairs[0], pairs[1]
    if ya == zero:
        raise PrecisionExhausted("residue zero has no usable Newton coordinate")
    s1 = _uniformizer_power(L, -(values[i1] // 2))
    s2 = _uniformizer_power(L, -(values[i2] // 2))
    xb_, yb_ = L(xb), L(yb)
    # b1 s1^2 N(X, ya) = b2 s2^2 N(xb, yb): a unit-scale equation in X with derivative ya
    c = blocks[i2] * s2 * s2 * (xb_ * xb_ + xb_ * yb_ + a0 * yb_ * yb_) / (blocks[i1] * s1 * s1)
    y1 = L(ya)
    X = L(xa)
    for _ in range(steps):
        g = X * X + X * y1 + a0 * y1 * y1 - c
        X = (X - g / y1).truncate(L.prec)
    x[2 * i1], x[2 * i1 + 1] = X * s1, y1 * s1
    x[2 * i2], x[2 * i2 + 1] = xb_ * s2, yb_ * s2
    return x


def _char2_laurent_verdict(q: Char2Form, where: LaurentField, want_witness=True):
    split = springer_decompose(q, where)
    rf = where.residue_field
    r0 = split.unit_form.a0
    trace = rf.trace(r0)
    cert = {"kind": "ResidueDecomposition", "coefficients": split.transcript,
            "artin_schreier_residue": r0, "trace": trace,
            "class_sizes": [len(split.unit_form.blocks), len(split.uniformizer_form.blocks)]}
    for cls, form in ((0, split.unit_form), (1, split.uniformizer_form)):
        z = ff_char2_zero(form.blocks, form.a0, rf)
        if z is not None:
            cert["isotropic_class"] = cls
            cert["residue_zero"] = z
            witness = tuple(_char2_lift(q, where, split, cls, z)) if want_witness else None
            return IsotropyVerdict(ISOTROPIC, witness, cert)
    return IsotropyVerdict(ANISOTROPIC, None, cert)


def _default_base_decider(form: DiagForm, base):
    """Status string for a residue form over the tower's base field."""
    if isinstance(base, FiniteField):
        return ISOTROPIC if ff_isotropic(form.coeffs, base) else ANISOTROPIC, {"kind": "FiniteField"}
    if isinstance(base, Rationals) or (isinstance(base, RationalFunctionField) and len(base.variables) == 1
                                       and isinstance(base.base, FiniteField)):
        from .lgp import global_isotropy_status
        iso, failing, table = global_isotropy_status(form.coeffs, base)
        return (ISOTROPIC if iso else ANISOTROPIC), {"kind": "LocalGlobal", "failing_place": failing}
    # no local-global principle to lean on (Q(t), several variables)
    return UNKNOWN, {"kind": "Unsupported", "base": str(base)}


def tower_classes(coeffs, tower: LaurentTower):
    classes = {}
    rows = []
    for i, c in enumerate(coeffs):
        exps, r = tower.embed(c)
        if r == tower.residue_field.zero:
            raise PrecisionExhausted("degenerate residue")
        parity = tuple(e % 2 for e in exps)
        classes.setdefault(parity, []).append((i, r))
        rows.append({"index": i, "exponents": list(exps), "residue": r})
    return classes, rows


def _tower_verdict(q: DiagForm, tower: LaurentTower, base_decider=None):
    if tower.residue_field.characteristic == 2:
        raise DyadicResidue("tower residue field of characteristic 2")
    decide = base_decider or _default_base_decider
    classes, rows = tower_classes(q.coeffs, tower)
    cert = {"kind": "TowerEmbedding", "tower": str(tower), "precision": tower.precision,
            "coefficients": rows, "classes": []}
    unknown = False
    for parity in sorted(classes):
        form = DiagForm(tuple(r for _, r in classes[parity]), tower.residue_field)
        status, detail = decide(form, tower.residue_field)
        cert["classes"].append({"parity": list(parity), "residue_form": list(form.coeffs),
                                "status": status, "detail": detail})
        if status == ISOTROPIC:
            cert["isotropic_class"] = list(parity)
            return IsotropyVerdict(ISOTROPIC, None, cert, "isotropic residue class")
        if status == UNKNOWN:
            unknown = True
    if unknown:
        return IsotropyVerdict(UNKNOWN, None, cert, "a residue class could not be decided over the base")
    return IsotropyVerdict(ANISOTROPIC, None, cert)


def isotropy_local(q, where, *, want_witness=True, base_decider=None) -> IsotropyVerdict:
    """Decide isotropy of a diagonal or characteristic-2 form over a complete field.

    ``where`` is a finite field, ``Reals()``, ``Qp(p)``, ``LaurentField``, a
    ``LaurentTower``, a place of Q, or a valuation of a global function field.
    """
    if isinstance(where, (RealPlace, PadicPlace)):
        where = completion_for(where, QQ)
    if isinstance(where, FiniteField):
        return _ff_verdict(q, where)[0]
    if isinstance(q, Char2Form):
        if isinstance(where, LaurentField):
            if where.characteristic != 2:
                raise WrongCharacteristic("characteristic-2 forms need a characteristic-2 field")
            return _char2_laurent_verdict(q, where, want_witness)
        raise UnsupportedField(f"characteristic-2 forms are decided over F_q and F_q((u)), not {where}")
    if q.field.characteristic == 2 or getattr(where, "characteristic", 0) == 2:
        raise WrongCharacteristic("diagonal forms are degenerate in characteristic 2")
    if isinstance(where, Reals):
        cs = [Fraction(c) for c in q.coeffs]
        pos, neg = sum(c > 0 for c in cs), sum(c < 0 for c in cs)
        cert = {"kind": "SignCount", "positive": pos, "negative": neg}
        if pos and neg:
            return IsotropyVerdict(ISOTROPIC, _real_witness(cs) if want_witness else None, cert)
        return IsotropyVerdict(ANISOTROPIC, None, cert)
    if isinstance(where, Qp) and where.p == 2:
        cs = [Fraction(c) for c in q.coeffs]
        cert = _hasse_certificate(cs, 2)
        if hasse_isotropic(cs, 2):
            return IsotropyVerdict(ISOTROPIC, _q2_witness(cs) if want_witness else None, cert)
        return IsotropyVerdict(ANISOTROPIC, None, cert)
    if isinstance(where, (Qp, LaurentField)):
        return _springer_verdict(q, where, want_witness)
    if isinstance(where, LaurentTower):
        return _tower_verdict(q, where, base_decider)
    if isinstance(where, Valuation) and not isinstance(where, CompositeValuation):
        if not isinstance(where.residue_field, FiniteField):
            return _tower_verdict(q, LaurentTower(where), base_decider)
        return _springer_verdict(q, where, want_witness=False)
    if isinstance(where, CompositeValuation):
        return _tower_verdict(q, LaurentTower(where), base_decider)
    raise UnsupportedField(f"isotropy_local does not support {where!r}")


def local_isotropic(coeffs, place, field=QQ) -> bool:
    """Status only, at a place of Q or of F_p(t)."""
    where = completion_for(place, field)
    return isotropy_local(DiagForm(tuple(coeffs), field), where, want_witness=False).isotropic


def witness_residual_value(q, witness, where):
    """Value of q(witness): exact 0 gives inf."""
    val = q.evaluate(witness)
    if isinstance(where, Qp):
        if isinstance(val, PadicNumber):
            # a truncated zero reports its absolute precision
            return val.val
        return vp(val, where.p)
    if isinstance(where, LaurentField):
        val = where(val)
        if val.is_zero():
            return val.prec
        return val.val
    if isinstance(where, Reals):
        return math.inf if val == 0 else 0
    return math.inf if val == 0 else 0


# ----------------------------------------------------------------------
# principal units


def principal_unit_isotropy_witness(eps1, eps0, v):
    """Zero of the 2-fold form of (eps1, eps0) when eps1 is a principal unit.

    Characteristic not 2: x = (sqrt(eps1), 0, 1, 0), or (sqrt(eps0), 1, 0, 0)
    when eps0 is itself a square.  Characteristic 2: (1, y, 1, 0) with y the
    Newton root of eps0 y^2 + y = eps1 - 1.
    """
    where = v
    if isinstance(v, PadicValuation) or isinstance(v, PadicPlace):
        where = Qp(v.p)
    if not isinstance(where, (Qp, LaurentField)):
        raise UnsupportedField("principal-unit witnesses are built over Q_p or F_q((u))")
    e1, e0 = _to_local(eps1, where), _to_local(eps0, where)
    if isinstance(where, LaurentField):
        m = e1 - where.one
        if not m.is_zero() and m.valuation() <= 0:
            raise HypothesisFailed("eps1 - 1 must have positive value")
        if e0.valuation() != 0:
            raise NotAUnit("eps0 must be a unit")
        if where.characteristic == 2:
            y = where.zero
            for _ in range(int(where.prec).bit_length() + 3):
                y = (m + e0 * y * y).truncate(where.prec)  # y = m - e0 y^2 in characteristic 2
            return (where.one, y, where.one, where.zero)
        if where.base.is_square(e0.leading()):
            return (laurent_sqrt(e0, where.prec), where.one, where.zero, where.zero)
        if m.is_zero():
            return (where.one, where.zero, where.one, where.zero)
        return (laurent_sqrt(e1, where.prec), where.zero, where.one, where.zero)
    e1, e0 = Fraction(e1), Fraction(e0)
    p = where.p
    if e1 != 1 and vp(e1 - 1, p) <= 0:
        raise HypothesisFailed("eps1 - 1 must have positive value")
    if vp(e0, p) != 0:
        raise NotAUnit("eps0 must be a unit")
    if e1 == 1:
        return (Fraction(1), Fraction(0), Fraction(1), Fraction(0))
    if p != 2 and where.is_square(e0):
        return (padic_sqrt(e0, p, where.prec), Fraction(1), Fraction(0), Fraction(0))
    root = padic_sqrt(e1, p, where.prec)
    if root is None:
        raise PrecisionExhausted("principal unit is not a square at this precision")
    return (root, Fraction(0), Fraction(1), Fraction(0))


def two_fold_form(eps1, eps0, field):
    return expand(PfisterPresentation((eps1, eps0), field))


# ----------------------------------------------------------------------
# universality of isotropic forms


def represent_value(q: DiagForm, target, witness):
    """Vector y with q(y) = target, shifted from a zero: y = e_i + lam * z."""
    i = next(k for k, z in enumerate(witness) if not _is_zero(z))
    ci, zi = q.coeffs[i], witness[i]
    lam = (target - ci) / (2 * ci * zi)
    y = [lam * z for z in witness]
    y[i] = y[i] + 1
    return y


def _is_zero(z):
    if isinstance(z, (int, Fraction)):
        return z == 0
    if isinstance(z, (PadicNumber, LaurentSeries)):
        return z.is_zero()
    if isinstance(z, GFElement):
        return z.v == 0
    return z == 0
