"""Places of global fields, discrete valuations and their composites.

Every rank-1 valuation exposes the same small interface:

* ``valuation(a)``      value in Z, or ``math.inf`` for 0
* ``unit_residue(a)``   residue of ``a / pi^valuation(a)`` for the chosen uniformizer
* ``residue(a)``        residue of a unit (``NotAUnit`` otherwise)
* ``lift(r)``           a preimage in the domain of a residue-field element

Composite valuations push the unit part of each stage down to the next stage,
so their values are tuples compared lexicographically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .errors import (DomainMismatch, NonIntegralCoefficients, NotAUnit, NotFound,
                     PrecisionExhausted, StageMismatch, UnsupportedField)
from .fields import QQ, Rationals, RationalFunction, RationalFunctionField, SimpleExtension
from .finite_field import FiniteField, is_prime
from .local_fields import residue_mod, unit_part, vp
from .poly import Poly

MAX_RANK = 4


# ----------------------------------------------------------------------
# places


@dataclass(frozen=True)
class RealPlace:
    def label(self):
        return "real"

    def sort_key(self):
        return (2,)

    def __str__(self):
        return "real"


@dataclass(frozen=True)
class PadicPlace:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise UnsupportedField(f"{self.p} is not prime")

    def label(self):
        return f"p:{self.p}"

    def sort_key(self):
        return (0, self.p)

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class DegreePlace:
    var: str = "t"

    def label(self):
        return "deg"

    def sort_key(self):
        return (1,)

    def __str__(self):
        return "deg"


@dataclass(frozen=True)
class PolyPlace:
    """The place of k(t) attached to a monic irreducible polynomial."""

    poly: Poly

    def label(self):
        return f"poly:{self.poly}"

    def sort_key(self):
        return (0, self.poly.sort_key())

    def __str__(self):
        return self.label()


def is_dyadic(place) -> bool:
    return isinstance(place, PadicPlace) and place.p == 2


def place_valuation(place, field):
    """Rank-1 valuation attached to a finite place of Q or of k(t)."""
    if isinstance(place, PadicPlace):
        return PadicValuation(place.p)
    if isinstance(place, PolyPlace):
        return PolyValuation(field, place.poly.var, place.poly)
    if isinstance(place, DegreePlace):
        return DegreeValuation(field, place.var)
    raise UnsupportedField(f"{place} has no discrete valuation")


def global_var(field):
    if not isinstance(field, RationalFunctionField) or len(field.variables) != 1:
        raise UnsupportedField(f"{field} is not a rational function field in one variable")
    return field.variables[0]


def finite_support(elements, field):
    """Finite places where some element has nonzero value, in canonical order."""
    if isinstance(field, Rationals):
        primes = set()
        for a in elements:
            a = Fraction(a)
            if a == 0:
                continue
            for n in (a.numerator, a.denominator):
                primes.update(factorint(abs(n)).keys())
        return [PadicPlace(p) for p in sorted(primes)]
    if isinstance(field, RationalFunctionField):
        from .factor import irreducible_factors
        var = global_var(field)
        polys = {}
        for a in elements:
            a = field(a)
            if not a:
                continue
            num, den = field.to_polys(a, var)
            for f in (num, den):
                if f.degree >= 1:
                    for g in irreducible_factors(f):
                        polys[g] = True
        return [PolyPlace(g) for g in sorted(polys, key=lambda g: g.sort_key())]
    raise UnsupportedField(f"no places for {field}")


# ----------------------------------------------------------------------
# rank-1 valuations


class Valuation:
    rank = 1
    domain = None
    residue_field = None

    def _coerce(self, a):
        dom = self.domain
        try:
            if isinstance(dom, Rationals):
                if isinstance(a, RationalFunction):
                    raise DomainMismatch(f"{a} is not in {dom}")
                return dom(a)
            if isinstance(dom, RationalFunctionField):
                if isinstance(a, RationalFunction) and a.field != dom:
                    return dom.embed(a)
                return dom(a)
            return dom(a)
        except (UnsupportedField, TypeError) as exc:
            raise DomainMismatch(f"{a!r} is not an element of {dom}") from exc

    def residue(self, a):
        a = self._coerce(a)
        v = self.valuation(a)
        if v != 0:
            raise NotAUnit(f"{a} has value {v} under {self}")
        return self.unit_residue(a)

    def split(self, a):
        """(value, unit residue)."""
        a = self._coerce(a)
        v = self.valuation(a)
        if v == math.inf:
            return v, None
        return v, self.unit_residue(a)

    def __repr__(self):
        return str(self)


class PadicValuation(Valuation):
    def __init__(self, p: int):
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        self.p = p
        self.domain = QQ
        self.residue_field = FiniteField(p)
        self.place = PadicPlace(p)

    def __eq__(self, other):
        return isinstance(other, PadicValuation) and other.p == self.p

    def __hash__(self):
        return hash(("vp", self.p))

    def __str__(self):
        return f"p:{self.p}"

    @property
    def uniformizer(self):
        return Fraction(self.p)

    def valuation(self, a):
        return vp(self._coerce(a), self.p)

    def unit_residue(self, a):
        a = self._coerce(a)
        return self.residue_field(residue_mod(unit_part(a, self.p), self.p))

    def lift(self, r):
        return Fraction(int(self.residue_field(r)))

    def candidates(self, bound):
        return [self.residue_field(i) for i in range(min(bound, self.p))]

    def truncated_split(self, a, precision):
        a = self._coerce(a)
        if a == 0:
            raise PrecisionExhausted("zero has no leading digit")
        v = vp(a, self.p)
        if abs(v) >= precision:
            raise PrecisionExhausted(f"value {v} is outside the working precision")
        u = unit_part(a, self.p)
        digits = residue_mod(u, self.p, precision)
        return v, self.residue_field(digits % self.p)


def _residue_field_for(cf, pi: Poly):
    if pi.degree == 1:
        return cf
    if isinstance(cf, FiniteField) and cf.k == 1:
        return FiniteField(cf.p, pi.degree, modulus=tuple(int(c) for c in pi.monic().coeffs))
    return SimpleExtension(cf, pi.monic(), name="r")


class PolyValuation(Valuation):
    """Order at a monic irreducible polynomial ``pi`` in ``var`` over the other variables."""

    def __init__(self, field: RationalFunctionField, var: str, pi: Poly):
        if var not in field.variables:
            raise DomainMismatch(f"{var} is not a variable of {field}")
        cf = field.coefficient_field(var)
        pi = Poly(cf, [cf(c) for c in pi.coeffs], var)
        if pi.degree < 1:
            raise UnsupportedField("a place needs a polynomial of positive degree")
        self.domain = field
        self.var = var
        self.pi = pi.monic()
        self.coefficient_field = cf
        self.residue_field = _residue_field_for(cf, self.pi)

    @classmethod
    def xadic(cls, field, var, center=0):
        cf = field.coefficient_field(var)
        return cls(field, var, Poly(cf, [-cf(center), cf.one], var))

    def __eq__(self, other):
        return (isinstance(other, PolyValuation) and other.domain == self.domain
                and other.var == self.var and other.pi == self.pi)

    def __hash__(self):
        return hash(("poly", self.domain, self.var, self.pi.coeffs))

    def __str__(self):
        if self.pi.degree == 1:
            c = -self.pi.coeff(0)
            return f"{self.var}@{c}"
        return f"poly:{self.pi}"

    @property
    def center(self):
        return -self.pi.coeff(0) if self.pi.degree == 1 else None

    @property
    def uniformizer(self):
        return self.domain.from_poly(self.pi)

    def valuation(self, a):
        a = self._coerce(a)
        if not a:
            return math.inf
        num, den = self.domain.to_polys(a, self.var)
        return num.order_at(self.pi) - den.order_at(self.pi)

    def _reduce(self, f: Poly):
        r = f % self.pi
        rf = self.residue_field
        if self.pi.degree == 1:
            return r.coeff(0)
        if isinstance(rf, FiniteField):
            return rf.from_coeffs([int(c) for c in r.coeffs])
        return rf(r)

    def unit_residue(self, a):
        a = self._coerce(a)
        if not a:
            raise NotAUnit("zero has no unit part")
        num, den = self.domain.to_polys(a, self.var)
        for _ in range(num.order_at(self.pi)):
            num = num // self.pi
        for _ in range(den.order_at(self.pi)):
            den = den // self.pi
        return self._reduce(num) / self._reduce(den)

    def lift(self, r):
        rf = self.residue_field
        if self.pi.degree == 1:
            return self.domain(self.coefficient_field(r))
        if isinstance(rf, FiniteField):
            digits = rf._digits(rf(r).v)
            return self.domain.from_poly(Poly(self.coefficient_field, digits, self.var))
        return self.domain.from_poly(Poly(self.coefficient_field, rf(r).poly.coeffs, self.var))

    def candidates(self, bound):
        return residue_candidates(self.residue_field, bound)

    def truncated_split(self, a, precision):
        """Leading digit from a pi-adic expansion truncated after ``precision`` digits."""
        a = self._coerce(a)
        if not a:
            raise PrecisionExhausted("zero has no leading digit")
        num, den = self.domain.to_polys(a, self.var)
        vn, dn = _leading_digit(num, self.pi, precision)
        vd, dd = _leading_digit(den, self.pi, precision)
        return vn - vd, self._reduce(dn) / self._reduce(dd)


def _leading_digit(f: Poly, pi: Poly, precision):
    if pi.degree == 1:
        # Taylor shift to the centre and read the lowest coefficient
        c = -pi.coeff(0)
        shifted = f.compose(Poly(f.field, [c, f.field.one], f.var))
        for i in range(min(precision, len(shifted.coeffs))):
            if shifted.coeffs[i] != f.field.zero:
                return i, Poly(f.field, [shifted.coeffs[i]], f.var)
        raise PrecisionExhausted("no nonzero digit within the working precision")
    for i in range(precision):
        q, r = divmod(f, pi)
        if not r.is_zero():
            return i, r
        f = q
    raise PrecisionExhausted("no nonzero digit within the working precision")


class DegreeValuation(Valuation):
    """The place at infinity of k(var): value deg(den) - deg(num), uniformizer 1/var."""

    def __init__(self, field: RationalFunctionField, var: str | None = None):
        var = var or field.variables[-1]
        if var not in field.variables:
            raise DomainMismatch(f"{var} is not a variable of {field}")
        self.domain = field
        self.var = var
        self.coefficient_field = field.coefficient_field(var)
        self.residue_field = self.coefficient_field
        self.place = DegreePlace(var)

    def __eq__(self, other):
        return isinstance(other, DegreeValuation) and other.domain == self.domain and other.var == self.var

    def __hash__(self):
        return hash(("deg", self.domain, self.var))

    def __str__(self):
        return "deg"

    @property
    def uniformizer(self):
        return self.domain.one / self.domain.gen(self.var)

    def valuation(self, a):
        a = self._coerce(a)
        if not a:
            return math.inf
        num, den = self.domain.to_polys(a, self.var)
        return den.degree - num.degree

    def unit_residue(self, a):
        a = self._coerce(a)
        if not a:
            raise NotAUnit("zero has no unit part")
        num, den = self.domain.to_polys(a, self.var)
        return num.lc() / den.lc()

    def lift(self, r):
        return self.domain(self.coefficient_field(r))

    def candidates(self, bound):
        return residue_candidates(self.residue_field, bound)

    def truncated_split(self, a, precision):
        v = self.valuation(a)
        if v == math.inf or abs(v) >= precision:
            raise PrecisionExhausted("value outside the working precision")
        return v, self.unit_residue(a)


class GaussValuation(Valuation):
    """Coefficient-minimum extension of a p-adic (or trivial) valuation of Q."""

    def __init__(self, base, variables):
        variables = tuple(variables)
        if not variables:
            raise UnsupportedField("the Gauss extension needs at least one variable")
        if base is not None and not isinstance(base, PadicValuation):
            if isinstance(base, PadicPlace):
                base = PadicValuation(base.p)
            else:
                raise UnsupportedField("Gauss extensions are built from a p-adic or trivial valuation")
        self.base = base
        self.variables = variables
        self.domain = RationalFunctionField(QQ, variables)
        if base is None:
            self.residue_field = self.domain
        else:
            self.residue_field = RationalFunctionField(FiniteField(base.p), variables)

    def __eq__(self, other):
        return isinstance(other, GaussValuation) and other.base == self.base and other.variables == self.variables

    def __hash__(self):
        return hash(("gauss", self.base, self.variables))

    def __str__(self):
        b = "trivial" if self.base is None else str(self.base)
        return f"gauss[{b};{','.join(self.variables)}]"

    @property
    def uniformizer(self):
        return self.domain(self.base.p) if self.base else None

    def _content_value(self, terms):
        return min(vp(c, self.base.p) for _, c in terms)

    def valuation(self, a):
        a = self._coerce(a)
        if not a:
            return math.inf
        if self.base is None:
            return 0
        return self._content_value(a.terms("num")) - self._content_value(a.terms("den"))

    def _reduce(self, terms, shift):
        p = self.base.p
        rf = self.residue_field
        acc = rf.zero
        gens = rf.gens()
        for mon, c in terms:
            c = c / Fraction(p) ** shift
            if vp(c, p) > 0:
                continue
            term = rf(residue_mod(c, p))
            for g, e in zip(gens, mon):
                term = term * g ** e
            acc = acc + term
        return acc

    def unit_residue(self, a):
        a = self._coerce(a)
        if not a:
            raise NotAUnit("zero has no unit part")
        if self.base is None:
            return a
        nt, dt = a.terms("num"), a.terms("den")
        return self._reduce(nt, self._content_value(nt)) / self._reduce(dt, self._content_value(dt))

    def lift(self, r):
        if self.base is None:
            return self.domain(r)
        out = self.domain.zero
        gens = self.domain.gens()
        for which in ("num", "den"):
            acc = self.domain.zero
            for mon, c in r.terms(which):
                term = self.domain(c.symmetric())
                for g, e in zip(gens, mon):
                    term = term * g ** e
                acc = acc + term
            out = acc if which == "num" else out / acc
        return out

    def candidates(self, bound):
        return residue_candidates(self.residue_field, bound)


def residue_candidates(field, bound):
    """Canonical enumeration of at most ``bound`` residue-field elements."""
    out = []
    if isinstance(field, FiniteField):
        for v in range(min(bound, field.order)):
            out.append(field.from_code(v))
        return out
    base = field.base if isinstance(field, (RationalFunctionField, SimpleExtension)) else field
    if isinstance(base, FiniteField):
        for v in range(min(bound, base.order)):
            out.append(field(base.from_code(v)))
        return out
    n = 0
    out.append(field(0))
    while len(out) < bound:
        n += 1
        out.append(field(n))
        if len(out) < bound:
            out.append(field(-n))
    return out


# ----------------------------------------------------------------------
# composites


class CompositeValuation(Valuation):
    """w_e o ... o w_1: apply stage 1, push the unit residue to stage 2, and so on."""

    def __init__(self, stages):
        stages = list(stages)
        if not stages:
            raise StageMismatch("a composite needs at least one stage")
        if len(stages) > MAX_RANK:
            raise StageMismatch(f"rank {len(stages)} exceeds {MAX_RANK}")
        for a, b in zip(stages, stages[1:]):
            if isinstance(a, CompositeValuation) or isinstance(b, CompositeValuation):
                raise StageMismatch("stages must be rank-1 valuations")
            if a.residue_field != b.domain:
                raise StageMismatch(f"stage {b} lives on {b.domain}, not on the residue field {a.residue_field}")
        self.stages = stages
        self.rank = len(stages)
        self.domain = stages[0].domain
        self.residue_field = stages[-1].residue_field

    def __eq__(self, other):
        return isinstance(other, CompositeValuation) and other.stages == self.stages

    def __hash__(self):
        return hash(tuple(self.stages))

    def __str__(self):
        return "comp[" + ", ".join(str(s) for s in self.stages) + "]"

    def _coerce(self, a):
        return self.stages[0]._coerce(a)

    def valuation(self, a):
        a = self._coerce(a)
        out = []
        for st in self.stages:
            v = st.valuation(a)
            if v == math.inf:
                return math.inf
            out.append(v)
            a = st.unit_residue(a)
        return tuple(out)

    def unit_residue(self, a):
        a = self._coerce(a)
        for st in self.stages:
            a = st.unit_residue(a)
        return a

    def residue(self, a):
        v = self.valuation(a)
        if v == math.inf or any(v):
            raise NotAUnit(f"{a} has value {v} under {self}")
        return self.unit_residue(a)

    def lift(self, r):
        for st in reversed(self.stages):
            r = st.lift(r)
        return r

    def candidates(self, bound):
        return self.stages[-1].candidates(bound)

    def is_positive(self, value):
        return value != math.inf and value > (0,) * self.rank


def compose_vals(stages):
    """Lexicographic composite of rank-1 stages; a single stage passes through."""
    stages = list(stages)
    if len(stages) == 1 and not isinstance(stages[0], CompositeValuation):
        return stages[0]
    return CompositeValuation(stages)


def gauss_extend(place, variables):
    """Gauss valuation on Q(variables) from a p-adic place (or None for trivial)."""
    base = None
    if place is not None:
        base = place if isinstance(place, PadicValuation) else PadicValuation(place.p)
    return GaussValuation(base, variables)


def val_eval(v, a):
    """Value of ``a``: an int (rank 1), a tuple (composite) or ``math.inf`` for zero."""
    return v.valuation(a)


def residue_of(v, a):
    return v.residue(a)


def _zero_value(v):
    return (0,) * v.rank if isinstance(v, CompositeValuation) else 0


def _positive(v, value):
    if value == math.inf:
        return True
    return value > _zero_value(v)


# ----------------------------------------------------------------------
# Hensel witnesses


@dataclass
class HenselReport:
    valuation: str
    candidate_index: int
    value_at_root: object
    derivative_value: object
    residue: str

    def as_dict(self):
        return {
            "valuation": self.valuation,
            "candidate_index": self.candidate_index,
            "value_at_root": _jsonable_value(self.value_at_root),
            "derivative_value": _jsonable_value(self.derivative_value),
            "residue": self.residue,
        }


def _jsonable_value(v):
    if v == math.inf:
        return "inf"
    if isinstance(v, tuple):
        return list(v)
    return v


def hensel_witness(minpoly: Poly, v, search_bound: int = 64):
    """Find x with v(minpoly(x)) > 0 and v(minpoly'(x)) = 0.

    The search runs over canonical lifts of residue representatives.  NotFound
    only means no witness lies among the first ``search_bound`` candidates.
    """
    dom = v.domain
    coeffs = [v._coerce(c) for c in minpoly.coeffs]
    if not coeffs or coeffs[-1] != dom(1):
        raise NonIntegralCoefficients("the polynomial must be monic")
    for c in coeffs:
        if c and not _nonneg(v, v.valuation(c)):
            raise NonIntegralCoefficients(f"coefficient {c} is not integral at {v}")
    f = Poly(dom, coeffs, minpoly.var)
    df = f.derivative()
    zero = _zero_value(v)
    for idx, r in enumerate(v.candidates(search_bound)):
        x = v.lift(r)
        fx = f(x)
        vf = v.valuation(fx)
        if not _positive(v, vf):
            continue
        dfx = df(x)
        vd = v.valuation(dfx)
        if vd == zero:
            return x, HenselReport(str(v), idx, vf, vd, str(r))
    raise NotFound(f"no Hensel witness for {minpoly} at {v} among {search_bound} candidates")


def _nonneg(v, value):
    return value == math.inf or value >= _zero_value(v)


# ----------------------------------------------------------------------
# Laurent towers


class LaurentTower:
    """An iterated Laurent field k((pi_e))...((pi_1)) receiving a field via a composite.

    Elements are embedded by truncated expansion stage by stage: the leading
    digit of each stage feeds the next one.  Exponents are listed outer to
    inner, i.e. in stage order.
    """

    def __init__(self, valuation, precision: int = 16, names=None):
        stages = valuation.stages if isinstance(valuation, CompositeValuation) else [valuation]
        self.valuation = valuation
        self.stages = stages
        self.precision = precision
        self.residue_field = stages[-1].residue_field
        self.names = tuple(names) if names else tuple(_stage_name(s) for s in stages)

    def __str__(self):
        out = str(self.residue_field)
        for name in reversed(self.names):
            out += f"(({name}))"
        return out

    __repr__ = __str__

    @property
    def characteristic(self):
        return self.residue_field.characteristic

    def embed(self, a):
        """(exponent tuple, residue of the unit part in the base field)."""
        exps = []
        for st in self.stages:
            e, a = st.truncated_split(a, self.precision)
            exps.append(e)
        return tuple(exps), a

    def is_square(self, a) -> bool:
        exps, r = self.embed(a)
        if any(e % 2 for e in exps):
            return False
        base = self.residue_field
        if isinstance(base, FiniteField):
            return base.is_square(r)
        if isinstance(base, Rationals):
            return base.is_square(r)
        raise UnsupportedField(f"square classes of {base} are not decided here")

    def refine(self, factor: int = 2) -> "LaurentTower":
        return LaurentTower(self.valuation, self.precision * factor, self.names)


def _stage_name(st):
    if isinstance(st, PolyValuation):
        return str(Poly(st.pi.field, st.pi.coeffs, st.var))
    if isinstance(st, DegreeValuation):
        return f"1/{st.var}"
    if isinstance(st, PadicValuation):
        return str(st.p)
    return str(st)
