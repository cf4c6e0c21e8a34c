"""Nice 2-fold tails: the local check and a constructive search.

A pair (a1, a0) over k1 = Q or F_p(t) is nice when its 2-fold form is locally
isotropic at every real or dyadic place and at every place where a0 is not a
unit or a1 has a pole.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from sympy import primerange

from .errors import (BoundExceeded, SearchExhausted, UnsupportedField, WrongCharacteristic,
                     ZeroInput)
from .factor import is_irreducible, splits_into_distinct_linears
from .fields import QQ, Rationals, RationalFunctionField
from .finite_field import FiniteField
from .hilbert import hilbert_symbol
from .local_fields import residue_mod, vp
from .poly import Poly
from .quadforms import PfisterPresentation, completion_for, isotropy_local, pfister_expand
from .valuations import (DegreePlace, PadicPlace, PolyPlace, RealPlace, finite_support, global_var,
                         place_valuation)

DEFAULT_SPLIT_BOUND = 500


@dataclass
class NiceCertificate:
    pair: tuple
    field: object
    checked: list = dc_field(default_factory=list)
    conclusion: bool = False
    square_class_tests: dict = dc_field(default_factory=dict)

    @property
    def nice(self) -> bool:
        return self.conclusion

    def as_dict(self):
        return {"pair": list(self.pair), "field": str(self.field), "checked": self.checked,
                "conclusion": self.conclusion, "square_class_tests": self.square_class_tests}


@dataclass(frozen=True)
class ExtensionDescriptor:
    """k1(y) / (minpoly(y)); separable and irreducible, degree at most 4."""

    base: object
    minpoly: Poly
    label: str = ""

    def __post_init__(self):
        f = self.minpoly
        if f.degree < 1 or f.degree > 4:
            raise UnsupportedField("extension degree must be between 1 and 4")
        if f.degree > 1 and not is_irreducible(f):
            raise UnsupportedField(f"{f} is not irreducible over {self.base}")
        g = f.gcd(f.derivative()) if not f.derivative().is_zero() else f
        if g.degree > 0:
            raise UnsupportedField(f"{f} is not separable")
        if not self.label:
            object.__setattr__(self, "label", f"{self.base}[{f.var}]/({f})")

    @classmethod
    def quadratic(cls, base, d, var="y"):
        """base(sqrt(d))."""
        return cls(base, Poly(base, [-base(d), base.zero, base.one], var))

    @classmethod
    def trivial(cls, base, var="y"):
        return cls(base, Poly(base, [base.zero, base.one], var), f"{base}")

    @property
    def degree(self):
        return self.minpoly.degree

    def __str__(self):
        return self.label


# ----------------------------------------------------------------------
# the nice predicate


def _mandated_places(a1, a0, field):
    """(place, reason) pairs that the definition requires to be checked."""
    out = []
    if isinstance(field, Rationals):
        support = finite_support([a1, a0], field)
        places = sorted(set(support) | {PadicPlace(2)}, key=lambda pl: pl.sort_key())
        for pl in places:
            reasons = []
            if pl.p == 2:
                reasons.append("dyadic")
            if vp(a0, pl.p) != 0:
                reasons.append("v(a0)!=0")
            if vp(a1, pl.p) < 0:
                reasons.append("v(a1)<0")
            if reasons:
                out.append((pl, ",".join(reasons)))
        out.append((RealPlace(), "real"))
        return out
    places = finite_support([a1, a0], field) + [DegreePlace(global_var(field))]
    for pl in places:
        v = place_valuation(pl, field)
        reasons = []
        if v.valuation(a0) != 0:
            reasons.append("v(a0)!=0")
        if v.valuation(a1) < 0:
            reasons.append("v(a1)<0")
        if reasons:
            out.append((pl, ",".join(reasons)))
    return out


def nice_check(a1, a0, field=None) -> NiceCertificate:
    """Check the nice condition place by place; symbols and local verdicts must agree."""
    field = field or getattr(a1, "field", None) or getattr(a0, "field", None) or QQ
    if field.characteristic == 2:
        raise WrongCharacteristic("nice checks are implemented in odd characteristic")
    if not isinstance(field, (Rationals, RationalFunctionField)):
        raise UnsupportedField(f"nice checks run over Q or F_p(t), not {field}")
    a1, a0 = field(a1), field(a0)
    if a1 == field.zero or a0 == field.zero:
        raise ZeroInput("nice pairs have nonzero entries")
    form = pfister_expand(PfisterPresentation((a1, a0), field))
    cert = NiceCertificate((a1, a0), field)
    ok = True
    for pl, reason in _mandated_places(a1, a0, field):
        verdict = isotropy_local(form, completion_for(pl, field), want_witness=False)
        symbol = hilbert_symbol(a1, a0, pl, field)
        if (symbol == 1) != verdict.isotropic:
            raise AssertionError(f"symbol and local verdict disagree at {pl.label()}")
        cert.checked.append({"place": pl, "reason": reason, "status": verdict.status, "symbol": symbol})
        ok = ok and verdict.isotropic
    cert.conclusion = ok
    return cert


# ----------------------------------------------------------------------
# split places


def _monic_irreducibles(F: FiniteField, var):
    """Monic irreducible polynomials over F_p in canonical order (degree, then coefficients)."""
    deg = 1
    while True:
        batch = []
        for tail in itertools.product(range(F.p), repeat=deg):
            f = Poly(F, [F(c) for c in reversed(tail)] + [F.one], var)
            if deg == 1 or is_irreducible(f):
                batch.append(f)
        batch.sort(key=lambda g: g.sort_key())
        yield from batch
        deg += 1


def _reduce_at_prime(f: Poly, p: int):
    """Reduction of a polynomial over Q modulo p, or None when not p-integral."""
    f = f.monic()
    F = FiniteField(p)
    cs = []
    for c in f.coeffs:
        if vp(c, p) < 0:
            return None
        cs.append(F(residue_mod(c, p)) if c != 0 else F.zero)
    return Poly(F, cs, f.var)


def _reduce_at_place(f: Poly, v):
    f = f.monic()
    cs = []
    rf = v.residue_field
    for c in f.coeffs:
        if c == f.field.zero:
            cs.append(rf.zero)
            continue
        w = v.valuation(c)
        if w < 0:
            return None
        cs.append(rf.zero if w > 0 else v.unit_residue(c))
    return Poly(rf, cs, f.var)


def split_places(ext: ExtensionDescriptor, exclude=(), bound: int = DEFAULT_SPLIT_BOUND):
    """Finite places outside ``exclude`` where the extension splits completely, in canonical order."""
    exclude = set(exclude)
    base = ext.base
    if isinstance(base, Rationals):
        for p in primerange(2, bound + 1):
            pl = PadicPlace(int(p))
            if pl in exclude:
                continue
            red = _reduce_at_prime(ext.minpoly, int(p))
            if red is not None and red.degree == ext.degree and splits_into_distinct_linears(red):
                yield pl
        return
    if isinstance(base, RationalFunctionField):
        var = global_var(base)
        F = base.coefficient_field(var)
        for count, g in enumerate(_monic_irreducibles(F, var)):
            if count >= bound:
                return
            pl = PolyPlace(g)
            if pl in exclude:
                continue
            red = _reduce_at_place(ext.minpoly, place_valuation(pl, base))
            if red is not None and red.degree == ext.degree and splits_into_distinct_linears(red):
                yield pl
        return
    raise UnsupportedField(f"split places over {base} are not supported")


def split_place_search(ext: ExtensionDescriptor, exclude=(), bound: int = DEFAULT_SPLIT_BOUND):
    """Smallest finite place outside ``exclude`` that splits completely in ``ext``."""
    for pl in split_places(ext, exclude, bound):
        return pl
    raise BoundExceeded(f"no split place of {ext} within bound {bound}")


# ----------------------------------------------------------------------
# construction


@dataclass
class NiceResult:
    a0: object
    a1: object
    certificate: NiceCertificate
    split_place: object
    anisotropy: object

    def as_dict(self):
        return {"a0": self.a0, "a1": self.a1, "certificate": self.certificate,
                "split_place": self.split_place, "anisotropy_at_split_place": self.anisotropy}


def _verify(a1, a0, field, w, P, ext, tests):
    cert = nice_check(a1, a0, field)
    cert.square_class_tests = tests
    form = pfister_expand(PfisterPresentation((a1, a0), field))
    verdict = isotropy_local(form, completion_for(w, field), want_witness=False)
    units = all(place_valuation(pl, field).valuation(a) == 0
                for pl in P for a in (a0, a1)) if not isinstance(field, Rationals) else \
        all(vp(a, pl.p) == 0 for pl in P for a in (a0, a1))
    problems = []
    if not cert.conclusion:
        problems.append("nice check failed at " + ",".join(
            r["place"].label() for r in cert.checked if r["status"] != "isotropic"))
    if not verdict.anisotropic:
        problems.append(f"isotropic at the split place {w.label()}")
    if not units:
        problems.append("not a unit pair on P")
    return cert, verdict, problems


def _q_construct(ext, P):
    P = set(P)
    w = split_place_search(ext, P | {PadicPlace(2)})
    p = w.p
    Fw = FiniteField(p)
    bad = {pl.p for pl in P} | {2, p}
    a0 = None
    for n in itertools.count(3, 2):
        if any(n % q == 0 for q in bad):
            continue
        if not Fw.is_square(Fw(n)):
            a0 = Fraction(n)
            break
    # CRT seed: a1 = 1 mod 8, 1 mod each odd prime of a0 and of P, p mod p^2
    mods = [(1, 8), (p, p * p)]
    for q in sorted(set(finite_support([a0], QQ)) | {pl for pl in P if pl.p != 2}, key=lambda pl: pl.p):
        if q.p not in (2, p):
            mods.append((1, q.p))
    seed, M = 0, 1
    for r, m in mods:
        # combine x = seed mod M with x = r mod m
        k = ((r - seed) * pow(M, -1, m)) % m
        seed, M = seed + M * k, M * m
    tests = {"a0_nonsquare_at_w": True,
             "artin_schreier_irreducible_at_w": not Fw.is_square(Fw(1 + 4 * int(a0))),
             "enforced": "a0_nonsquare_at_w"}
    last = []
    for k in range(8):
        a1 = Fraction(seed + k * M)
        cert, verdict, problems = _verify(a1, a0, QQ, w, P, ext, tests)
        if not problems:
            return NiceResult(a0, a1, cert, w, verdict)
        last = problems
    raise SearchExhausted("; ".join(last))


def _ff_construct(ext, P, bound):
    field = ext.base
    var = global_var(field)
    F = field.coefficient_field(var)
    if F.characteristic == 2:
        raise UnsupportedField("characteristic-2 construction is not implemented")
    P = set(P)
    c = F.first_nonsquare
    a0 = field(c)
    deg_in_P = DegreePlace(var) in P
    finite_P = [pl.poly for pl in P if isinstance(pl, PolyPlace)]
    last = ["no split place of odd degree"]
    for w in split_places(ext, P, bound):
        if w.poly.degree % 2 == 0:
            # a constant nonsquare becomes a square in an even-degree residue field
            continue
        tests = {"a0_nonsquare_at_w": True,
                 "artin_schreier_irreducible_at_w": not F.is_square(F(1) + F(4) * c),
                 "enforced": "a0_nonsquare_at_w"}
        avoid = finite_P + [w.poly]
        aux = None
        if deg_in_P:
            aux = next(g for g in _monic_irreducibles(F, var)
                       if g.degree == 2 and all(g != h for h in avoid))
        for m in itertools.islice(_multipliers(F, var, avoid), 64):
            num = w.poly * m
            if deg_in_P:
                if num.degree % 2:
                    continue
                a1 = field.from_poly(num) / field.from_poly(aux) ** (num.degree // 2)
            else:
                if num.degree % 2:
                    continue
                a1 = field.from_poly(num)
            cert, verdict, problems = _verify(a1, a0, field, w, P, ext, tests)
            if not problems:
                return NiceResult(a0, a1, cert, w, verdict)
            last = problems
    raise SearchExhausted("; ".join(last))


def _multipliers(F, var, avoid):
    """Monic polynomials coprime to ``avoid``, by degree."""
    yield Poly(F, [F.one], var)
    for deg in itertools.count(1):
        batch = []
        for tail in itertools.product(range(F.p), repeat=deg):
            m = Poly(F, [F(x) for x in reversed(tail)] + [F.one], var)
            if all(m.gcd(h).degree == 0 for h in avoid):
                batch.append(m)
        batch.sort(key=lambda g: g.sort_key())
        yield from batch


def nice_construct(ext: ExtensionDescriptor, P=(), bound: int = DEFAULT_SPLIT_BOUND) -> NiceResult:
    """A nice pair (a1, a0) that stays anisotropic over ``ext``, unit on the places ``P``.

    Anisotropy over the extension follows from anisotropy at a place that
    splits completely in it.
    """
    if isinstance(ext.base, Rationals):
        return _q_construct(ext, P)
    if isinstance(ext.base, RationalFunctionField):
        return _ff_construct(ext, P, bound)
    raise UnsupportedField(f"nice_construct over {ext.base} is not supported")
