"""The ideal / stabilizer recipe for a prime divisor of k(x), and the subring R_T.

For a_d with odd positive value at P the ideal is the set of tau with
v_P(tau^2) > v_P(a_d); its stabilizer is compared against the valuation ring
of P on samples.  R_T is the integral closure of A[T] with A = Z or F_p.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import EvenValue, HypothesisFailed, MismatchWitness, SearchExhausted, UnsupportedField
from .factor import irreducible_factors
from .fields import RationalFunctionField
from .finite_field import FiniteField
from .valuations import (CompositeValuation, DegreeValuation, PadicPlace, PadicValuation, PolyValuation,
                         compose_vals, gauss_extend, val_eval)

CENTERS = (1, -1, 2, -2, 3, -3, 0)


# ----------------------------------------------------------------------
# ideal and stabilizer


@dataclass
class RecipeIdeal:
    valuation: object
    a_d: object
    threshold: int  # tau is in the ideal iff v(tau) >= threshold
    classification: list = dc_field(default_factory=list)

    def contains(self, tau) -> bool:
        v = val_eval(self.valuation, tau)
        return v == math.inf or 2 * v > val_eval(self.valuation, self.a_d)

    __call__ = contains

    @property
    def generator(self):
        return self.valuation.uniformizer ** self.threshold

    def as_dict(self):
        return {"valuation": str(self.valuation), "a_d": self.a_d, "threshold": self.threshold,
                "generator": self.generator, "classification": self.classification}


def recipe_ideal(vref, a_d, samples=()) -> RecipeIdeal:
    """Semantic ideal {tau : v(tau^2) > v(a_d)} with a classification of ``samples``."""
    vd = val_eval(vref, a_d)
    if vd <= 0:
        raise HypothesisFailed(f"v(a_d) = {vd} is not positive")
    if vd % 2 == 0:
        raise EvenValue(f"v(a_d) = {vd} is even")
    ideal = RecipeIdeal(vref, a_d, (vd + 1) // 2)
    ideal.classification = [{"sample": s, "member": ideal.contains(s)} for s in samples]
    return ideal


@dataclass
class StabilizerReport:
    members: list
    trichotomy: list
    soundness: str = ("the ideal equals g*O for g = uniformizer^threshold, so a*ideal lies in the "
                      "ideal iff a*g does")

    def as_dict(self):
        return {"members": self.members, "trichotomy": self.trichotomy, "soundness": self.soundness}


def _category(in_a, in_inv):
    if in_a and in_inv:
        return "unit"
    if in_a:
        return "element only"
    if in_inv:
        return "inverse only"
    return "neither"


def recipe_stabilizer(ideal: RecipeIdeal, samples) -> StabilizerReport:
    """Decide a*ideal within ideal for each sample by testing the generator, plus trichotomy."""
    g = ideal.generator
    members, tri = [], []
    for a in samples:
        in_a = ideal.contains(a * g)
        members.append({"sample": a, "member": in_a})
        if a:
            in_inv = ideal.contains(g / a)
            tri.append({"sample": a, "category": _category(in_a, in_inv)})
    return StabilizerReport(members, tri)


def _reference_member(vref, a) -> bool:
    """Membership in the valuation ring of P by divisibility of the reduced denominator."""
    K = vref.domain
    a = K(a)
    if not a:
        return True
    num, den = K.to_polys(a, vref.var)
    if isinstance(vref, PolyValuation):
        return not vref.pi.divides(den)
    if isinstance(vref, DegreeValuation):
        return num.degree <= den.degree
    raise UnsupportedField(f"no reference ring for {vref}")


@dataclass
class RecipeResult:
    ideal: RecipeIdeal
    stabilizer: StabilizerReport
    comparison: list
    passed: bool
    note: str = ("the ideal is the valuation-side description; the Pfister-side quantifier over "
                 "all theta is checked only on samples by keyprop_check")

    def as_dict(self):
        return {"ideal": self.ideal, "stabilizer": self.stabilizer, "comparison": self.comparison,
                "passed": self.passed, "note": self.note}


def recipe_verify(vref, a_d, samples) -> RecipeResult:
    """O_ideal = O_P on the samples, plus valuation-ring trichotomy; MismatchWitness otherwise."""
    samples = list(samples)
    ideal = recipe_ideal(vref, a_d)
    stab = recipe_stabilizer(ideal, samples)
    comparison = []
    for row in stab.members:
        ref = _reference_member(vref, row["sample"])
        comparison.append({"sample": row["sample"], "stabilizer": row["member"], "reference": ref})
        if ref != row["member"]:
            raise MismatchWitness(f"{row['sample']} is in exactly one of the two rings", row["sample"])
    for row in stab.trichotomy:
        if row["category"] == "neither":
            raise MismatchWitness(f"neither {row['sample']} nor its inverse is in the ring", row["sample"])
    return RecipeResult(ideal, stab, comparison, True)


def recipe_samples(field, pi_elem, n, seed=0, degree=2, height=5):
    """Random elements times powers of pi_elem, so that every value class shows up."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        r = field.random_element(rng, degree, height)
        e = rng.randint(-3, 3)
        out.append(r * pi_elem ** e)
    return out


# ----------------------------------------------------------------------
# the subring R_T


@dataclass
class RtResult:
    member: bool
    certificate: object

    def as_dict(self):
        return {"member": self.member, "certificate": self.certificate}


def _ring_coefficient_ok(c, field) -> bool:
    if isinstance(field.base, FiniteField):
        return True
    return Fraction(c).denominator == 1


def rt_member(f, T=None) -> RtResult:
    """Is f a polynomial in T with coefficients in Z (or F_p)?"""
    K = f.field
    if T is not None and set(T) != set(K.variables):
        raise UnsupportedField("T must be the full variable set of the field")
    if f.den.is_ground:
        terms = f.terms("num")
        lc = K._domain_to_base(f.den.LC)
        terms = [(m, c / lc) for m, c in terms]
        if all(_ring_coefficient_ok(c, K) for _, c in terms):
            return RtResult(True, {"representation": [[list(m), c] for m, c in terms]})
    v = rt_witness(f, T)
    return RtResult(False, {"witness": str(v), "value": list(val_eval(v, f)) if isinstance(v, CompositeValuation)
                            else val_eval(v, f)})


def _centers_for(field):
    if isinstance(field.base, FiniteField):
        p = field.base.p
        seen = []
        for c in CENTERS:
            if c % p not in [s % p for s in seen]:
                seen.append(c)
        return seen
    return list(CENTERS)


def _nonneg(v, value):
    if value == math.inf:
        return True
    if isinstance(value, tuple):
        return value >= (0,) * len(value)
    return value >= 0


def _negative(value):
    if value == math.inf:
        return False
    if isinstance(value, tuple):
        return value < (0,) * len(value)
    return value < 0


def _center_stages(field, names, centers):
    stages = []
    R = field
    for name, c in zip(names, centers):
        st = PolyValuation.xadic(R, name, c)
        stages.append(st)
        R = st.residue_field
    return stages, R


def _verified(v, f, field):
    value = val_eval(v, f)
    if not _negative(value):
        return False
    return all(_nonneg(v, val_eval(v, field.gen(x))) for x in field.variables)


def rt_witness(f, T=None):
    """A composite valuation w with w(T) >= 0 and w(f) < 0, for f outside R_T."""
    K = f.field
    names = list(K.variables)
    centers = _centers_for(K)
    if f.den.is_ground:
        if isinstance(K.base, FiniteField):
            raise HypothesisFailed(f"{f} is a polynomial over F_p, hence in R_T")
        # offending prime: the largest pole order among coefficients
        lc = K._domain_to_base(f.den.LC)
        coeffs = [c / lc for _, c in f.terms("num")]
        primes = sorted({p for c in coeffs for p in _primes_of(Fraction(c).denominator)})
        if not primes:
            raise HypothesisFailed(f"{f} has integral coefficients")
        for p in primes:
            for cs in itertools.product(centers, repeat=len(names)):
                stages, R = _center_stages(K, names, cs)
                v = compose_vals(stages + [PadicValuation(p)])
                if _verified(v, f, K):
                    return v
        # integer-valued at every center (e.g. (x^2 + x)/2): the Gauss extension of p
        # still sees the coefficient pole, and the centers keep the rank visible
        for p in primes:
            gauss = gauss_extend(PadicPlace(p), names)
            stages, _ = _center_stages(gauss.residue_field, names, [1] * len(names))
            v = CompositeValuation([gauss] + stages)
            if _verified(v, f, K):
                return v
        raise SearchExhausted(f"no center makes the leading part of {f} a unit")
    for y in names:
        num, den = K.to_polys(f, y)
        if den.degree < 1:
            continue
        others = [x for x in names if x != y]
        for cs in itertools.product(centers, repeat=len(others)):
            stages, R = _center_stages(K, others, cs)
            spec = f
            for st in stages:
                if st.valuation(spec) != 0:
                    spec = None
                    break
                spec = st.unit_residue(spec)
            if spec is None:
                # a pole (or zero) already at a center stage
                v = compose_vals(stages) if stages else None
                if v is not None and _verified(v, f, K):
                    return v
                continue
            _, sden = R.to_polys(spec, y) if isinstance(R, RationalFunctionField) else (None, None)
            if sden is None or sden.degree < 1:
                continue
            for g in irreducible_factors(sden):
                v = compose_vals(stages + [PolyValuation(R, y, g)])
                if _verified(v, f, K):
                    return v
    raise SearchExhausted(f"no witness found for {f}")


def _primes_of(n: int):
    from sympy import factorint
    return list(factorint(abs(n)).keys()) if abs(n) > 1 else []
