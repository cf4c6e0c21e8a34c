"""Hilbert symbols over Q and F_p(t) (p odd), and the places where they can be -1."""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedField, WrongCharacteristic, ZeroInput
from .fields import QQ, Rationals, RationalFunctionField
from .finite_field import FiniteField
from .local_fields import residue_mod, unit_part, vp
from .valuations import (DegreePlace, PadicPlace, PolyPlace, RealPlace, finite_support,
                         global_var, place_valuation)


def _quadratic_character(field, c) -> int:
    if isinstance(field, FiniteField):
        return field.quadratic_character(field(c))
    raise UnsupportedField(f"no quadratic character on {field}")


def _dyadic_symbol(a: Fraction, b: Fraction) -> int:
    al, be = vp(a, 2), vp(b, 2)
    u = residue_mod(unit_part(a, 2), 2, 3)
    w = residue_mod(unit_part(b, 2), 2, 3)

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    e = eps(u) * eps(w) + al * omega(w) + be * omega(u)
    return -1 if e % 2 else 1


def hilbert_symbol(a, b, at, field=None) -> int:
    """(a, b) at a place of Q or of F_p(t), p odd.  +1 iff z^2 = a x^2 + b y^2 is isotropic."""
    if field is None:
        field = getattr(a, "field", None) or getattr(b, "field", None) or QQ
    a, b = field(a), field(b)
    if a == field.zero or b == field.zero:
        raise ZeroInput("Hilbert symbols need nonzero arguments")
    if isinstance(field, Rationals):
        a, b = Fraction(a), Fraction(b)
        if isinstance(at, RealPlace):
            return -1 if a < 0 and b < 0 else 1
        if not isinstance(at, PadicPlace):
            raise UnsupportedField(f"{at} is not a place of Q")
        if at.p == 2:
            return _dyadic_symbol(a, b)
    elif isinstance(field, RationalFunctionField):
        if field.characteristic == 2:
            raise WrongCharacteristic("the tame symbol needs odd characteristic")
        if not isinstance(at, (PolyPlace, DegreePlace)):
            raise UnsupportedField(f"{at} is not a place of {field}")
    else:
        raise UnsupportedField(f"Hilbert symbols over {field} are not supported")
    # tame symbol: chi((-1)^(al*be) * ua^be / ub^al)
    v = place_valuation(at, field)
    al, be = v.valuation(a), v.valuation(b)
    ua, ub = v.unit_residue(a), v.unit_residue(b)
    rf = v.residue_field
    val = rf(-1 if (al * be) % 2 else 1) * ua ** be / ub ** al
    return _quadratic_character(rf, val)


def infinite_places(field):
    if isinstance(field, Rationals):
        return [RealPlace()]
    if isinstance(field, RationalFunctionField):
        return [DegreePlace(global_var(field))]
    raise UnsupportedField(f"no places for {field}")


def relevant_place_list(coeffs, field):
    """(place, reason) pairs: coefficient support, dyadic place, infinite place."""
    out = []
    support = finite_support(coeffs, field)
    if isinstance(field, Rationals):
        places = sorted(set(support) | {PadicPlace(2)}, key=lambda pl: pl.sort_key())
        for pl in places:
            out.append((pl, "coefficient support" if pl in support else "dyadic"))
        out.append((RealPlace(), "real"))
        return out
    if field.characteristic == 2:
        raise WrongCharacteristic("place sets are computed in odd characteristic")
    for pl in support:
        out.append((pl, "coefficient support"))
    out.append((DegreePlace(global_var(field)), "degree place"))
    return out


def e_invariant_2fold(a1, a0, over=None):
    """Local symbols (a1, a0)_v on the relevant places of the 2-fold form.

    The 2-fold form is isotropic over the global field iff every entry is +1.
    Returns a list of ``(place, symbol)`` in canonical place order.
    """
    field = over or getattr(a1, "field", None) or getattr(a0, "field", None) or QQ
    a1, a0 = field(a1), field(a0)
    coeffs = [field.one, -a0, -a1, a1 * a0]
    return [(pl, hilbert_symbol(a1, a0, pl, field)) for pl, _ in relevant_place_list(coeffs, field)]


def product_formula_check(a, b, field=None) -> bool:
    """Product of the local symbols over all places where they can be -1 is +1."""
    field = field or getattr(a, "field", None) or QQ
    places = relevant_place_list([field(a), field(b)], field)
    prod = 1
    for pl, _ in places:
        prod *= hilbert_symbol(a, b, pl, field)
    return prod == 1
