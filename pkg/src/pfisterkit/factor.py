"""Polynomial factorisation at desk scale.

Over finite fields the factorisation is done here (squarefree split, distinct
degree, then equal degree by Cantor-Zassenhaus).  Over Q and over rational
function fields the work is delegated to sympy's multivariate factoriser after
clearing denominators.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import HeightExceeded, UnsupportedField, ZeroInput
from .fields import QQ, Rationals, RationalFunctionField
from .finite_field import FiniteField
from .poly import Poly

Q_DEGREE_CAP = 8
Q_HEIGHT_CAP = 10 ** 9


def gf_factor(f: Poly):
    """Irreducible factorisation of a nonzero polynomial over F_q or Q.

    Returns a list of ``(monic irreducible factor, multiplicity)`` ordered by
    degree, then by coefficients (symmetric representatives, top down).  The
    leading coefficient of ``f`` is the unit left over; see ``factor_with_unit``.
    """
    if not isinstance(f.field, (FiniteField, Rationals)):
        raise UnsupportedField(f"gf_factor works over F_q or Q, not {f.field}")
    return factor_with_unit(f)[1]


def factor_with_unit(f: Poly):
    if f.is_zero():
        raise ZeroInput("cannot factor the zero polynomial")
    field = f.field
    if isinstance(field, FiniteField):
        facs = _factor_fq(f)
    elif isinstance(field, Rationals):
        facs = _factor_q(f)
    elif isinstance(field, RationalFunctionField):
        facs = _factor_rff(f)
    else:
        raise UnsupportedField(f"no factoriser for {field}")
    facs.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    return f.lc(), facs


def irreducible_factors(f: Poly):
    return [g for g, _ in factor_with_unit(f)[1]]


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    facs = factor_with_unit(f)[1]
    return len(facs) == 1 and facs[0][1] == 1


def splits_into_distinct_linears(f: Poly) -> bool:
    facs = factor_with_unit(f)[1]
    return all(g.degree == 1 and m == 1 for g, m in facs)


def roots(f: Poly):
    """Roots in the coefficient field, in factor order."""
    out = []
    for g, _ in factor_with_unit(f)[1]:
        if g.degree == 1:
            out.append(-g.coeff(0))
    return out


# ----------------------------------------------------------------------
# finite fields


def _pth_root(c, field: FiniteField):
    return c ** (field.order // field.p)


def _squarefree(f: Poly):
    """Pairs (squarefree g, multiplicity) with f = lc * prod g^m."""
    field = f.field
    p = field.p
    out = []
    if f.degree < 1:
        return out
    f = f.monic()
    i = 1
    df = f.derivative()
    if df.is_zero():
        root = Poly(field, [_pth_root(f.coeff(j * p), field) for j in range(f.degree // p + 1)], f.var)
        return [(g, m * p) for g, m in _squarefree(root)]
    c = f.gcd(df)
    w = f // c
    while w.degree > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        root = Poly(field, [_pth_root(c.coeff(j * p), field) for j in range(c.degree // p + 1)], f.var)
        out.extend((g, m * p) for g, m in _squarefree(root))
    return out


def _ddf(f: Poly):
    """Distinct-degree split of a monic squarefree polynomial."""
    field = f.field
    q = field.order
    x = Poly.gen(field, f.var)
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _edf(f: Poly, d: int, rng):
    """Split a product of distinct degree-``d`` irreducibles (Cantor-Zassenhaus)."""
    if f.degree == d:
        return [f.monic()]
    field = f.field
    q = field.order
    while True:
        a = Poly(field, [field.random_element(rng) for _ in range(f.degree)], f.var)
        if a.degree < 1:
            continue
        if field.p == 2:
            # trace map a + a^2 + ... + a^(2^(kd-1))
            t = a % f
            acc = t
            for _ in range(field.k * d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((q ** d - 1) // 2, f) - 1
        g = f.gcd(b)
        if 0 < g.degree < f.degree:
            return _edf(g, d, rng) + _edf(f // g, d, rng)


def _factor_fq(f: Poly):
    # fixed seed: the result is unique anyway, this only fixes the work done
    rng = random.Random(0x5eed)
    out = {}
    for g, m in _squarefree(f):
        for part, d in _ddf(g):
            for h in _edf(part, d, rng):
                out[h] = out.get(h, 0) + m
    return list(out.items())


# ----------------------------------------------------------------------
# Q and rational function fields (sympy)


def _factor_q(f: Poly):
    from sympy import QQ as SQQ
    from sympy.polys.rings import ring

    if f.degree > Q_DEGREE_CAP:
        raise HeightExceeded(f"degree {f.degree} exceeds the cap {Q_DEGREE_CAP}")
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    if max(abs(c) for c in ints) > Q_HEIGHT_CAP:
        raise HeightExceeded("coefficient height exceeds the cap")
    R, x = ring(f.var, SQQ)
    sp = R.from_dict({(i,): SQQ(c) for i, c in enumerate(ints) if c})
    _, facs = sp.factor_list()
    out = []
    for g, m in facs:
        coeffs = [Fraction(0)] * (g.degree() + 1)
        for (e,), c in g.items():
            coeffs[e] = Fraction(int(c.numerator), int(c.denominator))
        out.append((Poly(QQ, coeffs, f.var).monic(), m))
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _factor_rff(f: Poly):
    """Factor a polynomial in ``f.var`` whose coefficients lie in a rational function field."""
    cf = f.field
    if all(c.is_constant() for c in f.coeffs):
        base = cf.base
        g = Poly(base, [c.constant_value() for c in f.coeffs], f.var)
        return [(Poly(cf, [cf(c) for c in h.coeffs], f.var), m) for h, m in factor_with_unit(g)[1]]
    if isinstance(cf.base, FiniteField):
        # sympy has no multivariate factoriser over finite fields
        return _factor_rff_small(f)
    big = RationalFunctionField(cf.base, cf.variables + (f.var,))
    elem = big.from_poly(f)
    _, facs = elem.num.factor_list()
    out = []
    for g, m in facs:
        ge = _wrap(big, g)
        num, den = big.to_polys(ge, f.var)
        if num.degree < 1:
            continue
        out.append((num.monic(), m))
    return out


def _rff_sqrt(a, field):
    """Square root in F_p(t) (one variable), or None."""
    if len(field.variables) != 1:
        raise UnsupportedField("square roots are taken in F_p(t) only")
    var = field.variables[0]
    num, den = field.to_polys(a, var)
    out = []
    for h in (num, den):
        lc, facs = factor_with_unit(h)
        if any(m % 2 for _, m in facs):
            return None
        r = lc.field.sqrt(lc)
        if r is None:
            return None
        acc = Poly(h.field, [r], var)
        for g, m in facs:
            acc = acc * g ** (m // 2)
        out.append(field.from_poly(acc))
    return out[0] / out[1]


def _factor_rff_small(f: Poly):
    """Degree <= 2 over F_p(t), p odd, through roots of the monic polynomial."""
    cf = f.field
    g = f.monic()
    if g.degree == 1:
        return [(g, 1)]
    if g.degree != 2 or cf.characteristic == 2:
        raise UnsupportedField(f"cannot factor {f} over {cf}")
    b, c = g.coeff(1), g.coeff(0)
    disc = b * b - cf(4) * c
    if disc == cf.zero:
        return [(Poly(cf, [b / cf(2), cf.one], f.var), 2)]
    r = _rff_sqrt(disc, cf)
    if r is None:
        return [(g, 1)]
    two = cf(2)
    lin = [Poly(cf, [-(-b + s) / two, cf.one], f.var) for s in (r, -r)]
    return [(h, 1) for h in lin]


def _wrap(field, sparse):
    from .fields import RationalFunction
    return RationalFunction(field, field._frac.new(sparse, field._frac.ring.one))
