"""Completions: the reals, Q_p and F_q((u)), with truncated element types.

Truncated elements carry an absolute precision: a value is known modulo
``pi^prec``.  Any predicate that would need digits beyond the known ones raises
``PrecisionExhausted`` instead of guessing.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import PrecisionExhausted, UnsupportedField, WrongCharacteristic, ZeroInput
from .finite_field import FiniteField, is_prime
from .poly import Poly

DEFAULT_PRECISION = 16


def vp_int(n: int, p: int) -> int:
    if n == 0:
        return math.inf
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(a, p: int):
    """p-adic valuation of a rational number (inf for 0)."""
    a = Fraction(a)
    if a == 0:
        return math.inf
    return vp_int(a.numerator, p) - vp_int(a.denominator, p)


def unit_part(a, p: int) -> Fraction:
    a = Fraction(a)
    v = vp(a, p)
    return a / Fraction(p) ** v


def residue_mod(a, p: int, k: int = 1) -> int:
    """Image of a p-integral rational in Z/p^k."""
    a = Fraction(a)
    if a.denominator % p == 0:
        raise ValueError(f"{a} is not {p}-integral")
    m = p ** k
    return a.numerator * pow(a.denominator, -1, m) % m


# ----------------------------------------------------------------------
# descriptors


class Reals:
    characteristic = 0

    def __eq__(self, other):
        return isinstance(other, Reals)

    def __hash__(self):
        return hash("R")

    def __str__(self):
        return "R"

    __repr__ = __str__

    def __call__(self, x):
        return Fraction(x)

    def is_square(self, a) -> bool:
        a = Fraction(a)
        if a == 0:
            raise ZeroInput("zero has no square class")
        return a > 0


class Qp:
    """The p-adic numbers, with a working precision for truncated elements."""

    characteristic = 0

    def __init__(self, p: int, prec: int = DEFAULT_PRECISION):
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        self.p = p
        self.prec = prec
        self.residue_field = FiniteField(p)

    def __eq__(self, other):
        return isinstance(other, Qp) and other.p == self.p

    def __hash__(self):
        return hash(("Qp", self.p))

    def __str__(self):
        return f"Q{self.p}"

    __repr__ = __str__

    @property
    def uniformizer(self):
        return Fraction(self.p)

    def __call__(self, x):
        if isinstance(x, PadicNumber):
            return x
        return Fraction(x)

    def to_padic(self, x, prec=None) -> "PadicNumber":
        if isinstance(x, PadicNumber):
            return x
        return PadicNumber.from_rational(self.p, Fraction(x), prec or self.prec)

    def valuation(self, a):
        if isinstance(a, PadicNumber):
            return a.valuation()
        return vp(a, self.p)

    def unit_residue(self, a):
        if isinstance(a, PadicNumber):
            return self.residue_field(a.unit_digits(1))
        return self.residue_field(residue_mod(unit_part(a, self.p), self.p))

    def is_square(self, a) -> bool:
        if isinstance(a, PadicNumber):
            if a.is_zero():
                raise PrecisionExhausted("element is zero to the working precision")
            v = a.val
            if v % 2:
                return False
            if self.p == 2:
                if a.relprec < 3:
                    raise PrecisionExhausted("need the unit modulo 8")
                return a.unit % 8 == 1
            return self.residue_field.is_square(self.residue_field(a.unit))
        a = Fraction(a)
        if a == 0:
            raise ZeroInput("zero has no square class")
        v = vp(a, self.p)
        if v % 2:
            return False
        u = unit_part(a, self.p)
        if self.p == 2:
            return residue_mod(u, 2, 3) == 1
        return self.residue_field.is_square(self.residue_field(residue_mod(u, self.p)))


class LaurentField:
    """F_q((u)) with a default working precision."""

    def __init__(self, base: FiniteField, prec: int = DEFAULT_PRECISION, var: str = "u"):
        if not isinstance(base, FiniteField):
            raise UnsupportedField("Laurent fields are built over finite fields")
        self.base = base
        self.prec = prec
        self.var = var
        self.characteristic = base.p
        self.residue_field = base

    def __eq__(self, other):
        return isinstance(other, LaurentField) and other.base == self.base and other.var == self.var

    def __hash__(self):
        return hash(("Laurent", self.base, self.var))

    def __str__(self):
        return f"{self.base}(({self.var}))"

    __repr__ = __str__

    @property
    def uniformizer(self):
        return LaurentSeries.monomial(self, 1)

    @property
    def zero(self):
        return LaurentSeries(self, 0, [], math.inf)

    @property
    def one(self):
        return LaurentSeries(self, 0, [self.base.one], math.inf)

    def __call__(self, x) -> "LaurentSeries":
        if isinstance(x, LaurentSeries):
            return x
        if isinstance(x, Poly):
            return LaurentSeries(self, 0, [self.base(c) for c in x.coeffs], math.inf)
        return LaurentSeries(self, 0, [self.base(x)], math.inf)

    def series(self, coeffs, val=0, prec=math.inf):
        return LaurentSeries(self, val, [self.base(c) for c in coeffs], prec)

    def valuation(self, a):
        return self(a).valuation()

    def unit_residue(self, a):
        return self(a).leading()

    def is_square(self, a) -> bool:
        a = self(a)
        if a.is_zero():
            if a.prec == math.inf:
                raise ZeroInput("zero has no square class")
            raise PrecisionExhausted("element is zero to the working precision")
        if self.base.p == 2:
            # a square in characteristic 2 has no odd-exponent terms
            for i, c in enumerate(a.coeffs):
                if (a.val + i) % 2 and c != self.base.zero:
                    return False
            if a.prec != math.inf:
                raise PrecisionExhausted("cannot certify a square from finitely many digits")
            return True
        if a.val % 2:
            return False
        return self.base.is_square(a.leading())


# ----------------------------------------------------------------------
# truncated p-adic numbers


class PadicNumber:
    """p^val * unit, with the unit known modulo p^relprec."""

    __slots__ = ("p", "val", "unit", "relprec")

    def __init__(self, p, val, unit, relprec):
        self.p = p
        if relprec <= 0:
            self.val, self.unit, self.relprec = val, 0, 0
            return
        m = p ** relprec
        unit %= m
        while unit and unit % p == 0:
            unit //= p
            val += 1
            relprec -= 1
        if unit == 0 or relprec <= 0:
            self.val, self.unit, self.relprec = val + max(relprec, 0), 0, 0
            return
        self.val, self.unit, self.relprec = val, unit % p ** relprec, relprec

    @classmethod
    def from_rational(cls, p, a: Fraction, relprec):
        if a == 0:
            return cls(p, relprec, 0, 0)
        v = vp(a, p)
        return cls(p, v, residue_mod(unit_part(a, p), p, relprec), relprec)

    @property
    def absprec(self):
        return self.val + self.relprec

    def is_zero(self):
        return self.relprec == 0

    def valuation(self):
        if self.is_zero():
            raise PrecisionExhausted("element is zero to the working precision")
        return self.val

    def unit_digits(self, k):
        if self.relprec < k:
            raise PrecisionExhausted("not enough digits")
        return self.unit % self.p ** k

    def _lift(self, other):
        if isinstance(other, PadicNumber):
            return other
        return PadicNumber.from_rational(self.p, Fraction(other), max(self.absprec - vp_or0(other, self.p), 1) + 2)

    def __add__(self, other):
        o = self._lift(other)
        if self.is_zero() and o.is_zero():
            return PadicNumber(self.p, min(self.val, o.val), 0, 0)
        absprec = min(self.absprec, o.absprec)
        v = min(self.val if not self.is_zero() else absprec, o.val if not o.is_zero() else absprec)
        total = 0
        for x in (self, o):
            if not x.is_zero():
                total += x.unit * self.p ** (x.val - v)
        return PadicNumber(self.p, v, total, absprec - v)

    __radd__ = __add__

    def __neg__(self):
        return PadicNumber(self.p, self.val, -self.unit, self.relprec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            absprec = min(self.absprec + (o.val if not o.is_zero() else 0),
                          o.absprec + (self.val if not self.is_zero() else 0))
            return PadicNumber(self.p, absprec, 0, 0)
        r = min(self.relprec, o.relprec)
        return PadicNumber(self.p, self.val + o.val, self.unit * o.unit, r)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise PrecisionExhausted("cannot invert an element that is zero to precision")
        m = self.p ** self.relprec
        return PadicNumber(self.p, -self.val, pow(self.unit, -1, m), self.relprec)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e):
        out = PadicNumber(self.p, 0, 1, self.relprec)
        base = self if e >= 0 else self.inverse()
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, PadicNumber):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self.val, self.unit, self.relprec) == (other.val, other.unit, other.relprec)

    def __hash__(self):
        return hash((self.p, self.val, self.unit, self.relprec))

    def to_integer(self):
        """Representative in Z (requires val >= 0)."""
        if self.is_zero():
            return 0
        if self.val < 0:
            raise ValueError("not a p-adic integer")
        return self.unit * self.p ** self.val

    def __str__(self):
        if self.is_zero():
            return f"O({self.p}^{self.val})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.absprec})"

    __repr__ = __str__


def vp_or0(a, p):
    v = vp(a, p)
    return 0 if v == math.inf else v


def padic_sqrt(a, p: int, relprec: int):
    """Square root in Q_p of a rational or truncated p-adic square.

    Returns an exact ``Fraction`` when ``a`` is a rational square, otherwise a
    ``PadicNumber`` known to ``relprec`` digits.  Returns None for nonsquares.
    """
    if not isinstance(a, PadicNumber):
        a = Fraction(a)
        if a == 0:
            return Fraction(0)
        if a > 0:
            n, d = a.numerator, a.denominator
            rn, rd = math.isqrt(n), math.isqrt(d)
            if rn * rn == n and rd * rd == d:
                return Fraction(rn, rd)
        a = PadicNumber.from_rational(p, a, relprec + 3)
    if a.is_zero():
        raise PrecisionExhausted("cannot take the root of an element that is zero to precision")
    if a.val % 2:
        return None
    u = a.unit
    if p == 2:
        if a.relprec < 3:
            raise PrecisionExhausted("need the unit modulo 8")
        if u % 8 != 1:
            return None
        # if y^2 = u mod 2^j (j >= 3) then y or y + 2^(j-1) works mod 2^(j+1)
        y = 1
        for j in range(3, a.relprec):
            if (y * y - u) % 2 ** (j + 1):
                y += 2 ** (j - 1)
        return PadicNumber(p, a.val // 2, y, a.relprec - 1)
    fp = FiniteField(p)
    r0 = fp.sqrt(fp(u))
    if r0 is None:
        return None
    x = int(r0)
    k = 1
    while k < a.relprec:
        k = min(2 * k, a.relprec)
        m = p ** k
        x = (x - (x * x - u) * pow(2 * x, -1, m)) % m
    return PadicNumber(p, a.val // 2, x, a.relprec)


# ----------------------------------------------------------------------
# truncated Laurent series over F_q


class LaurentSeries:
    """sum_i coeffs[i] * u^(val+i), known modulo u^prec (prec may be inf)."""

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field: LaurentField, val: int, coeffs, prec):
        zero = field.base.zero
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == zero:
            coeffs.pop(0)
            val += 1
        if prec != math.inf:
            keep = max(prec - val, 0)
            coeffs = coeffs[:keep]
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        if not coeffs:
            val = prec if prec != math.inf else 0
        self.field = field
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def monomial(cls, field, n, c=None):
        return cls(field, n, [field.base.one if c is None else field.base(c)], math.inf)

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        if self.is_zero():
            if self.prec == math.inf:
                return math.inf
            raise PrecisionExhausted("series is zero to the working precision")
        return self.val

    def leading(self):
        if self.is_zero():
            raise PrecisionExhausted("no leading coefficient")
        return self.coeffs[0]

    def coeff(self, n):
        i = n - self.val
        if self.prec != math.inf and n >= self.prec:
            raise PrecisionExhausted(f"coefficient of u^{n} is beyond the precision")
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.base.zero

    def _lift(self, other):
        return other if isinstance(other, LaurentSeries) else self.field(other)

    def __add__(self, other):
        o = self._lift(other)
        prec = min(self.prec, o.prec)
        lo = min(self.val if self.coeffs else prec, o.val if o.coeffs else prec)
        if lo == math.inf:
            return LaurentSeries(self.field, 0, [], math.inf)
        hi = max(self.val + len(self.coeffs), o.val + len(o.coeffs))
        if prec != math.inf:
            hi = min(hi, prec)
        base = self.field.base
        out = [base.zero] * max(hi - lo, 0)
        for s in (self, o):
            for i, c in enumerate(s.coeffs):
                j = s.val + i - lo
                if 0 <= j < len(out):
                    out[j] = out[j] + c
        return LaurentSeries(self.field, lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            prec = min(self.prec + (o.val if o.coeffs else 0), o.prec + (self.val if self.coeffs else 0))
            return LaurentSeries(self.field, 0, [], prec)
        prec = min(self.prec + o.val, o.prec + self.val)
        n = len(self.coeffs) + len(o.coeffs) - 1
        if prec != math.inf:
            n = min(n, max(prec - self.val - o.val, 0))
        zero = self.field.base.zero
        out = [zero] * n
        for i, a in enumerate(self.coeffs):
            if a == zero or i >= n:
                continue
            for j, b in enumerate(o.coeffs):
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + a * b
        return LaurentSeries(self.field, self.val + o.val, out, prec)

    __rmul__ = __mul__

    def inverse(self, relprec=None):
        if self.is_zero():
            raise PrecisionExhausted("cannot invert a series that is zero to precision")
        r = relprec or (self.prec - self.val if self.prec != math.inf else self.field.prec)
        if self.prec == math.inf and len(self.coeffs) == 1:
            return LaurentSeries(self.field, -self.val, [self.coeffs[0].inverse()], math.inf)
        zero = self.field.base.zero
        inv0 = self.coeffs[0].inverse()
        out = [inv0]
        for n in range(1, r):
            acc = zero
            for k in range(1, min(n, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-acc * inv0)
        return LaurentSeries(self.field, -self.val, out, -self.val + r)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        out = self.field.one
        for _ in range(abs(e)):
            out = out * base
        return out

    def truncate(self, prec):
        return LaurentSeries(self.field, self.val, self.coeffs, min(self.prec, prec))

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            try:
                other = self._lift(other)
            except Exception:
                return NotImplemented
        d = self - other
        return d.is_zero()

    def __hash__(self):
        return hash((self.val, tuple(self.coeffs)))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.field.base.zero:
                continue
            e = self.val + i
            cs = str(c.symmetric()) if self.field.base.k == 1 else f"({c})"
            terms.append(f"{cs}*{self.field.var}^{e}")
        body = " + ".join(terms) if terms else "0"
        if self.prec != math.inf:
            body += f" + O({self.field.var}^{self.prec})"
        return body

    __repr__ = __str__


def laurent_sqrt(a: LaurentSeries, relprec=None):
    """Square root of a square in F_q((u)), q odd; None for nonsquares."""
    field = a.field
    if field.base.p == 2:
        raise WrongCharacteristic("use the Artin-Schreier route in characteristic 2")
    if a.is_zero():
        raise PrecisionExhausted("cannot take the root of a series that is zero to precision")
    if a.val % 2:
        return None
    r0 = field.base.sqrt(a.leading())
    if r0 is None:
        return None
    r = relprec or (a.prec - a.val if a.prec != math.inf else field.prec)
    # unit part w = a / u^val = c0 + c1 u + ..., solve s^2 = w coefficient by coefficient
    w = a.coeffs
    zero = field.base.zero
    s = [r0]
    inv2r0 = (r0 + r0).inverse()
    for n in range(1, r):
        acc = w[n] if n < len(w) else zero
        for k in range(1, n):
            acc = acc - s[k] * s[n - k]
        s.append(acc * inv2r0)
    return LaurentSeries(field, a.val // 2, s, a.val // 2 + r)


# ----------------------------------------------------------------------
# real witnesses


class Sqrt:
    """The positive real square root of a nonnegative rational, kept symbolic."""

    __slots__ = ("radicand",)

    def __init__(self, radicand):
        radicand = Fraction(radicand)
        if radicand < 0:
            raise ValueError("negative radicand")
        self.radicand = radicand

    def square(self):
        return self.radicand

    def __eq__(self, other):
        return isinstance(other, Sqrt) and other.radicand == self.radicand

    def __hash__(self):
        return hash(("sqrt", self.radicand))

    def __str__(self):
        return f"sqrt({self.radicand})"

    __repr__ = __str__


def square_of(x):
    """x^2 for exact, truncated or symbolic-root coordinates."""
    if isinstance(x, Sqrt):
        return x.radicand
    return x * x


# ----------------------------------------------------------------------
# square classes


def is_square_local(a, where) -> bool:
    """Is ``a`` a square in the completion ``where``?"""
    from .valuations import LaurentTower

    if isinstance(a, (int, Fraction)) and Fraction(a) == 0:
        raise ZeroInput("zero has no square class")
    if isinstance(where, Reals):
        return where.is_square(a)
    if isinstance(where, Qp):
        return where.is_square(a)
    if isinstance(where, FiniteField):
        a = where(a)
        if a == where.zero:
            raise ZeroInput("zero has no square class")
        return where.is_square(a)
    if isinstance(where, LaurentField):
        return where.is_square(a)
    if isinstance(where, LaurentTower):
        return where.is_square(a)
    raise UnsupportedField(f"is_square_local does not support {where!r}")
