"""Finite fields F_q, q = p^k, with elements encoded as integers.

An element of F_{p^k} = F_p[g]/(m(g)) is the integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}
for the residue c_0 + c_1 g + ... of degree < k.  For k = 1 this is just the
residue in [0, p).  The integer code doubles as the canonical enumeration order.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .errors import UnsupportedField, WrongCharacteristic, ZeroInput

MAX_ORDER = 2 ** 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- dense polynomials over F_p as coefficient lists (low -> high) ----------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        if c:
            for i, y in enumerate(m):
                a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
        _trim(a)
    return _trim(a)


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible_fp(m, p):
    """Rabin's test for a monic list polynomial over F_p."""
    n = len(m) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    for q in {f for f in range(2, n + 1) if n % f == 0 and is_prime(f)}:
        h = _psub(_ppowmod(x, p ** (n // q), m, p), x, p)
        g = _pgcd(m, h, p)
        if len(g) > 1:
            return False
    return _psub(_ppowmod(x, p ** n, m, p), x, p) == []


@functools.lru_cache(maxsize=None)
def conway_like_modulus(p: int, k: int) -> tuple:
    """Smallest monic irreducible of degree k over F_p in integer-code order."""
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        m = low + [1]
        if _is_irreducible_fp(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """The field F_{p^k}.

    ``modulus`` (low-to-high coefficient tuple, monic) may be supplied to build
    a residue field F_p[t]/(pi) with a prescribed defining polynomial.
    """

    is_finite = True
    generator_name = "g"

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        if k < 1:
            raise UnsupportedField("extension degree must be >= 1")
        if p ** k > MAX_ORDER:
            raise UnsupportedField(f"field order {p}^{k} exceeds {MAX_ORDER}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.characteristic = p
        if k == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = conway_like_modulus(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise UnsupportedField("modulus must be monic of degree k")
            if not _is_irreducible_fp(list(modulus), p):
                raise UnsupportedField("modulus is not irreducible")
            self.modulus = modulus
        self.zero = GFElement(self, 0)
        self.one = GFElement(self, 1)

    # identity -----------------------------------------------------------
    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self):
        return hash(("GF",) + self._key())

    def __str__(self):
        return f"F{self.order}"

    def __repr__(self):
        if self.k > 1 and self.modulus != conway_like_modulus(self.p, self.k):
            return f"FiniteField({self.p}, {self.k}, modulus={self.modulus})"
        return f"FiniteField({self.p}, {self.k})"

    # elements -----------------------------------------------------------
    def __call__(self, x) -> "GFElement":
        if isinstance(x, GFElement):
            if x.field == self:
                return x
            if x.field.k == 1 and x.field.p == self.p:
                return GFElement(self, x.v)
            raise WrongCharacteristic(f"cannot coerce {x} from {x.field} into {self}")
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return GFElement(self, x % self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroInput(f"{x} has a pole in characteristic {self.p}")
            return self(x.numerator) / self(x.denominator)
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            return self(int(x.numerator)) / self(int(x.denominator))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def from_code(self, code: int) -> "GFElement":
        return GFElement(self, code)

    def from_coeffs(self, coeffs) -> "GFElement":
        coeffs = _pmod([int(c) % self.p for c in coeffs], list(self.modulus), self.p) if self.k > 1 \
            else [int(coeffs[0]) % self.p if coeffs else 0]
        return GFElement(self, sum(c * self.p ** i for i, c in enumerate(coeffs)))

    def gen(self, name=None) -> "GFElement":
        if self.k == 1:
            raise ValueError("prime field has no named generator")
        return GFElement(self, self.p)

    @property
    def variables(self):
        return () if self.k == 1 else (self.generator_name,)

    def elements(self):
        return (GFElement(self, c) for c in range(self.order))

    def nonzero_elements(self):
        return (GFElement(self, c) for c in range(1, self.order))

    def random_element(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return GFElement(self, rng.randrange(lo, self.order))

    def enumerate_small(self, n):
        return [GFElement(self, c) for c in range(min(n, self.order))]

    # arithmetic helpers --------------------------------------------------
    def _digits(self, v):
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def _code(self, digits):
        return sum(c * self.p ** i for i, c in enumerate(digits))

    # square classes ------------------------------------------------------
    def is_square(self, a) -> bool:
        a = self(a)
        if a.v == 0 or self.p == 2:
            return True
        return a ** ((self.order - 1) // 2) == self.one

    def quadratic_character(self, a) -> int:
        a = self(a)
        if a.v == 0:
            raise ZeroInput("quadratic character of zero")
        return 1 if self.is_square(a) else -1

    @functools.cached_property
    def first_nonsquare(self):
        if self.p == 2:
            raise WrongCharacteristic("every element of a binary field is a square")
        for c in range(1, self.order):
            e = GFElement(self, c)
            if not self.is_square(e):
                return e
        raise AssertionError("unreachable")

    def sqrt(self, a):
        """A square root of ``a`` (the one with smaller code), or None."""
        a = self(a)
        if a.v == 0:
            return self.zero
        q = self.order
        if self.p == 2:
            return a ** (q // 2)
        if not self.is_square(a):
            return None
        # Tonelli-Shanks in the cyclic group of order q - 1
        s, t = 0, q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = self.first_nonsquare
        m, c, r, tt = s, z ** t, a ** ((t + 1) // 2), a ** t
        while tt != self.one:
            i, t2 = 0, tt
            while t2 != self.one:
                t2 = t2 * t2
                i += 1
            b = c ** (2 ** (m - i - 1))
            m, c = i, b * b
            r, tt = r * b, tt * b * b
        other = -r
        return r if r.v <= other.v else other

    def trace(self, a) -> "GFElement":
        """Absolute trace to the prime field."""
        a = self(a)
        acc, x = self.zero, a
        for _ in range(self.k):
            acc = acc + x
            x = x ** self.p
        return acc


def as2_trace(a) -> int:
    """Absolute trace of ``a`` in F_{2^k}, as a bit.

    ``x^2 + x + a`` is irreducible over F_{2^k} exactly when this is 1.
    """
    if not isinstance(a, GFElement):
        raise TypeError("as2_trace expects a finite-field element")
    if a.field.p != 2:
        raise WrongCharacteristic("Artin-Schreier trace needs characteristic 2")
    return a.field.trace(a).v


class GFElement:
    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v: int):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.field is self.field or other.field == self.field:
                return other
            return self.field(other)
        if isinstance(other, int):
            return GFElement(self.field, other % self.field.p)
        if isinstance(other, Fraction):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        if F.k == 1:
            return GFElement(F, (self.v + o.v) % F.p)
        a, b = F._digits(self.v), F._digits(o.v)
        return GFElement(F, F._code([(x + y) % F.p for x, y in zip(a, b)]))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        if F.k == 1:
            return GFElement(F, (-self.v) % F.p)
        return GFElement(F, F._code([(-x) % F.p for x in F._digits(self.v)]))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        if F.k == 1:
            return GFElement(F, self.v * o.v % F.p)
        prod = _pmul(_trim(F._digits(self.v)), _trim(F._digits(o.v)), F.p)
        return GFElement(F, F._code(_pmod(prod, list(F.modulus), F.p)))

    __rmul__ = __mul__

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        F = self.field
        if F.k == 1:
            return GFElement(F, pow(self.v, -1, F.p))
        return self ** (F.order - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        if F.k == 1:
            return GFElement(F, pow(self.v, e, F.p))
        result, base = F.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.field == other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.field.p and (self.field.k == 1 or self.v < self.field.p)
        return NotImplemented

    def __hash__(self):
        if self.field.k == 1:
            return hash(self.v)
        return hash((self.field.order, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        if self.field.k != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.v

    def symmetric(self) -> int:
        """Representative in (-p/2, p/2] for prime fields; the code otherwise."""
        if self.field.k == 1 and self.v > self.field.p // 2:
            return self.v - self.field.p
        return self.v

    def is_zero(self):
        return self.v == 0

    def __str__(self):
        F = self.field
        if F.k == 1:
            return str(self.v)
        terms = []
        for i, c in enumerate(F._digits(self.v)):
            if c == 0:
                continue
            mono = "" if i == 0 else (F.generator_name if i == 1 else f"{F.generator_name}^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(reversed(terms)) if terms else "0"

    def __repr__(self):
        return f"GF({self.field.order})({self})"
