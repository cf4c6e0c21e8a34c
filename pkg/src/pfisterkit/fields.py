"""Global fields and their elements: Q, rational function fields, simple extensions.

Rational function fields are thin canonicalising wrappers around sympy's sparse
fraction fields.  Each element is stored as a coprime numerator/denominator
pair whose denominator has leading coefficient 1 under graded lex order in the
declared variable order, so equal elements have equal payloads and hashes.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt

from sympy import GF, QQ as _SQQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex

from .errors import ParseError, UnsupportedField
from .finite_field import FiniteField, GFElement
from .poly import Poly

MAX_VARIABLES = 3
MAX_NESTING = 4


# ----------------------------------------------------------------------
# Q


class Rationals:
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            return Fraction(int(x))
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return parse_element(x, self)
        if isinstance(x, GFElement):
            raise UnsupportedField("cannot coerce a finite-field element into Q")
        if isinstance(x, RationalFunction):
            if x.is_constant():
                return x.constant_value()
            raise UnsupportedField(f"{x} is not a rational number")
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            return Fraction(int(x.numerator), int(x.denominator))
        raise UnsupportedField(f"cannot coerce {x!r} into Q")

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __str__(self):
        return "Q"

    __repr__ = __str__

    @property
    def variables(self):
        return ()

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def sqrt(self, a):
        """Exact rational square root, or None."""
        a = Fraction(a)
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None


QQ = Rationals()


# ----------------------------------------------------------------------
# rational function fields


def _sympy_domain(base):
    if isinstance(base, Rationals):
        return _SQQ
    if isinstance(base, FiniteField) and base.k == 1:
        return GF(base.p)
    raise UnsupportedField(f"rational functions over {base} are not supported")


class RationalFunctionField:
    """``base(v1, ..., vn)`` for base Q or a prime field.

    ``groups`` records how the variables were adjoined (``F5(t)(x)`` versus
    ``F5(t,x)``); it only affects the printed descriptor.
    """

    def __init__(self, base, variables, groups=None):
        variables = tuple(variables)
        if not variables:
            raise UnsupportedField("a rational function field needs variables")
        if len(set(variables)) != len(variables):
            raise UnsupportedField("variable names must be unique")
        if len(variables) > MAX_VARIABLES:
            raise UnsupportedField(f"at most {MAX_VARIABLES} variables are supported")
        groups = tuple(tuple(g) for g in (groups or (variables,)))
        if len(groups) > MAX_NESTING or sum(len(g) for g in groups) != len(variables):
            raise UnsupportedField("bad variable nesting")
        self.base = base
        self.variables = variables
        self.groups = groups
        self.characteristic = base.characteristic
        self._frac = FracField(variables, _sympy_domain(base), grlex)
        self.zero = RationalFunction(self, self._frac.zero)
        self.one = RationalFunction(self, self._frac.one)

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField) and self.base == other.base
                and self.variables == other.variables)

    def __hash__(self):
        return hash((self.base, self.variables))

    def __str__(self):
        return str(self.base) + "".join("(" + ",".join(g) + ")" for g in self.groups)

    __repr__ = __str__

    @property
    def p(self):
        return self.base.characteristic

    def gen(self, name: str) -> "RationalFunction":
        if name not in self.variables:
            raise ParseError(f"unknown variable {name!r} in {self}")
        return RationalFunction(self, self._frac.gens[self.variables.index(name)])

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def _base_to_domain(self, c):
        c = self.base(c)
        dom = self._frac.domain
        if isinstance(c, Fraction):
            return _SQQ(c.numerator, c.denominator)
        return dom(int(c))

    def _domain_to_base(self, c):
        if isinstance(self.base, Rationals):
            return Fraction(int(c.numerator), int(c.denominator))
        return self.base(int(c) % self.base.p)

    def __call__(self, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            if x.field == self:
                return x
            return self.embed(x)
        if isinstance(x, str):
            return parse_element(x, self)
        if isinstance(x, Poly):
            return self.from_poly(x)
        return RationalFunction(self, self._frac(self._base_to_domain(x)))

    def embed(self, x: "RationalFunction") -> "RationalFunction":
        """Embed an element of a field on a subset of our variables."""
        src = x.field
        if src.base != self.base or not set(src.variables) <= set(self.variables):
            raise UnsupportedField(f"cannot embed {src} into {self}")
        pos = [self.variables.index(v) for v in src.variables]
        n = len(self.variables)

        def lift(poly):
            out = {}
            for mon, c in poly.items():
                m = [0] * n
                for i, e in zip(pos, mon):
                    m[i] = e
                out[tuple(m)] = c
            return self._frac.ring.from_dict(out)

        return RationalFunction(self, self._frac.new(lift(x.num), lift(x.den)))

    def coefficient_field(self, var: str):
        """The field generated by every variable except ``var``."""
        cache = self.__dict__.setdefault("_cf_cache", {})
        if var not in cache:
            cache[var] = self._coefficient_field(var)
        return cache[var]

    def _coefficient_field(self, var):
        rest = tuple(v for v in self.variables if v != var)
        if not rest:
            return self.base
        groups = tuple(tuple(v for v in g if v != var) for g in self.groups)
        return RationalFunctionField(self.base, rest, tuple(g for g in groups if g))

    def subfield(self, names):
        names = tuple(v for v in self.variables if v in names)
        if not names:
            return self.base
        return RationalFunctionField(self.base, names)

    def _split(self, poly, var):
        """Sparse polynomial -> dense Poly in ``var`` over the coefficient field."""
        idx = self.variables.index(var)
        cf = self.coefficient_field(var)
        buckets = {}
        for mon, c in poly.items():
            rest = mon[:idx] + mon[idx + 1:]
            buckets.setdefault(mon[idx], {})[rest] = c
        if not buckets:
            return Poly(cf, [], var)
        deg = max(buckets)
        coeffs = []
        for e in range(deg + 1):
            b = buckets.get(e)
            if not b:
                coeffs.append(cf.zero)
            elif cf is self.base:
                coeffs.append(self._domain_to_base(b[()]))
            else:
                coeffs.append(RationalFunction(cf, cf._frac.new(cf._frac.ring.from_dict(b), cf._frac.ring.one)))
        return Poly(cf, coeffs, var)

    def to_polys(self, a: "RationalFunction", var: str):
        """(numerator, denominator) as dense polynomials in ``var``."""
        a = self(a)
        return self._split(a.num, var), self._split(a.den, var)

    def from_poly(self, f: Poly) -> "RationalFunction":
        x = self.gen(f.var)
        acc = self.zero
        for c in reversed(f.coeffs):
            acc = acc * x + self(c)
        return acc

    def variables_in(self, a: "RationalFunction"):
        used = set()
        for poly in (a.num, a.den):
            for mon in poly.keys():
                used.update(v for v, e in zip(self.variables, mon) if e)
        return [v for v in self.variables if v in used]

    def random_element(self, rng, degree=2, height=5, nonzero=True):
        while True:
            num = self._random_poly(rng, degree, height)
            den = self._random_poly(rng, degree, height)
            if den and (num or not nonzero):
                return num / den

    def _random_poly(self, rng, degree, height):
        acc = self.zero
        gens = self.gens()
        for _ in range(rng.randint(1, 3)):
            term = self(rng.randint(-height, height))
            for g in gens:
                term = term * g ** rng.randint(0, degree)
            acc = acc + term
        return acc


class RationalFunction:
    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: RationalFunctionField, frac):
        num, den = frac.numer, frac.denom
        lc = den.LC
        if lc != 1:
            inv = 1 / lc if field.characteristic == 0 else den.ring.domain.one / lc
            num, den = num * inv, den * inv
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    def _frac(self):
        return self.field._frac.new(self.num, self.den)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                other = self.field(other)
            return other._frac()
        return self.field(other)._frac()

    def __add__(self, other):
        return RationalFunction(self.field, self._frac() + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return RationalFunction(self.field, self._frac() - self._coerce(other))

    def __rsub__(self, other):
        return RationalFunction(self.field, self._coerce(other) - self._frac())

    def __mul__(self, other):
        return RationalFunction(self.field, self._frac() * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.field, self._frac() / o)

    def __rtruediv__(self, other):
        if not self.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.field, self._coerce(other) / self._frac())

    def __neg__(self):
        return RationalFunction(self.field, -self._frac())

    def __pow__(self, e: int):
        if e < 0:
            return self.field.one / (self ** (-e))
        return RationalFunction(self.field, self._frac() ** e)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                try:
                    other = self.field(other)
                except UnsupportedField:
                    return False
            return self.num == other.num and self.den == other.den
        try:
            o = self.field(other)
        except (UnsupportedField, ParseError, TypeError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted((m, str(c)) for m, c in self.num.items())),
                               tuple(sorted((m, str(c)) for m, c in self.den.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        f = self.field
        if not self.num:
            return f.base.zero
        return f._domain_to_base(self.num.LC) / f._domain_to_base(self.den.LC)

    def numerator(self) -> "RationalFunction":
        return RationalFunction(self.field, self.field._frac.new(self.num, self.field._frac.ring.one))

    def denominator(self) -> "RationalFunction":
        return RationalFunction(self.field, self.field._frac.new(self.den, self.field._frac.ring.one))

    def terms(self, which="num"):
        """Monomial exponent tuples with base-field coefficients, sorted."""
        poly = self.num if which == "num" else self.den
        conv = self.field._domain_to_base
        return sorted((m, conv(c)) for m, c in poly.items())

    def degree(self, var: str) -> int:
        idx = self.field.variables.index(var)
        return self.num.degree(idx) - self.den.degree(idx)

    def sort_key(self):
        conv = self.field._domain_to_base

        def key(c):
            c = conv(c)
            return c.symmetric() if isinstance(c, GFElement) else c

        return (tuple(sorted((m, key(c)) for m, c in self.num.items())),
                tuple(sorted((m, key(c)) for m, c in self.den.items())))

    def __str__(self):
        n = _poly_str(self.num, self.field)
        if self.den.is_ground:
            return n
        d = _poly_str(self.den, self.field)
        if len(self.num.terms()) > 1:
            n = f"({n})"
        if len(self.den.terms()) > 1 or any(ch in d for ch in "*^"):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _poly_str(poly, field):
    if not poly:
        return "0"
    pieces = []
    for mon, c in sorted(poly.items(), key=lambda mc: (-sum(mc[0]), [-e for e in mc[0]])):
        c = field._domain_to_base(c)
        if isinstance(c, GFElement):
            c = Fraction(c.symmetric())
        factors = []
        for v, e in zip(field.variables, mon):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mono = "*".join(factors)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if neg else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ----------------------------------------------------------------------
# simple algebraic extensions base[r]/(m(r))


class SimpleExtension:
    """``base[r]/(m)`` for a monic irreducible ``m``; used for residue fields."""

    def __init__(self, base, modulus: Poly, name: str = "r"):
        if modulus.degree < 1:
            raise UnsupportedField("extension modulus must have positive degree")
        self.base = base
        self.modulus = modulus.monic()
        self.name = name
        self.degree = modulus.degree
        self.characteristic = base.characteristic
        self.zero = ExtElement(self, Poly(base, [], name))
        self.one = ExtElement(self, Poly(base, [base.one], name))

    def __eq__(self, other):
        return (isinstance(other, SimpleExtension) and self.base == other.base
                and self.modulus.coeffs == other.modulus.coeffs)

    def __hash__(self):
        return hash((self.base, self.modulus.coeffs))

    def __str__(self):
        m = Poly(self.base, self.modulus.coeffs, self.name)
        return f"{self.base}[{self.name}]/({m})"

    __repr__ = __str__

    @property
    def variables(self):
        return (self.name,)

    def gen(self, name=None):
        return ExtElement(self, Poly.gen(self.base, self.name))

    def __call__(self, x):
        if isinstance(x, ExtElement):
            if x.field != self:
                raise UnsupportedField("element of a different extension")
            return x
        if isinstance(x, Poly):
            return ExtElement(self, Poly(self.base, x.coeffs, self.name) % self.modulus)
        if isinstance(x, str):
            return parse_element(x, self)
        return ExtElement(self, Poly(self.base, [self.base(x)], self.name))


class ExtElement:
    __slots__ = ("field", "poly")

    def __init__(self, field: SimpleExtension, poly: Poly):
        self.field = field
        self.poly = poly

    def _c(self, other):
        return self.field(other).poly

    def __add__(self, other):
        return ExtElement(self.field, self.poly + self._c(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ExtElement(self.field, self.poly - self._c(other))

    def __rsub__(self, other):
        return ExtElement(self.field, self._c(other) - self.poly)

    def __neg__(self):
        return ExtElement(self.field, -self.poly)

    def __mul__(self, other):
        return ExtElement(self.field, (self.poly * self._c(other)) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self):
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ExtElement(self.field, self.poly.inverse_mod(self.field.modulus))

    def __truediv__(self, other):
        return self * self.field(other).inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ExtElement(self.field, self.poly.powmod(e, self.field.modulus))

    def __eq__(self, other):
        try:
            return self.poly == self._c(other)
        except (UnsupportedField, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash(self.poly.coeffs)

    def __bool__(self):
        return not self.poly.is_zero()

    def is_zero(self):
        return self.poly.is_zero()

    def sort_key(self):
        return self.poly.sort_key()

    def __str__(self):
        return str(self.poly)

    __repr__ = __str__


# ----------------------------------------------------------------------
# parsing

_FIELD_RE = re.compile(r"^(Q|F\d+)((?:\([A-Za-z_][A-Za-z0-9_]*(?:,[A-Za-z_][A-Za-z0-9_]*)*\))*)$")


def parse_field(text: str):
    """Parse ``Q``, ``F5``, ``F4``, ``Q(x)``, ``F5(t)(x)``, ``Q(t2,x)``."""
    s = text.replace(" ", "")
    m = _FIELD_RE.match(s)
    if not m:
        raise ParseError(f"bad field descriptor {text!r}")
    head, tail = m.group(1), m.group(2)
    if head == "Q":
        base = QQ
    else:
        q = int(head[1:])
        p, k = _prime_power(q)
        if p is None:
            raise UnsupportedField(f"{q} is not a prime power")
        base = FiniteField(p, k)
    if not tail:
        return base
    groups = [g.split(",") for g in re.findall(r"\(([^)]*)\)", tail)]
    names = [v for g in groups for v in g]
    return RationalFunctionField(base, names, groups)


def _prime_power(q):
    from .finite_field import is_prime
    if q < 2:
        return None, None
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r == 1 and is_prime(p):
                return p, k
            return None, None
    return None, None


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    out = []
    for m in _TOKEN_RE.finditer(text):
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif op is not None and not op.isspace():
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
    return out


class _Parser:
    def __init__(self, text, field):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if rhs == self.field.zero:
                    raise ParseError(f"division by zero in {self.text!r}")
                val = val / rhs
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, e = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be an integer literal in {self.text!r}")
            if neg and base == self.field.zero:
                raise ParseError(f"division by zero in {self.text!r}")
            return base ** (-e if neg else e)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return self.field(val)
        if kind == "name":
            self.take()
            return _field_gen(self.field, val)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def _field_gen(field, name):
    if isinstance(field, RationalFunctionField):
        return field.gen(name)
    if isinstance(field, FiniteField) and field.k > 1 and name == "g":
        return field.gen()
    if isinstance(field, SimpleExtension) and name == field.name:
        return field.gen()
    raise ParseError(f"unknown variable {name!r} in {field}")


def parse_element(text: str, field):
    """Parse an element literal into a canonical element of ``field``."""
    p = _Parser(str(text), field)
    if not p.toks:
        raise ParseError("empty expression")
    try:
        val = p.expr()
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc
    if p.i != len(p.toks):
        raise ParseError(f"trailing input in {text!r}")
    return field(val) if not isinstance(field, Rationals) else Fraction(val)


def element_field(a):
    """Best-effort field of a plain element."""
    if isinstance(a, (int, Fraction)):
        return QQ
    if hasattr(a, "field"):
        return a.field
    raise UnsupportedField(f"no field for {a!r}")
