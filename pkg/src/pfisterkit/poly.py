"""Dense univariate polynomials over an arbitrary exact field.

The coefficient field is any object with ``zero``, ``one`` and a coercing
``__call__``; its elements support ``+ - * /`` and equality.  This covers Q
(``fractions.Fraction``), finite fields, rational function fields and simple
algebraic extensions alike.
"""

from __future__ import annotations


class Poly:
    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field, coeffs=(), var: str = "x"):
        zero = field.zero
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self.var = var

    # constructors ------------------------------------------------------
    @classmethod
    def gen(cls, field, var="x"):
        return cls(field, [field.zero, field.one], var)

    @classmethod
    def constant(cls, field, c, var="x"):
        return cls(field, [c], var)

    @classmethod
    def monomial(cls, field, n, c=None, var="x"):
        c = field.one if c is None else c
        return cls(field, [field.zero] * n + [c], var)

    def _new(self, coeffs):
        return Poly(self.field, coeffs, self.var)

    # basic accessors ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.field.one / self.coeffs[-1]
        return self._new([c * inv for c in self.coeffs])

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    # arithmetic --------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly(self.field, [self.field(other)], self.var)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return self._new([self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            return self._new([a * c for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._new([])
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self._new([self.field.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return self._new([]), self
        quot = [self.field.zero] * (dq + 1)
        inv = self.field.one / o.lc()
        zero = self.field.zero
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] * inv
            quot[k] = c
            if c == zero:
                continue
            for j, b in enumerate(o.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return self._new(quot), self._new(rem[: len(o.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other) -> bool:
        return (other % self).is_zero()

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0 or other == self.field.zero
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; ``x`` may live in any ring the coefficients act on."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return self.field.zero
        return acc

    def map_coeffs(self, fn, field=None) -> "Poly":
        return Poly(field or self.field, [fn(c) for c in self.coeffs], self.var)

    def derivative(self) -> "Poly":
        return self._new([c * i for i, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "Poly") -> "Poly":
        acc = self._new([])
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def powmod(self, e: int, m: "Poly") -> "Poly":
        result = self._new([self.field.one]) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def order_at(self, pi: "Poly") -> int:
        """Multiplicity of the irreducible ``pi`` in this nonzero polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("order of the zero polynomial")
        n, f = 0, self
        while True:
            q, r = divmod(f, pi)
            if not r.is_zero():
                return n
            f, n = q, n + 1

    # gcd ---------------------------------------------------------------
    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, self._lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly"):
        """Return (g, s, t) with s*self + t*other = g monic."""
        one, zero = self._new([self.field.one]), self._new([])
        r0, r1, s0, s1, t0, t1 = self, self._lift(other), one, zero, zero, one
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = self.field.one / r0.lc()
        return r0 * inv, s0 * inv, t0 * inv

    def inverse_mod(self, m: "Poly") -> "Poly":
        g, s, _ = self.xgcd(m)
        if g.degree != 0:
            raise ZeroDivisionError("not invertible modulo the given polynomial")
        return s % m

    # presentation ------------------------------------------------------
    def sort_key(self):
        """Degree first, then coefficients from the top down (leading excluded)."""
        return (self.degree, tuple(_coeff_key(c) for c in reversed(self.coeffs[:-1])))

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == self.field.zero:
                continue
            cs = _coeff_str(c)
            neg = cs.startswith("-") and not any(op in cs[1:] for op in ("+", " - "))
            if neg:
                cs = cs[1:]
            elif " + " in cs or " - " in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            pieces.append(("-" if neg else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self})"


def _coeff_str(c):
    if hasattr(c, "symmetric") and getattr(c.field, "k", 1) == 1:
        return str(c.symmetric())
    return str(c)


def _coeff_key(c):
    if hasattr(c, "symmetric"):
        return c.symmetric()
    if hasattr(c, "sort_key"):
        return c.sort_key()
    return c


def crt_poly(residues, moduli):
    """Chinese remaindering for pairwise coprime polynomials over a field."""
    field, var = moduli[0].field, moduli[0].var
    total = Poly(field, [field.one], var)
    for m in moduli:
        total = total * m
    acc = Poly(field, [], var)
    for r, m in zip(residues, moduli):
        rest = total // m
        acc = acc + r * rest * rest.inverse_mod(m)
    return acc % total, total
