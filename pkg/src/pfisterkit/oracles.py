"""Brute-force oracles used to cross-check the decision procedures.

Everything here works by exhaustive or budgeted enumeration with plain integer
arithmetic; none of it calls the library's own isotropy machinery.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


# ----------------------------------------------------------------------
# Hilbert symbols by counting solutions modulo p^k


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _normalise(a: Fraction, p: int) -> int:
    """Integer of the same square class as a with p-valuation 0 or 1."""
    a = Fraction(a)
    n = a.numerator * a.denominator  # same square class as a
    v = _vp(abs(n), p)
    return n // p ** (v - v % 2)


def hilbert_bruteforce(a, b, p: int) -> int:
    """(a, b)_p from primitive solutions of z^2 = a x^2 + b y^2 modulo p^3 (2^6 at p = 2)."""
    a, b = _normalise(a, p), _normalise(b, p)
    k = 6 if p == 2 else 3
    m = p ** k
    r = np.arange(m, dtype=np.int64)
    sq = (r * r) % m
    all_sq = np.zeros(m, dtype=bool)
    all_sq[sq] = True
    unit_sq = np.zeros(m, dtype=bool)
    unit_sq[sq[r % p != 0]] = True
    x = r[:, None]
    y = r[None, :]
    val = (a % m * ((x * x) % m) + b % m * ((y * y) % m)) % m
    xy_primitive = (x % p != 0) | (y % p != 0)
    ok = np.where(xy_primitive, all_sq[val], unit_sq[val])
    return 1 if ok.any() else -1


# ----------------------------------------------------------------------
# rational zeros by height-bounded enumeration


def rational_zero_bruteforce(coeffs, height: int):
    """Nonzero integer vector of height <= ``height`` with sum c_i x_i^2 = 0, or None."""
    cs = [Fraction(c) for c in coeffs]
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    cs = [int(c * den) for c in cs]
    n = len(cs)
    last = cs[-1]
    r = np.arange(height + 1, dtype=np.int64)
    if n == 1:
        return None
    grids = np.meshgrid(*([r] * (n - 1)), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    pts = pts[pts.any(axis=1)]
    s = (pts * pts * np.array(cs[:-1], dtype=np.int64)).sum(axis=1)
    num = -s
    good = (num % last == 0)
    t = np.where(good, num // last, -1)
    good &= t >= 0
    root = np.floor(np.sqrt(np.where(good, t, 0).astype(np.float64))).astype(np.int64)
    for adj in (-1, 0, 1):
        rr = root + adj
        hit = good & (rr >= 0) & (rr <= height) & (rr * rr == t)
        idx = np.nonzero(hit)[0]
        if idx.size:
            i = idx[0]
            return tuple(int(v) for v in pts[i]) + (int(rr[i]),)
    return None


# ----------------------------------------------------------------------
# zeros over truncated Laurent series


def _coeff_k_of_square(x, k, p):
    """Coefficient of u^k in x^2 for a digit list x."""
    acc = 0
    for i in range(k + 1):
        j = k - i
        if i < len(x) and j < len(x):
            acc += x[i] * x[j]
    return acc % p


def laurent_zero_bruteforce(coeffs, p: int, order: int = 8, budget: int = 4000, max_subset: int = 3):
    """Primitive vector with q(x) = 0 mod u^order over F_p[[u]], or None.

    ``coeffs`` are digit lists (lowest first, the form coefficients as power
    series).  Coordinates are digit vectors in F_p; the search runs over
    coordinate subsets of size <= ``max_subset`` and lifts digit by digit,
    abandoning a branch as soon as q(x) fails to vanish modulo u^(k+1).
    ``budget`` caps the number of expanded nodes.
    """
    n = len(coeffs)
    cs = [list(c) + [0] * (order - len(c)) for c in coeffs]
    nodes = 0
    for size in range(1, min(max_subset, n) + 1):
        for subset in itertools.combinations(range(n), size):
            sub = [cs[i] for i in subset]
            digits = list(itertools.product(range(p), repeat=size))
            stack = [(0, [[] for _ in range(size)])]
            while stack:
                k, x = stack.pop()
                if k == order:
                    out = [[0] * order for _ in range(n)]
                    for i, xi in zip(subset, x):
                        out[i] = xi
                    return out
                nodes += 1
                if nodes > budget:
                    return None
                children = []
                for d in digits:
                    if k == 0 and not any(d):
                        continue
                    y = [xi + [di] for xi, di in zip(x, d)]
                    # coefficient of u^k in sum c_i y_i^2
                    acc = 0
                    for c, yi in zip(sub, y):
                        for e in range(k + 1):
                            if c[e]:
                                acc += c[e] * _coeff_k_of_square(yi, k - e, p)
                    if acc % p == 0:
                        children.append((k + 1, y))
                stack.extend(reversed(children))
    return None


def eval_series_form(coeffs, x, p, order):
    """Digits of sum c_i x_i^2 modulo u^order."""
    out = [0] * order
    for c, xi in zip(coeffs, x):
        sq = [_coeff_k_of_square(xi, k, p) for k in range(order)]
        for i in range(order):
            for j in range(order - i):
                if i < len(c):
                    out[i + j] = (out[i + j] + c[i] * sq[j]) % p
    return out


# ----------------------------------------------------------------------
# splitting of a polynomial modulo p


def root_count_mod_p(coeffs, p: int):
    """Distinct roots mod p of an integral polynomial (lowest coefficient first)."""
    cs = [int(Fraction(c).numerator * pow(Fraction(c).denominator, -1, p)) % p for c in coeffs]
    count = 0
    for x in range(p):
        acc = 0
        for c in reversed(cs):
            acc = (acc * x + c) % p
        if acc == 0:
            count += 1
    return count


def splits_mod_p(coeffs, p: int) -> bool:
    """Monic degree-n integral polynomial with n distinct roots mod p."""
    return root_count_mod_p(coeffs, p) == len(coeffs) - 1


def is_square_mod(a: int, m: int) -> bool:
    return any((x * x - a) % m == 0 for x in range(m))
