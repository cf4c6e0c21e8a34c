import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pfisterkit.errors import EvenValue
from pfisterkit.fields import parse_field
from pfisterkit.poly import Poly
from pfisterkit.recipe import (recipe_ideal, recipe_samples, recipe_stabilizer, recipe_verify, rt_member,
                               rt_witness)
from pfisterkit.valuations import PolyValuation, val_eval

Qx = parse_field("Q(x)")
F5x = parse_field("F5(x)")
x = Qx.gen("x")
X = sympy.symbols("x")


def _order_at_zero(f):
    """Order of vanishing at x = 0, computed with sympy from the printed form."""
    num, den = sympy.fraction(sympy.cancel(sympy.sympify(str(f).replace("^", "**"), locals={"x": X})))
    # monoms are listed by decreasing degree, so the last one is the lowest
    return sympy.Poly(num, X).monoms()[-1][0] - sympy.Poly(den, X).monoms()[-1][0]


# -- ideal and stabilizer -----------------------------------------------


def test_ideal_examples():
    ideal = recipe_ideal(PolyValuation.xadic(Qx, "x", 0), x ** 3)
    assert ideal.contains(x ** 2)
    assert not ideal.contains(x)
    assert ideal.contains(x ** 2 / (x + 1))
    assert str(ideal.generator) == "x^2"


def test_stabilizer_examples():
    ideal = recipe_ideal(PolyValuation.xadic(Qx, "x", 0), x ** 3)
    rep = recipe_stabilizer(ideal, [1 / (x + 1), 1 / x, (x ** 2 + 1) / x ** 2])
    assert [row["member"] for row in rep.members] == [True, False, False]
    assert [row["category"] for row in rep.trichotomy] == ["unit", "inverse only", "inverse only"]


def test_even_value_rejected():
    y = F5x.gen("x")
    with pytest.raises(EvenValue):
        recipe_ideal(PolyValuation.xadic(F5x, "x", 0), y * y)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4).filter(any), st.integers(-3, 3))
def test_ideal_matches_order_of_vanishing(cs, e):
    tau = sum((c * x ** i for i, c in enumerate(cs)), Qx(0)) * x ** e
    ideal = recipe_ideal(PolyValuation.xadic(Qx, "x", 0), x ** 3)
    assert ideal.contains(tau) == (2 * _order_at_zero(tau) > 3)


def test_verify_over_f5x():
    y = F5x.gen("x")
    v = PolyValuation.xadic(F5x, "x", 0)
    samples = recipe_samples(F5x, y, 100, seed=3)
    res = recipe_verify(v, y ** 3, samples)
    assert res.passed and len(res.comparison) == 100


def test_verify_at_degree_two_place():
    g = Poly(Qx.coefficient_field("x"), [1, 0, 1], "x")
    v = PolyValuation(Qx, "x", g)
    samples = recipe_samples(Qx, x ** 2 + 1, 40, seed=5)
    res = recipe_verify(v, (x ** 2 + 1) ** 3, samples)
    assert res.passed


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_verify_on_random_samples(seed):
    samples = recipe_samples(Qx, x, 15, seed=seed)
    assert recipe_verify(PolyValuation.xadic(Qx, "x", 0), x ** 5, samples).passed


# -- the subring R_T ----------------------------------------------------


def test_rt_examples():
    assert rt_member(x + 1).member
    res = rt_member(x / 2)
    assert not res.member
    res = rt_member(1 / x)
    assert not res.member and res.certificate["value"] == -1


def test_rt_witness_examples():
    v = rt_witness(x / 2, ["x"])
    assert str(v) == "comp[x@1, p:2]" and val_eval(v, x / 2) == (0, -1)
    Qxy = parse_field("Q(x,y)")
    a, b = Qxy.gen("x"), Qxy.gen("y")
    v = rt_witness((a + b) / 3)
    assert str(v) == "comp[x@1, y@1, p:3]" and val_eval(v, (a + b) / 3)[-1] == -1
    v = rt_witness(1 / (x - 1))
    assert str(v) == "x@1" and val_eval(v, 1 / (x - 1)) == -1


def _random_poly(rng, field, names):
    """Integer-coefficient polynomial with constant term 1."""
    gens = [field.gen(n) for n in names]
    f = field(1)
    for _ in range(rng.randint(1, 4)):
        term = field(rng.randint(-5, 5))
        for g in gens:
            term = term * g ** rng.randint(1, 2)
        f = f + term
    return f


def _negative(value):
    if isinstance(value, tuple):
        return value < (0,) * len(value)
    return value < 0


@pytest.mark.parametrize("fname", ["Q(x)", "Q(x,y)", "F3(x,y)"])
def test_rt_membership_by_construction(fname):
    K = parse_field(fname)
    rng = random.Random(11)
    g0 = K.gen(K.variables[0])
    for _ in range(25):
        f = _random_poly(rng, K, K.variables)
        assert rt_member(f).member
        # a pole along g0 = -1 is never in R_T (unless g0 + 1 divides f)
        h = f / (g0 + 1)
        if not h.den.is_ground:
            assert not rt_member(h).member
            assert _negative(val_eval(rt_witness(h), h))
        if K.characteristic == 0:
            # constant term 1/7 is not an integer
            h = f / 7
            assert not rt_member(h).member
            assert _negative(val_eval(rt_witness(h), h))
