import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pfisterkit.errors import NotFound, StageMismatch
from pfisterkit.fields import QQ, parse_field
from pfisterkit.finite_field import FiniteField
from pfisterkit.poly import Poly
from pfisterkit.valuations import (CompositeValuation, DegreeValuation, LaurentTower, PadicPlace, PadicValuation,
                                   PolyValuation, compose_vals, finite_support, gauss_extend, hensel_witness,
                                   residue_of, val_eval)

Qx = parse_field("Q(x)")
x = Qx.gen("x")


def test_val_eval_examples():
    assert val_eval(PadicValuation(5), 50) == 2
    assert val_eval(PolyValuation.xadic(Qx, "x", 0), x ** 3 / (x + 1)) == 3
    v1 = PolyValuation.xadic(Qx, "x", 1)
    comp = compose_vals([v1, PadicValuation(2)])
    assert val_eval(comp, x / 2) == (0, -1)
    assert val_eval(comp, Qx(0)) == math.inf


def test_residue_examples():
    r = residue_of(PadicValuation(5), Fraction(7, 3))
    assert int(r) % 5 == 4
    assert residue_of(PolyValuation.xadic(Qx, "x", 0), (1 + x) / (1 - x)) == 1
    F3t = parse_field("F3(t)")
    t = F3t.gen("t")
    r = residue_of(DegreeValuation(F3t, "t"), (t ** 2 + 1) / t ** 2)
    assert r == FiniteField(3).one


def test_gauss_examples():
    g2 = gauss_extend(PadicPlace(2), ["x"])
    assert val_eval(g2, 2 * x + 4) == 1
    assert val_eval(gauss_extend(PadicPlace(3), ["x"]), x ** 2 + 3) == 0
    assert val_eval(g2, (2 * x + 4) / (6 * x)) == 0


def test_compose_examples():
    v = PolyValuation.xadic(Qx, "x", 0)
    assert compose_vals([v]) is v
    comp = compose_vals([v, PadicValuation(3)])
    assert val_eval(comp, 3 * x) == (1, 1)
    assert val_eval(comp, x / 3) == (1, -1)


def test_composite_rejects_stage_on_wrong_field():
    F5x = parse_field("F5(x)")
    with pytest.raises(StageMismatch):
        CompositeValuation([PolyValuation.xadic(Qx, "x", 0), PolyValuation.xadic(F5x, "x", 0)])


def test_hensel_examples():
    t2 = Poly(QQ, [-2, 0, 1], "t")
    root, rep = hensel_witness(t2, PadicValuation(7))
    assert int(root) % 7 in (3, 4)
    with pytest.raises(NotFound):
        hensel_witness(t2, PadicValuation(5))
    root, _ = hensel_witness(Poly(QQ, [-1, -1, 1], "t"), PadicValuation(11))
    assert int(root) % 11 in (4, 8)


def test_poly_place_of_degree_two():
    v = PolyValuation(Qx, "x", Poly(QQ, [1, 0, 1], "x"))
    assert v.valuation((x ** 2 + 1) ** 3 / x) == 3
    # residue field Q(i): the residue of x squares to -1
    r = v.unit_residue(x)
    assert r * r == v.residue_field(-1)


def test_finite_support_is_canonical():
    F5t = parse_field("F5(t)")
    t = F5t.gen("t")
    places = finite_support([t * (t ** 2 + 2), 1 / (t - 1)], F5t)
    # degree first, then coefficients in symmetric representation (-1 before 0)
    assert [p.label() for p in places] == ["poly:t - 1", "poly:t", "poly:t^2 + 2"]
    assert [p.p for p in finite_support([Fraction(10, 21)], QQ)] == [2, 3, 5, 7]


def test_laurent_tower_embeds_by_stage():
    K = parse_field("Q(t2)(x)")
    tw = LaurentTower(PolyValuation.xadic(K, "x", 0), 8)
    exps, res = tw.embed(K.gen("x") ** 3 * (K.gen("t2") + 1))
    assert exps[0] == 3
    assert str(res) == "t2 + 1"


# -- valuation axioms ---------------------------------------------------

coeff = st.integers(-6, 6)
poly = st.lists(coeff, min_size=1, max_size=4).filter(any)


def _elt(num, den):
    n = sum((c * x ** i for i, c in enumerate(num)), Qx(0))
    d = sum((c * x ** i for i, c in enumerate(den)), Qx(0))
    return n / d


@given(poly, poly, poly, poly, st.sampled_from([0, 1, -2]))
def test_valuation_axioms_on_q_x(n1, d1, n2, d2, center):
    v = PolyValuation.xadic(Qx, "x", center)
    a, b = _elt(n1, d1), _elt(n2, d2)
    assert val_eval(v, a * b) == val_eval(v, a) + val_eval(v, b)
    if a + b != 0:
        assert val_eval(v, a + b) >= min(val_eval(v, a), val_eval(v, b))
    deg = DegreeValuation(Qx, "x")
    assert val_eval(deg, a * b) == val_eval(deg, a) + val_eval(deg, b)


@given(poly, poly, poly, poly)
def test_composite_is_lexicographic_homomorphism(n1, d1, n2, d2):
    comp = compose_vals([PolyValuation.xadic(Qx, "x", 1), PadicValuation(3)])
    a, b = _elt(n1, d1), _elt(n2, d2)
    va, vb = val_eval(comp, a), val_eval(comp, b)
    vab = val_eval(comp, a * b)
    assert vab == tuple(i + j for i, j in zip(va, vb))
    if a + b != 0:
        assert val_eval(comp, a + b) >= min(va, vb)
