import pytest
import sympy

from pfisterkit.errors import EvenValue, HypothesisFailed, NotGeometric
from pfisterkit.fields import parse_field
from pfisterkit.poly import Poly
from pfisterkit.testforms import build_test_form, choose_parameters, keyprop_check, recheck
from pfisterkit.valuations import PadicValuation, PolyValuation

QT = parse_field("Q(t2)(x)")
FT = parse_field("F5(t2)(x)")
T2 = sympy.symbols("t2")


def _sym(a):
    return sympy.sympify(str(a).replace("^", "**"), locals={"t2": T2})


def _tame_symbol(a, b, p):
    """(a, b)_p for odd p from valuations and Legendre symbols (integers a, b)."""
    al, be = sympy.multiplicity(p, a), sympy.multiplicity(p, b)
    u, v = a // p ** al, b // p ** be
    sign = (-1) ** (al * be * ((p - 1) // 2))
    return sign * sympy.legendre_symbol(u % p, p) ** be * sympy.legendre_symbol(v % p, p) ** al


# -- parameters ---------------------------------------------------------


def test_choose_parameters_examples():
    p = choose_parameters(PolyValuation.xadic(QT, "x", 0))
    assert [str(u) for u in p.u] == ["t2"] and [str(t) for t in p.t] == ["t2^2 - t2"]
    p = choose_parameters(PolyValuation.xadic(FT, "x", 1))
    assert str(p.k1) == "F5(t2)" and p.u == ()
    w = PolyValuation(QT, "x", Poly(QT.coefficient_field("x"), [1, 0, 1], "x"))
    p = choose_parameters(w)
    r = p.residue_field.gen()
    assert r * r == p.residue_field(-1)


def test_choose_parameters_rejects_padic():
    with pytest.raises(NotGeometric):
        choose_parameters(PadicValuation(5))


# -- building -----------------------------------------------------------


@pytest.fixture(scope="module")
def q_spec():
    return build_test_form(PolyValuation.xadic(QT, "x", 0), QT.gen("x"))


def test_test_form_over_q_t2(q_spec):
    s = q_spec
    assert s.verdict.anisotropic and s.nice.nice
    a_d, a2, a1, a0 = s.entries
    assert str(a_d) == "x"
    # a2 = t2^2 - t2 - eps2 with eps2 an integer
    eps2 = int(s.eps[0])
    assert sympy.expand(_sym(a2) - (T2 ** 2 - T2 - eps2)) == 0
    # a2 is irreducible over Q and splits at the chosen prime
    disc = 1 + 4 * eps2
    assert not sympy.sqrt(disc).is_rational
    p = s.split_place.p
    assert sympy.ntheory.residue_ntheory.is_quad_residue(disc % p, p)
    # so <<a1, a0>> must be anisotropic at p, checked with the tame symbol
    assert _tame_symbol(int(_sym(a1)), int(_sym(a0)), p) == -1
    assert recheck(s).anisotropic


def test_even_value_rejected():
    x = QT.gen("x")
    with pytest.raises(EvenValue):
        build_test_form(PolyValuation.xadic(QT, "x", 0), x * x)


def test_test_form_over_f5_constants():
    x = FT.gen("x")
    s = build_test_form(PolyValuation.xadic(FT, "x", 0), x ** 3)
    assert s.verdict.anisotropic
    a_d, a1, a0 = s.entries
    assert str(a_d) == "x^3"
    # the residue pair <<a1, a0>> over F5(t2): some degree-one place has odd value of a1
    # and a nonsquare residue of the constant a0
    c0 = int(_sym(a0)) % 5
    poly = sympy.Poly(_sym(a1), T2, modulus=5)
    assert not sympy.ntheory.residue_ntheory.is_quad_residue(c0, 5)
    odd = [c for c in range(5) if _root_multiplicity(poly, c) % 2]
    assert odd
    assert recheck(s).anisotropic


def _root_multiplicity(poly, c):
    lin = sympy.Poly(T2 - c, T2, modulus=5)
    m = 0
    while not poly.is_zero:
        q, r = sympy.div(poly, lin)
        if not r.is_zero:
            break
        poly, m = q, m + 1
    return m


# -- keyprop ------------------------------------------------------------


def test_keyprop_examples(q_spec):
    x = QT.gen("x")
    rep = keyprop_check(q_spec, x)
    assert rep.passed and len(rep.checks) >= 3
    with pytest.raises(HypothesisFailed):
        keyprop_check(q_spec, 1)


def test_keyprop_cubic_precondition():
    x = FT.gen("x")
    s = build_test_form(PolyValuation.xadic(FT, "x", 0), x ** 3)
    assert keyprop_check(s, x * x).passed
    with pytest.raises(HypothesisFailed):
        keyprop_check(s, x)
