import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pfisterkit.errors import DyadicResidue, WrongCharacteristic, ZeroInput
from pfisterkit.fields import QQ, parse_field
from pfisterkit.finite_field import FiniteField
from pfisterkit.local_fields import LaurentField, Qp, Reals
from pfisterkit.oracles import hilbert_bruteforce, laurent_zero_bruteforce
from pfisterkit.quadforms import (Char2Form, DiagForm, PfisterPresentation, expand, isotropy_local,
                                  pfister_expand, pfister_expand_char2, principal_unit_isotropy_witness,
                                  represent_value, springer_decompose, witness_residual_value)
from pfisterkit.valuations import PadicPlace, PadicValuation, RealPlace

F5 = FiniteField(5)
L5 = LaurentField(F5)
u5 = L5.uniformizer


def coeff_strs(form):
    return [str(c) for c in form.coeffs]


# -- expansion ----------------------------------------------------------


def test_expansion_examples():
    assert coeff_strs(pfister_expand(PfisterPresentation((2,)))) == ["1", "-2"]
    assert coeff_strs(pfister_expand(PfisterPresentation((3, 2)))) == ["1", "-2", "-3", "6"]
    q = pfister_expand(PfisterPresentation((7, 1)))
    assert {"1", "-1"} <= set(coeff_strs(q))


def test_char2_expansion_examples():
    F2t = parse_field("F2(t)")
    t = F2t.gen("t")
    a0 = t ** 2 + t + 1
    assert [str(b) for b in pfister_expand_char2(PfisterPresentation((a0,), F2t)).blocks] == ["1"]
    assert [str(b) for b in pfister_expand_char2(PfisterPresentation((t, a0), F2t)).blocks] == ["1", "t"]
    blocks = pfister_expand_char2(PfisterPresentation((t, t + 1, a0), F2t)).blocks
    assert sorted(map(str, blocks)) == sorted(["1", "t + 1", "t", "t^2 + t"])


def test_presentation_rejects_zero_and_wrong_characteristic():
    with pytest.raises(ZeroInput):
        PfisterPresentation((3, 0))
    F2t = parse_field("F2(t)")
    with pytest.raises(WrongCharacteristic):
        pfister_expand(PfisterPresentation((F2t.gen("t"), F2t(1)), F2t))


# -- Springer -----------------------------------------------------------


def test_springer_examples():
    # residues live in F_5 and print as 0..4
    split = springer_decompose(DiagForm((L5.one, -u5), L5), L5)
    assert [int(c) for c in split.unit_form.coeffs] == [1]
    assert [int(c) for c in split.uniformizer_form.coeffs] == [4]
    split = springer_decompose(DiagForm((Fraction(1), Fraction(-2)), QQ), Qp(5))
    assert [int(c) for c in split.unit_form.coeffs] == [1, 3] and not split.uniformizer_form.coeffs
    split = springer_decompose(DiagForm(tuple(map(Fraction, (1, -5, -2, 10))), QQ), Qp(5))
    assert [int(c) for c in split.unit_form.coeffs] == [1, 3]
    assert [int(c) for c in split.uniformizer_form.coeffs] == [4, 2]


def test_springer_refuses_dyadic_residue():
    with pytest.raises(DyadicResidue):
        springer_decompose(DiagForm((Fraction(1), Fraction(1)), QQ), Qp(2))


# -- local verdicts -----------------------------------------------------


def test_local_examples():
    v = isotropy_local(DiagForm((1, 1, 1), QQ), Reals())
    assert v.anisotropic and v.certificate["kind"] == "SignCount"
    v = isotropy_local(DiagForm((1, 1, -1), QQ), Qp(7))
    assert v.isotropic and tuple(map(Fraction, v.witness)) == (1, 0, 1)
    eps = F5.first_nonsquare
    q = expand(PfisterPresentation((u5, L5(eps)), L5))
    v = isotropy_local(q, L5)
    assert v.anisotropic and v.certificate["kind"] == "ResidueDecomposition"


def test_pfister_u_eps_has_no_truncated_zero():
    # oracle: no primitive zero modulo u^8 (coefficients 1, -eps, -u, eps*u)
    eps = int(F5.first_nonsquare)
    cs = [[1], [(-eps) % 5], [0, 4], [0, eps]]
    assert laurent_zero_bruteforce(cs, 5, order=8, budget=20000) is None


nz = st.integers(-40, 40).filter(bool)


@given(nz, nz, nz, st.sampled_from([2, 3, 5, 7]))
def test_ternary_verdict_matches_bruteforce_symbol(a, b, c, p):
    # <a, b, c> is isotropic iff (-a c, -b c)_p = 1
    v = isotropy_local(DiagForm((a, b, c), QQ), PadicPlace(p))
    assert v.isotropic == (hilbert_bruteforce(-a * c, -b * c, p) == 1)
    if v.isotropic:
        assert witness_residual_value(DiagForm((a, b, c), QQ), v.witness, Qp(p)) >= 8


@given(st.lists(nz, min_size=2, max_size=5), st.sampled_from([2, 3, 5, 7]))
def test_witnesses_vanish_to_working_precision(cs, p):
    q = DiagForm(tuple(Fraction(c) for c in cs), QQ)
    v = isotropy_local(q, Qp(p))
    if v.isotropic:
        assert witness_residual_value(q, v.witness, Qp(p)) >= 8
        if all(isinstance(c, Fraction) for c in v.witness) and q.evaluate(v.witness) == 0:
            y = represent_value(q, Fraction(7), list(v.witness))
            assert q.evaluate(y) == 7


@given(st.lists(nz, min_size=1, max_size=4))
def test_real_verdict_is_sign_rule(cs):
    v = isotropy_local(DiagForm(tuple(cs), QQ), RealPlace())
    assert v.isotropic == (min(cs) < 0 < max(cs))


# -- finite fields by enumeration ----------------------------------------


def _enumerated_isotropic(form, F):
    els = list(F.elements())
    for vec in itertools.product(els, repeat=form.dim):
        if any(x != F.zero for x in vec) and form.evaluate(vec) == F.zero:
            return True
    return False


@pytest.mark.parametrize("p", [3, 5, 7])
def test_odd_finite_field_verdicts_by_enumeration(p):
    F = FiniteField(p)
    for cs in itertools.product(range(1, p), repeat=2):
        q = DiagForm(tuple(F(c) for c in cs), F)
        assert isotropy_local(q, F).isotropic == _enumerated_isotropic(q, F)
    q = DiagForm((F(1), F(1), F(1)), F)
    v = isotropy_local(q, F)
    assert v.isotropic and q.evaluate(v.witness) == F.zero


@pytest.mark.parametrize("k", [1, 2, 3])
def test_char2_finite_field_verdicts_by_enumeration(k):
    F = FiniteField(2, k)
    for a0 in F.elements():
        q = Char2Form((F.one,), a0, F)
        v = isotropy_local(q, F)
        assert v.isotropic == _enumerated_isotropic(q, F)
        if v.isotropic:
            assert q.evaluate(v.witness) == F.zero
    # two blocks are always isotropic over a finite field
    for a0 in F.elements():
        assert isotropy_local(Char2Form((F.one, F.one), a0, F), F).isotropic


# -- Laurent fields against truncated brute force -------------------------


series = st.tuples(st.integers(0, 2), st.lists(st.integers(0, 4), min_size=1, max_size=3))


@given(st.lists(series, min_size=1, max_size=4))
def test_laurent_verdict_is_consistent_with_truncated_search(raw):
    cs = [[0] * e + [max(1, d[0] % 5)] + [x % 5 for x in d[1:]] for e, d in raw]
    q = DiagForm(tuple(L5.series(c) for c in cs), L5)
    v = isotropy_local(q, L5)
    zero = laurent_zero_bruteforce(cs, 5, order=6, budget=1500)
    if zero is not None:
        assert v.isotropic
    if v.isotropic and v.witness is not None:
        assert witness_residual_value(q, v.witness, L5) >= 6


def test_char2_laurent_verdicts():
    F2 = FiniteField(2)
    L2 = LaurentField(F2)
    u = L2.uniformizer
    # x^2 + xy + y^2 is anisotropic over F_2; the u-scaled copy keeps it anisotropic
    q = Char2Form((L2.one, u), L2.one, L2)
    assert isotropy_local(q, L2).anisotropic
    # two unit blocks: the residue form has dimension 4 over F_2, hence isotropic
    q = Char2Form((L2.one, L2.one), L2.one, L2)
    v = isotropy_local(q, L2)
    assert v.isotropic and witness_residual_value(q, v.witness, L2) >= 8


# -- principal units ----------------------------------------------------


def test_principal_unit_examples():
    x = principal_unit_isotropy_witness(Fraction(1), Fraction(2), PadicValuation(5))
    q = expand(PfisterPresentation((Fraction(1), Fraction(2))))
    assert q.evaluate(x) == 0
    e1 = L5.one + u5
    x = principal_unit_isotropy_witness(e1, L5(2), L5)
    q = expand(PfisterPresentation((e1, L5(2)), L5))
    assert witness_residual_value(q, x, L5) >= 8
    x = principal_unit_isotropy_witness(Fraction(6), Fraction(2), PadicPlace(5))
    q = expand(PfisterPresentation((Fraction(6), Fraction(2))))
    assert witness_residual_value(q, x, Qp(5)) >= 8


@given(st.integers(-30, 30), st.integers(1, 40), st.sampled_from([3, 5, 7]))
def test_principal_unit_witness_property(m, e0, p):
    e1 = Fraction(1 + p * m)
    if e0 % p == 0 or e1 == 0:
        return
    x = principal_unit_isotropy_witness(e1, Fraction(e0), PadicPlace(p))
    q = expand(PfisterPresentation((e1, Fraction(e0))))
    assert witness_residual_value(q, x, Qp(p)) >= 8
