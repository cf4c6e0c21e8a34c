from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pfisterkit.errors import WrongCharacteristic, ZeroInput
from pfisterkit.fields import QQ, parse_field
from pfisterkit.nice import ExtensionDescriptor, nice_check, nice_construct, split_place_search
from pfisterkit.oracles import hilbert_bruteforce, splits_mod_p
from pfisterkit.valuations import PadicPlace, PolyPlace, place_valuation


def _vp(a, p):
    a = Fraction(a)
    return sympy.multiplicity(p, a.numerator) - sympy.multiplicity(p, a.denominator)


def _oracle_nice(a1, a0):
    """Nice over Q: local isotropy of <<a1, a0>> at 2, at the bad primes, and at the real place."""
    primes = {2} | {int(q) for n in (a1, a0) for q in sympy.factorint(abs(int(n)))}
    for p in primes:
        if (p == 2 or _vp(a0, p) != 0 or _vp(a1, p) < 0) and hilbert_bruteforce(a1, a0, p) != 1:
            return False
    return not (a1 < 0 and a0 < 0)


# -- nice_check ---------------------------------------------------------


def test_a0_equal_one_is_nice():
    for a1 in (2, -7, 15):
        assert nice_check(a1, 1).nice
    F3t = parse_field("F3(t)")
    assert nice_check(F3t.gen("t"), F3t(1)).nice


def test_two_five_matches_oracle():
    cert = nice_check(2, 5)
    assert [row["place"].label() for row in cert.checked] == ["p:2", "p:5", "real"]
    for row in cert.checked[:2]:
        assert row["symbol"] == hilbert_bruteforce(2, 5, row["place"].p)
    assert cert.nice == _oracle_nice(2, 5) is False


def test_t_eps_over_f3t_is_not_nice():
    F3t = parse_field("F3(t)")
    cert = nice_check(F3t.gen("t"), F3t(2))
    assert not cert.nice
    assert [(row["place"].label(), row["status"]) for row in cert.checked] == [("deg", "anisotropic")]


def test_nice_check_errors():
    with pytest.raises(ZeroInput):
        nice_check(0, 3)
    F2t = parse_field("F2(t)")
    with pytest.raises(WrongCharacteristic):
        nice_check(F2t.gen("t"), F2t(1))


# the symbol oracle counts solutions mod p^3, so keep the primes small
nz = st.integers(-60, 60).filter(lambda n: n and max(sympy.factorint(abs(n)) or [1]) <= 13)


@given(nz, nz)
def test_nice_check_matches_bruteforce_symbols(a1, a0):
    assert nice_check(a1, a0).nice == _oracle_nice(a1, a0)


# -- split places -------------------------------------------------------


def test_split_place_examples():
    assert split_place_search(ExtensionDescriptor.quadratic(QQ, -1)) == PadicPlace(5)
    assert split_place_search(ExtensionDescriptor.quadratic(QQ, 2)) == PadicPlace(7)
    F3t = parse_field("F3(t)")
    t = F3t.gen("t")
    assert split_place_search(ExtensionDescriptor.quadratic(F3t, t + 1)).label() == "poly:t"


@given(st.integers(-30, 30).filter(lambda d: d not in (0, 1, 4, 9, 16, 25)))
def test_split_place_is_first_prime_with_two_roots(d):
    if sympy.sqrt(d).is_rational:
        return
    ext = ExtensionDescriptor.quadratic(QQ, d)
    p = split_place_search(ext).p
    cs = [-d, 0, 1]
    assert splits_mod_p(cs, p)
    for q in sympy.primerange(2, p):
        assert not splits_mod_p(cs, q)


# -- construction -------------------------------------------------------


def _check_q_result(res, d, P):
    a1, a0 = Fraction(res.a1), Fraction(res.a0)
    assert _oracle_nice(a1, a0)
    p = res.split_place.p
    assert splits_mod_p([-d, 0, 1], p)
    # anisotropic at a split place, hence over the extension
    assert hilbert_bruteforce(a1, a0, p) == -1
    for pl in P:
        assert _vp(a1, pl.p) == 0 and _vp(a0, pl.p) == 0


def test_construct_gaussian():
    res = nice_construct(ExtensionDescriptor.quadratic(QQ, -1))
    assert res.split_place == PadicPlace(5)
    assert not sympy.ntheory.residue_ntheory.is_quad_residue(int(res.a0) % 5, 5)
    assert _vp(res.a1, 5) == 1
    _check_q_result(res, -1, ())


def test_construct_avoids_given_places():
    P = (PadicPlace(3),)
    res = nice_construct(ExtensionDescriptor.quadratic(QQ, 2), P)
    _check_q_result(res, 2, P)


@settings(max_examples=15)
@given(st.sampled_from([-1, 2, 3, -5, 7, -11]), st.sets(st.sampled_from([3, 5, 7, 11]), max_size=2))
def test_construct_property(d, primes):
    P = tuple(PadicPlace(p) for p in sorted(primes))
    res = nice_construct(ExtensionDescriptor.quadratic(QQ, d), P)
    _check_q_result(res, d, P)


def test_construct_over_f5t():
    K = parse_field("F5(t)")
    t = K.gen("t")
    res = nice_construct(ExtensionDescriptor.quadratic(K, t))
    assert isinstance(res.split_place, PolyPlace) and res.split_place.poly.degree == 1
    assert res.certificate.nice and res.anisotropy.anisotropic
    # t is a nonzero square in the residue field at the split place
    v = place_valuation(res.split_place, K)
    r = v.unit_residue(t)
    assert v.residue_field.is_square(r)
    assert nice_check(res.a1, res.a0, K).nice
