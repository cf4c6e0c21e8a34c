import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pfisterkit.errors import NotFound, UnsupportedField
from pfisterkit.fields import QQ, parse_field
from pfisterkit.lgp import divisor_witness_search, global_is_square, isotropy_global, relevant_places
from pfisterkit.oracles import hilbert_bruteforce, rational_zero_bruteforce
from pfisterkit.quadforms import DiagForm, PfisterPresentation
from pfisterkit.valuations import DegreeValuation, PolyValuation

# zero of x^2 + y^2 - 7 z^2 with height <= 50, by rational_zero_bruteforce
FROZEN_1_1_M7 = None


def test_relevant_places_examples():
    assert relevant_places(DiagForm((1, 1, -1), QQ)).labels() == ["p:2", "real"]
    assert relevant_places(DiagForm((1, -5, -2, 10), QQ)).labels() == ["p:2", "p:5", "real"]
    F3t = parse_field("F3(t)")
    t = F3t.gen("t")
    assert relevant_places(DiagForm((F3t(1), -t), F3t)).labels() == ["poly:t", "deg"]


def test_isotropy_global_examples():
    v = isotropy_global(DiagForm((1, 1, -2), QQ))
    assert v.isotropic and v.witness == (1, 1, 1)
    v = isotropy_global(DiagForm((1, 1, 1), QQ))
    assert v.anisotropic and v.certificate["failing_place"].label() == "real"
    v = isotropy_global(DiagForm((1, 1, -7), QQ), height_bound=50)
    assert v.isotropic == (FROZEN_1_1_M7 is not None)
    assert rational_zero_bruteforce([1, 1, -7], 50) == FROZEN_1_1_M7


def test_global_square_classes():
    assert global_is_square(Fraction(9, 4), QQ)
    assert not global_is_square(-1, QQ)
    F5t = parse_field("F5(t)")
    t = F5t.gen("t")
    assert global_is_square(4 * (t + 1) ** 2 / t ** 4, F5t)
    assert not global_is_square(2 * (t + 1) ** 2, F5t)
    assert not global_is_square(t, F5t)


def test_no_local_global_decision_over_q_x():
    Qx = parse_field("Q(x)")
    x = Qx.gen("x")
    with pytest.raises(UnsupportedField):
        isotropy_global(DiagForm((Qx(1), Qx(1), -x), Qx))


def test_ternary_verdicts_match_bruteforce_search():
    # for coefficients this small any rational zero has height <= 50;
    # checked against the oracle on every ternary form with entries in [-10, 10]
    R = [c for c in range(-10, 11) if c]
    for a, b, c in itertools.combinations_with_replacement(R, 3):
        v = isotropy_global(DiagForm((a, b, c), QQ), height_bound=50)
        assert v.isotropic == (rational_zero_bruteforce([a, b, c], 50) is not None), (a, b, c)


nz = st.integers(-30, 30).filter(bool)


@given(st.lists(nz, min_size=2, max_size=4))
def test_global_verdict_is_sound(cs):
    v = isotropy_global(DiagForm(tuple(cs), QQ), height_bound=30)
    if v.witness is not None:
        assert sum(c * x * x for c, x in zip(cs, v.witness)) == 0
    if rational_zero_bruteforce(cs, 12) is not None:
        assert v.isotropic


@given(st.sampled_from(["F3(t)", "F5(t)"]), st.lists(st.tuples(st.integers(1, 4), st.integers(0, 2),
                                                             st.integers(0, 4)), min_size=3, max_size=4))
def test_function_field_verdict_is_table_of_local_verdicts(fname, raw):
    K = parse_field(fname)
    t = K.gen("t")
    cs = tuple(K(c) * t ** e + K(s) for c, e, s in raw)
    if any(c == K.zero for c in cs):
        return
    form = DiagForm(cs, K)
    v = isotropy_global(form)
    rows = v.certificate["places"]
    assert v.isotropic == all(r["status"] == "isotropic" for r in rows)


# -- divisor witnesses --------------------------------------------------


Qx = parse_field("Q(x)")
x = Qx.gen("x")


def test_divisor_witness_at_x_adic_place():
    v, verdict = divisor_witness_search(PfisterPresentation((x, Qx(5), Qx(3)), Qx))
    assert str(v) == "x@0" and verdict.anisotropic
    # the residue form <<5, 3>> is anisotropic over Q: (5, 3)_3 = -1 by brute force
    assert hilbert_bruteforce(5, 3, 3) == -1
    assert isotropy_global(DiagForm((1, -5, -3, 15), QQ)).anisotropic


def test_divisor_witness_with_ad_equal_x():
    # tail <<2, 5>> is anisotropic at 5, so the x-adic residue decomposition certifies anisotropy
    v, verdict = divisor_witness_search(PfisterPresentation((x, Qx(2), Qx(5)), Qx))
    assert isinstance(v, PolyValuation) and verdict.anisotropic


def test_divisor_witness_constant_entries_not_found():
    with pytest.raises(NotFound):
        divisor_witness_search(PfisterPresentation((Qx(5), Qx(1), Qx(3)), Qx))


def test_divisor_witness_candidates_are_canonical():
    p = PfisterPresentation(((x + 1) * x, Qx(5), Qx(3)), Qx)
    v, verdict = divisor_witness_search(p)
    names = [row["place"] for row in verdict.certificate["candidates"]]
    assert names[0] == str(v)
    assert not isinstance(v, DegreeValuation) or len(names) > 1
