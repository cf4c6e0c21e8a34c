"""Hilbert symbols, local verdicts and the local-global table over Q.

Run with: python3 demos/local_global_tour.py
"""

from pfisterkit.fields import QQ
from pfisterkit.hilbert import e_invariant_2fold, hilbert_symbol, product_formula_check
from pfisterkit.lgp import isotropy_global, relevant_places
from pfisterkit.quadforms import DiagForm, PfisterPresentation, expand, isotropy_local
from pfisterkit.local_fields import Qp
from pfisterkit.valuations import PadicPlace, RealPlace

# Hilbert symbols of (-1, -1): nontrivial exactly at 2 and at the real place
for pl in (PadicPlace(2), PadicPlace(3), PadicPlace(5), RealPlace()):
    print(f"(-1, -1) at {pl.label():5s} = {hilbert_symbol(-1, -1, pl):+d}")
print("product formula holds:", product_formula_check(-1, -1))

# the 2-fold Pfister form <<5, 2>> = <1, -2, -5, 10>
q = expand(PfisterPresentation((5, 2)))
print("\n<<5, 2>> expands to", [str(c) for c in q.coeffs])
print("places to inspect:", relevant_places(q).labels())
for pl, s in e_invariant_2fold(5, 2, QQ):
    print(f"  symbol at {pl.label():5s}: {s:+d}")

# the symbol is -1 at 5, so Q_5 sees no zero while Q_7 does
for p in (5, 7):
    v = isotropy_local(q, Qp(p))
    print(f"over Q_{p}: {v.status}", "witness " + str([str(x) for x in v.witness]) if v.witness else "")

# global verdicts: a witness when one exists, a failing place otherwise
for cs in ((1, 1, -2), (1, 1, 1), (1, 1, -7), (3, 5, -2)):
    v = isotropy_global(DiagForm(cs, QQ))
    where = v.certificate.get("failing_place")
    print(f"\n<{', '.join(map(str, cs))}>: {v.status}",
          f"witness {tuple(map(str, v.witness))}" if v.witness else f"fails at {where.label()}")
