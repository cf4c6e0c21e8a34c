"""From a nice pair to a certified test form, then the recipe and the subring R_T.

Run with: python3 demos/test_forms_and_recipe.py
"""

from pfisterkit.fields import QQ, parse_field
from pfisterkit.nice import ExtensionDescriptor, nice_check, nice_construct
from pfisterkit.recipe import recipe_samples, recipe_verify, rt_member
from pfisterkit.testforms import build_test_form, keyprop_check, recheck
from pfisterkit.valuations import PadicPlace, PolyValuation

# a nice pair over Q that stays anisotropic over Q(i)
res = nice_construct(ExtensionDescriptor.quadratic(QQ, -1), (PadicPlace(3),))
print(f"nice pair (a1, a0) = ({res.a1}, {res.a0}), split place {res.split_place.label()}")
for row in nice_check(res.a1, res.a0).checked:
    print(f"  {row['place'].label():5s} {row['reason']:12s} {row['status']}")

# a test form for the x-adic divisor of Q(t2)(x)
K = parse_field("Q(t2)(x)")
x = K.gen("x")
w = PolyValuation.xadic(K, "x", 0)
spec = build_test_form(w, x)
print("\ntest form entries:", [str(a) for a in spec.entries])
print("accepted after", spec.attempts, "attempt(s); verdict", spec.verdict.status)
print("recheck at doubled precision:", recheck(spec).status)
rep = keyprop_check(spec, x)
print("keyprop with tau = x:", "passed" if rep.passed else "failed", f"({len(rep.checks)} thetas)")

# the recipe recovers the valuation ring of the x-adic place on samples
Fx = parse_field("F5(x)")
y = Fx.gen("x")
out = recipe_verify(PolyValuation.xadic(Fx, "x", 0), y ** 3, recipe_samples(Fx, y, 100, seed=1))
print("\nrecipe equality on 100 samples over F5(x):", out.passed)

# R_T membership with a composite-valuation witness for non-members
Qxy = parse_field("Q(x,y)")
a, b = Qxy.gen("x"), Qxy.gen("y")
for f in (a * b + 1, (a + b) / 3, 1 / (a - 1)):
    r = rt_member(f)
    print(f"{str(f):12s} in R_T: {r.member}", "" if r.member else f"witness {r.certificate['witness']}")
