"""Springer decomposition over F_5((u)) and principal-unit witnesses.

Run with: python3 demos/springer_and_towers.py
"""

from fractions import Fraction

from pfisterkit.finite_field import FiniteField
from pfisterkit.local_fields import LaurentField, Qp
from pfisterkit.quadforms import (DiagForm, PfisterPresentation, expand, isotropy_local,
                                  principal_unit_isotropy_witness, springer_decompose, witness_residual_value)
from pfisterkit.valuations import PadicPlace

F5 = FiniteField(5)
L = LaurentField(F5)
u = L.uniformizer
eps = F5.first_nonsquare
print("first nonsquare of F_5:", eps)

# <<u, eps>> = <1, -eps, -u, eps u>: both residue forms are <1, -eps>, anisotropic over F_5
q = expand(PfisterPresentation((u, L(eps)), L))
split = springer_decompose(q, L)
print("unit residues:       ", [int(c) for c in split.unit_form.coeffs])
print("uniformizer residues:", [int(c) for c in split.uniformizer_form.coeffs])
print("<<u, eps>> over F_5((u)):", isotropy_local(q, L).status)

# changing one residue class makes the unit form isotropic, and Hensel lifts the zero
q = DiagForm((L.one, L(-1), -u, L(eps) * u), L)
v = isotropy_local(q, L)
print("\n<1, -1, -u, eps u>:", v.status, "residual value", witness_residual_value(q, v.witness, L))

# principal units: <<1 + u, 2>> over F_5((u)) and <<6, 2>> over Q_5 are isotropic with explicit witnesses
e1 = L.one + u
x = principal_unit_isotropy_witness(e1, L(2), L)
form = expand(PfisterPresentation((e1, L(2)), L))
print("<<1 + u, 2>>: witness residual value", witness_residual_value(form, x, L))

x = principal_unit_isotropy_witness(Fraction(6), Fraction(2), PadicPlace(5))
form = expand(PfisterPresentation((Fraction(6), Fraction(2))))
print("<<6, 2>> over Q_5: witness residual value", witness_residual_value(form, x, Qp(5)))
