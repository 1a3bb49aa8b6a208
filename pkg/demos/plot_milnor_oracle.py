"""
Milnor numbers by linear algebra, and special deformations
==========================================================

``local_milnor`` counts standard monomials of the local algebra by exact
elimination in the truncated quotients, stopping once one more degree
changes nothing.  ``build_deformation`` then perturbs a field so that the
center becomes special.
"""

from foliations.catalog import dicritical_cubic_field, sanz_sancho_field
from foliations.exact_arith import poly_parse
from foliations.foliation_local import CenterLocal, classify_center
from foliations.milnor_oracle import build_deformation, local_milnor

for texts in [("z1^2", "z2^2", "z3^2"), ("z1^2 + z2^3", "z1*z2", "z3^2"), ("z1*z2", "z1^2 + z2^2", "z3^4")]:
    rep = local_milnor([poly_parse(t, 3) for t in texts])
    print(texts, "mu =", rep.mu, " truncated dimensions", rep.dimensions)

W = CenterLocal(2)
F = dicritical_cubic_field()
spec = build_deformation(F, W, seed=0)
print("targets", spec.targets, "checked at t =", spec.certified_at)
before, after = classify_center(F, W), classify_center(spec.specialize(spec.certified_at), W)
print(f"{before.type_tag.value} ell={before.ell}  ->  {after.type_tag.value} ell={after.ell}")

# With order of annulment 0 the center stops being singular but stays invariant.
print("targets", build_deformation(sanz_sancho_field(), W).targets)
