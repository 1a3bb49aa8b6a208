"""
Kernels, Milnor numbers and special counts for a line in P^3
=============================================================

A degree-3 foliation whose singular set contains the line {z1 = z2 = 0}.
We evaluate the three kernels, read off the lower bound for the Milnor
number and the counts after one blow-up, then confirm them on an explicit
dicritical field.
"""

from foliations import CIData, Family, NuInput, chern_coeffs, nu
from foliations.catalog import dicritical_cubic_field
from foliations.foliation_local import CenterLocal, classify_center
from foliations.kernel_nu import nu_gamma_oracle, special_counts, milnor_report

# The line is the complete intersection of two hyperplanes.
line = CIData(3, 2, (1, 1))
cc = chern_coeffs(line)
print("deg =", cc.deg_w, " chi =", cc.chi, " Lambda0 =", cc.lambda0)

# Order of annulment 1 after the special deformation.
inp = NuInput(k=3, ell=1, ci=line)
for fam in Family:
    print(f"nu({fam.value}) = {nu(fam, inp)}")
print("independent triple sum:", nu_gamma_oracle(inp))

# Without knowing the embedded points we only get a bound; with N = 12 we get mu.
print("mu >=", milnor_report(inp).mu_lower_bound)
print("mu with N = 12:", milnor_report(inp, 12).mu)
print("(N(E1), N(M1)) =", special_counts(inp))

# A concrete field with a radial quadratic part: the line is dicritical and
# the pullback is divisible by the square of the divisor equation.
cls = classify_center(dicritical_cubic_field(), CenterLocal(2))
print(cls.type_tag.value, "ell =", cls.ell, "ell after deformation =", cls.ell_kernel)
