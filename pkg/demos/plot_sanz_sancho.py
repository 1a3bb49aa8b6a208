"""
A curve that fiber blow-ups never resolve
=========================================

The field below has a nilpotent transverse linear part along {z1 = z2 = 0}.
Blowing up points of the fibers reproduces the same coefficient pattern
forever.  Following curves that project isomorphically onto the line
reaches an elementary curve after two blow-ups.
"""

from pathlib import Path

from foliations.blowup_transform import strict_transform
from foliations.cli import parse_field_text
from foliations.desing3 import CURVE, eigen_data, extract_curve_data, resolve_curve

F = parse_field_text((Path(__file__).parent / "fields" / "sanz_sancho.txt").read_text())

one = strict_transform(F, CURVE, 1)
print("chart 1:", one.strict.to_strings(["u1", "u2", "u3"]), "ell =", one.ell)
two = strict_transform(F, CURVE, 2)
print("chart 2:", two.strict.to_strings(["v1", "v2", "v3"]))

# Curve mode: follow the homeomorphic curves.
trace = resolve_curve(F)
print(trace)
for step in trace.steps:
    print(f"  level {step.level}: {step.chart_path:40s} {step.case.tag.value:18s} elementary={step.elementary}")
lam1, lam2 = eigen_data(extract_curve_data(trace.final_field)).eigenvalues()
print("final eigenvalues:", lam1, ",", lam2)

# Fiber mode: stop as soon as the repeating pattern is detected.
fiber = resolve_curve(F, mode="fiber")
print(fiber, fiber.notes)
