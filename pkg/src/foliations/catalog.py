"""Ready-made vector fields used by the tests and the demo scripts.

Each builder returns a :class:`VectorField` on the affine chart
{xi_3 != 0} of P^3 whose singular set contains the line {z1 = z2 = 0}.
Symbolic parameters are replaced by explicit rationals; "generic" choices
come from a seeded random generator, so results are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact_arith import MultiPoly
from .foliation_local import VectorField

_N = 3


def _v(i: int) -> MultiPoly:
    return MultiPoly.var(i, _N)


def _rand_poly_z3(rng: random.Random, degree: int, nonzero_lead: bool = True) -> MultiPoly:
    """Random polynomial of exactly the given degree in z3 (small integers)."""
    if degree < 0:
        return MultiPoly.zero(_N)
    coeffs = [rng.randint(-4, 4) for _ in range(degree + 1)]
    if nonzero_lead and coeffs[-1] == 0:
        coeffs[-1] = rng.choice([-3, -2, -1, 1, 2, 3])
    return sum((_v(2) ** e * c for e, c in enumerate(coeffs)), MultiPoly.zero(_N))


def _binary_form(rng, degree: int, coeff_degree: int, skip=()) -> MultiPoly:
    """sum_j z1^(degree-j) z2^j c_j(z3) with deg c_j = coeff_degree."""
    out = MultiPoly.zero(_N)
    for j in range(degree + 1):
        if j in skip:
            continue
        out = out + _v(0) ** (degree - j) * _v(1) ** j * _rand_poly_z3(rng, coeff_degree)
    return out


def dicritical_cubic_field(seed: int = 1) -> VectorField:
    """Degree-3 field with quadratic part tangent to the radial direction.

    X = (P2 + P3, Q2 + Q3, R2) with z1 Q2 - z2 P2 = 0, so the line is a
    dicritical center of multiplicity 2.
    """
    rng = random.Random(seed)
    z1, z2, z3 = _v(0), _v(1), _v(2)
    p20, p11 = Fraction(rng.randint(1, 5)), Fraction(rng.randint(1, 5))
    P2 = z1 * z1 * p20 + z1 * z2 * p11
    Q2 = z1 * z2 * p20 + z2 * z2 * p11

    def cubic():
        return sum(
            (z1 ** (3 - j) * z2**j * rng.randint(-3, 3) for j in range(4)), MultiPoly.zero(_N)
        )

    def affine():
        return z1 * rng.randint(-3, 3) + z2 * rng.randint(-3, 3) + z3 * rng.randint(1, 3) + rng.randint(-3, 3)

    R2 = sum((affine() * z1 ** (2 - j) * z2**j for j in range(3)), MultiPoly.zero(_N))
    return VectorField((P2 + cubic(), Q2 + cubic(), R2), 3, "U3")


def type_ii_quartic_field(seed: int = 2) -> VectorField:
    """Degree-4 field with P, Q of order 3 and R of order 1 along the line.

    Coefficients c_ij(z3) of the degree-i parts have degree 4 - i; the
    coefficient of z1^3 in Q and of z1 in R are zero.
    """
    rng = random.Random(seed)
    P = _binary_form(rng, 3, 1) + _binary_form(rng, 4, 0)
    Q = _binary_form(rng, 3, 1, skip=(0,)) + _binary_form(rng, 4, 0)
    R = _binary_form(rng, 1, 3, skip=(0,))
    for i in (2, 3, 4):
        R = R + _binary_form(rng, i, 4 - i)
    return VectorField((P, Q, R), 4, "U3")


def sanz_sancho_field(alpha=Fraction(1, 2), beta=Fraction(1), lam=Fraction(2)) -> VectorField:
    """z1^2 d1 + (-alpha z1 z2 + z1 z3) d2 + (-lam z1 + z2 - beta z1 z3) d3."""
    z1, z2, z3 = _v(0), _v(1), _v(2)
    return VectorField(
        (z1 * z1, -z1 * z2 * alpha + z1 * z3, -z1 * lam + z2 - z1 * z3 * beta), 2, "U3"
    )


def nilpotent_ladder_field(p20: MultiPoly | None = None, tail: int = 7) -> VectorField:
    """Linear part with only p20 (and p30) nonzero, plus high-order tails.

    Repeated chart-2 blow-ups of this field stay in the same regime, which
    is what the eigenvalue ladder (-(k-1) p20, k p20) describes.
    """
    z1, z2, z3 = _v(0), _v(1), _v(2)
    p20 = z3 if p20 is None else p20
    return VectorField((z2**tail, z1 * p20, z1 * z3 * z3 + z2 ** (tail - 1)), 2, "U3")


def one_zero_eigenvalue_field() -> VectorField:
    """Transverse linear part [[z3, 1], [z3, 1]]: determinant 0, trace z3 + 1."""
    z1, z2, z3 = _v(0), _v(1), _v(2)
    return VectorField((z1 * z3 + z2, z1 * z3 + z2, z2 + z1 * z1), 2, "U3")
