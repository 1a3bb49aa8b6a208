import random

import pytest
import sympy

from conftest import random_singular_field
from foliations import catalog
from foliations.blowup_transform import (
    BranchData,
    branch_is_singular,
    permute_variables,
    pullback_chart,
    pullback_identity_holds,
    recenter_on_branch,
    strict_transform,
    translate_variable,
)
from foliations.errors import BranchNotSingular, ChartOutOfRange, NotSingularAlongCenter
from foliations.exact_arith import MultiPoly, poly_parse
from foliations.foliation_local import CenterLocal, TypeTag, VectorField

W = CenterLocal(2)


def field(*texts):
    return VectorField.parse(texts, 0)


def sympy_pullback(F, d, chart):
    """Independent oracle: solve D sigma . v = X(sigma) with sympy."""
    n = F.n
    u = sympy.symbols(f"u1:{n + 1}")
    j = chart - 1
    sigma = [u[j] * u[i] if (i < d and i != j) else u[i] for i in range(n)]
    z = sympy.symbols(f"z1:{n + 1}")
    comps = []
    for p in F.components:
        expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(zz**e for zz, e in zip(z, ex))
                   for ex, c in p.items())
        comps.append(sympy.expand(sympy.sympify(expr).subs(dict(zip(z, sigma)), simultaneous=True)))
    J = sympy.Matrix([[sympy.diff(s, v) for v in u] for s in sigma])
    sol = J.LUsolve(sympy.Matrix(comps))
    return [sympy.factor(sympy.simplify(e)) for e in sol]


def to_sympy(p):
    u = sympy.symbols(f"u1:{p.nvars + 1}")
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(v**e for v, e in zip(u, ex))
               for ex, c in p.items())


def test_radial_field_chart_one():
    res = strict_transform(field("z1", "z2", "0"), W, 1)
    assert res.pullback.components[1].is_zero()
    assert res.ell == 1 and res.case_tag is TypeTag.DICRITICAL


def test_pullback_of_quadratic_field_against_oracle():
    F = field("z1^2", "z1*z2", "z2^2")
    pb = pullback_chart(F, W, 1)
    u = sympy.symbols("u1:4")
    assert [to_sympy(p) for p in pb.components] == [u[0] ** 2, 0, u[0] ** 2 * u[1] ** 2]
    oracle = sympy_pullback(F, 2, 1)
    assert all(sympy.simplify(a - to_sympy(b)) == 0 for a, b in zip(oracle, pb.components))


def test_random_pullbacks_against_sympy():
    rng = random.Random(5)
    for _ in range(12):
        n = rng.choice((3, 4))
        d = 2 if n == 3 else rng.choice((2, 3))
        F = random_singular_field(rng, n, d, 3)
        for chart in range(1, d + 1):
            pb = pullback_chart(F, CenterLocal(d), chart)
            oracle = sympy_pullback(F, d, chart)
            assert all(sympy.simplify(a - to_sympy(b)) == 0 for a, b in zip(oracle, pb.components))


def test_sanz_sancho_charts():
    F = catalog.sanz_sancho_field()
    one = strict_transform(F, W, 1)
    assert one.strict.components == tuple(poly_parse(t, 3) for t in ("z1^2", "z3 - 3/2*z1*z2", "z1*z2 - z1*z3 - 2*z1"))
    two = strict_transform(F, W, 2)
    v1, v2, v3 = (MultiPoly.var(i, 3) for i in range(3))
    expected = (
        v2 * v1 * v1 - v1 * v1 * (v3 - v2 / 2),
        v2 * (v1 * v3 - v1 * v2 / 2),
        v2 * (1 - v1 * (v3 + 2)),
    )
    assert two.strict.components == expected
    assert pullback_identity_holds(F, W, one) and pullback_identity_holds(F, W, two)


def test_chart_and_center_errors():
    with pytest.raises(ChartOutOfRange):
        strict_transform(catalog.sanz_sancho_field(), W, 3)
    with pytest.raises(NotSingularAlongCenter):
        pullback_chart(field("z1", "z2", "1"), W, 1)


def test_recentering():
    F = field("z1", "z1 + z2 + z1*z3", "z2")
    zero = BranchData((MultiPoly.zero(3),))
    assert recenter_on_branch(F, zero) == F
    G = field("z1", "z2 + z3 + z1", "z1*z3")        # singular along z1 = 0, z2 = -z3
    b = BranchData((-MultiPoly.var(2, 3),))
    assert branch_is_singular(G, b)
    R = recenter_on_branch(G, b)
    assert all(p.vanish_order(2) >= 1 for p in R.components)
    with pytest.raises(BranchNotSingular):
        recenter_on_branch(G, BranchData((MultiPoly.var(2, 3),)))


def test_permute_and_translate():
    F = field("z1", "z2^2", "z3 + 1")
    P = permute_variables(F, [0, 2, 1])
    assert P.components == (poly_parse("z1", 3), poly_parse("z2 + 1", 3), poly_parse("z3^2", 3))
    T = translate_variable(F, 2, -1)
    assert T.components[2] == poly_parse("z3", 3)
