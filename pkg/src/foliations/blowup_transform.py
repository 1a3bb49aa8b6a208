"""Blow-up of a chart along {z1 = ... = zd = 0}.

Chart j (1-based) is sigma_j(u): z_j = u_j, z_i = u_j u_i for the other
i <= d, and z_i = u_i for i > d.  Pulling back X = sum P_i d/dz_i gives

    u_j'  = P_j(sigma)
    u_i'  = (P_i(sigma) - u_i P_j(sigma)) / u_j      (i <= d, i != j)
    u_i'  = P_i(sigma)                               (i > d)

and the strict transform is that field divided by the largest power of u_j
dividing every component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BranchNotSingular, ChartOutOfRange, NotSingularAlongCenter
from .exact_arith import MultiPoly
from .foliation_local import (
    CenterLocal,
    TypeTag,
    VectorField,
    assert_singular_along,
    chart_map,
    classify_center,
)


@dataclass(frozen=True)
class BlowupResult:
    pullback: VectorField
    ell: int
    strict: VectorField
    case_tag: TypeTag
    divisor_var: int
    chart: int

    @property
    def divisor_invariant(self) -> bool:
        """True when {u_j = 0} is invariant for the strict transform."""
        return self.strict.components[self.divisor_var].order_in(self.divisor_var) >= 1


@dataclass(frozen=True)
class BranchData:
    """A curve {u1 = 0, u_i = psi_i(u_n)} in chart 1 of a curve blow-up.

    ``psi`` lists psi_2 ... psi_{n-1} as polynomials in the last variable
    (stored in the n-variable ring).  ``chart`` is 1 for such a branch and
    2 for the chart-2 origin curve {v1 = v2 = 0}, which needs no recentering.
    """

    psi: tuple[MultiPoly, ...]
    chart: int = 1
    label: str = ""

    def images(self, n: int) -> list[MultiPoly]:
        """u as a function of the recentered v: u_i = v_i + psi_i(v_n)."""
        v = [MultiPoly.var(i, n) for i in range(n)]
        out = list(v)
        for k, p in enumerate(self.psi, start=1):
            out[k] = v[k] + p
        return out


def _check_chart(c: CenterLocal, chart: int) -> None:
    if not 1 <= chart <= c.d:
        raise ChartOutOfRange(f"chart must lie in 1..{c.d}, got {chart}")


def pullback_chart(F: VectorField, c: CenterLocal, chart: int) -> VectorField:
    _check_chart(c, chart)
    if not assert_singular_along(F, c):
        raise NotSingularAlongCenter("center is not contained in the singular set")
    n, d, j = F.n, c.d, chart - 1
    sigma = chart_map(n, d, chart)
    composed = [p.substitute(sigma) for p in F.components]
    u = [MultiPoly.var(i, n) for i in range(n)]
    comps = []
    for i in range(n):
        if i == j or i >= d:
            comps.append(composed[i])
        else:
            comps.append((composed[i] - u[i] * composed[j]).divide_monomial_power(j, 1))
    label = f"{F.chart_label}/blowup(d={d})chart{chart}"
    return VectorField(tuple(comps), F.degree, label)


def strict_transform(F: VectorField, c: CenterLocal, chart: int, seed: int = 0) -> BlowupResult:
    pb = pullback_chart(F, c, chart)
    j = chart - 1
    ell = int(min(p.order_in(j) for p in pb.components))
    strict = pb.with_components([p.divide_monomial_power(j, ell) for p in pb.components])
    cls = classify_center(F, c, seed)
    # The order along the divisor is intrinsic, so the closed form must agree.
    assert cls.ell == ell, f"pullback order {ell} disagrees with classification {cls.ell}"
    return BlowupResult(pb, ell, strict, cls.type_tag, j, chart)


def pullback_identity_holds(F: VectorField, c: CenterLocal, res: BlowupResult) -> bool:
    """Check D sigma_j(u) . (u_j^ell * strict) == X(sigma_j(u)) exactly."""
    n, d, j = F.n, c.d, res.chart - 1
    u = [MultiPoly.var(i, n) for i in range(n)]
    factor = u[j] ** res.ell
    v = [p * factor for p in res.strict.components]
    sigma = chart_map(n, d, res.chart)
    for i in range(n):
        target = F.components[i].substitute(sigma)
        if i == j or i >= d:
            image = v[i]
        else:
            image = u[i] * v[j] + u[j] * v[i]
        if image != target:
            return False
    return True


def branch_is_singular(Fs: VectorField, b: BranchData) -> bool:
    n = Fs.n
    imgs = b.images(n)
    imgs[0] = MultiPoly.zero(n)
    if b.chart == 2:
        imgs = [MultiPoly.var(i, n) for i in range(n)]
        imgs[0] = imgs[1] = MultiPoly.zero(n)
    else:
        for k, p in enumerate(b.psi, start=1):
            imgs[k] = p
    return all(p.substitute(imgs).is_zero() for p in Fs.components)


def recenter_on_branch(Fs: VectorField, b: BranchData) -> VectorField:
    """Move the branch curve to {v1 = ... = v_{n-1} = 0}.

    With u_i = v_i + psi_i(v_n) and R the composed components,
    v_i' = R_i - psi_i'(v_n) R_n for the shifted coordinates.
    """
    if not branch_is_singular(Fs, b):
        raise BranchNotSingular("branch curve is not contained in the singular set")
    n = Fs.n
    if b.chart == 2 or all(p.is_zero() for p in b.psi):
        return Fs
    imgs = b.images(n)
    R = [p.substitute(imgs) for p in Fs.components]
    comps = list(R)
    for k, p in enumerate(b.psi, start=1):
        if not p.is_zero():
            comps[k] = R[k] - p.derivative(n - 1) * R[n - 1]
    return Fs.with_components(comps, f"{Fs.chart_label}/recenter")


def permute_variables(F: VectorField, order: Sequence[int], label: str | None = None) -> VectorField:
    """Relabel coordinates: new variable k is old variable order[k]."""
    n = F.n
    pos = [0] * n
    for new, old in enumerate(order):
        pos[old] = new
    comps = [F.components[old].extend(n, pos) for old in order]
    return F.with_components(comps, label)


def translate_variable(F: VectorField, var: int, shift) -> VectorField:
    """Coordinates with z_var replaced by z_var + shift (a constant)."""
    n = F.n
    imgs = [MultiPoly.var(i, n) for i in range(n)]
    imgs[var] = imgs[var] + shift
    return F.with_components([p.substitute(imgs) for p in F.components])
