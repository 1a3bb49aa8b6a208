"""Brute-force checks: local Milnor numbers and special deformations.

``local_milnor`` computes dim O_0 / (f_1, ..., f_n) through the truncated
quotients C[z] / (I + m^D).  Their dimensions are non-decreasing in D, and
equality at D and D + 1 means m^D lies in I + m^(D+1), hence (Nakayama) in
I itself; at that point the truncated dimension is the local one.  That
equality is the stabilization certificate.

Non-isolated zeros are recognized heuristically: if the cap is reached and
the last three increments are equal and positive, ``NotIsolated`` is
raised.  A slow isolated zero such as (z1^9, z2) also grows linearly for a
while, so a cap that is too low can misreport it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .errors import HypothesisNotMet, NotIsolated, NotStabilized, PreconditionError, SeedExhausted
from .exact_arith import MultiPoly
from .foliation_local import (
    CenterLocal,
    Classification,
    TypeTag,
    VectorField,
    assert_singular_along,
    classify_center,
)


@dataclass(frozen=True)
class MacaulayReport:
    mu: int
    stabilized_at: int
    certificate: bool
    dimensions: tuple[int, ...]


def _monomials_below(n: int, D: int) -> list[tuple[int, ...]]:
    out = []
    for deg in range(D):
        for combo in combinations_with_replacement(range(n), deg):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _rank(rows: list[dict[int, Fraction]]) -> int:
    """Rank of sparse rational rows by fraction-exact elimination."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                prow = pivots[col]
                f = row[col]
                for k, v in prow.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                lead = row[col]
                pivots[col] = {k: v / lead for k, v in row.items()}
                rank += 1
                break
    return rank


def truncated_dimension(components: Sequence[MultiPoly], D: int) -> int:
    """dim C[z] / (I + m^D)."""
    n = components[0].nvars
    monos = _monomials_below(n, D)
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    for f in components:
        low = f.vanish_order(n) if not f.is_zero() else D
        for mult in monos:
            if sum(mult) + low >= D:
                continue
            row = {}
            for e, c in f.terms.items():
                t = tuple(a + b for a, b in zip(e, mult))
                if sum(t) < D:
                    row[index[t]] = c
            if row:
                rows.append(row)
    return len(monos) - _rank(rows)


def local_milnor(components: Sequence[MultiPoly], max_degree: int = 12) -> MacaulayReport:
    if not components:
        raise PreconditionError("need at least one component")
    n = components[0].nvars
    if any(p.nvars != n for p in components):
        raise PreconditionError("components must share one ring")
    if any(not p.constant_term() == 0 for p in components):
        raise PreconditionError("components must vanish at the origin")
    dims = [truncated_dimension(components, 1)]
    for D in range(2, max_degree + 2):
        dims.append(truncated_dimension(components, D))
        if dims[-1] == dims[-2]:
            return MacaulayReport(dims[-1], D - 1, True, tuple(dims))
    diffs = [b - a for a, b in zip(dims, dims[1:])]
    if len(diffs) >= 3 and diffs[-1] == diffs[-2] == diffs[-3] > 0:
        raise NotIsolated(
            f"truncated dimensions grow linearly ({dims[-4:]}); the zero is not isolated"
        )
    raise NotStabilized(max_degree, dims[-1])


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeformationSpec:
    base: VectorField
    perturbation: VectorField
    targets: tuple[int, ...]
    certified_at: Fraction

    def specialize(self, t) -> VectorField:
        t = Fraction(t)
        comps = [a + b * t for a, b in zip(self.base.components, self.perturbation.components)]
        return self.base.with_components(comps, f"{self.base.chart_label}+t*Y(t={t})")


def deformation_targets(n: int, d: int, ell_kernel: int) -> tuple[int, ...]:
    return tuple([1 + ell_kernel] * d + [ell_kernel] * (n - d))


def _random_form(rng: random.Random, n: int, d: int, order: int, max_total: int) -> MultiPoly:
    """Random polynomial of order exactly ``order`` in z_1..z_d, total degree <= max_total."""
    out = MultiPoly.zero(n)
    first = list(combinations_with_replacement(range(d), order))
    for combo in first:
        e = [0] * n
        for i in combo:
            e[i] += 1
        coeff = MultiPoly.constant(rng.choice([-3, -2, -1, 1, 2, 3]), n)
        # a little dependence on the transverse variables, within the degree cap
        for j in range(d, n):
            if order + 1 <= max_total:
                coeff = coeff + MultiPoly.var(j, n) * rng.randint(-2, 2)
        out = out + MultiPoly.monomial(e) * coeff
    return out


def _certify(G: VectorField, c: CenterLocal, ell_kernel: int, seed: int) -> str | None:
    """None when G meets the deformation guarantees, else the failed item."""
    if ell_kernel == 0:
        d = c.d
        if any(p.vanish_order(d) < 1 for p in G.components[:d]):
            return "center is not invariant"
        if any(p.vanish_order(d) != 0 for p in G.components[d:]):
            return "transverse components do not vanish to order 0"
        return None
    if not assert_singular_along(G, c):
        return "center left the singular set"
    cls = classify_center(G, c, seed)
    if cls.type_tag is not TypeTag.TYPE_I:
        return f"type is {cls.type_tag.value}, expected TypeI"
    if any(g.is_zero() for g in cls.g_polys):
        return "some G_j vanishes identically"
    if cls.ell != ell_kernel:
        return f"order of annulment {cls.ell} != {ell_kernel}"
    return None


def build_deformation(
    F: VectorField, c: CenterLocal, cls: Classification | None = None, seed: int = 0
) -> DeformationSpec:
    """Perturbation Y with prescribed orders making X + tY special along W.

    The guarantees are checked at one random nonzero t; they are
    Zariski-open conditions in t, so they then hold for all but finitely
    many values.
    """
    if not assert_singular_along(F, c):
        raise PreconditionError("center is not contained in the singular set")
    cls = cls or classify_center(F, c, seed)
    n, d, k = F.n, c.d, F.degree
    targets = deformation_targets(n, d, cls.ell_kernel)
    if k and max(targets) > k:
        raise HypothesisNotMet(f"targets {targets} exceed the foliation degree {k}")
    cap = k if k else max(targets) + 1
    rng = random.Random(seed)
    failure = "no attempt made"
    for _ in range(32):
        Y = VectorField(
            tuple(_random_form(rng, n, d, q, cap) for q in targets), F.degree, "Y"
        )
        orders = [p.vanish_order(d) for p in Y.components]
        if list(orders) != list(targets) or max(p.total_degree() for p in Y.components) > cap:
            failure = "perturbation orders/degree"
            continue
        t0 = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        spec = DeformationSpec(F, Y, targets, t0)
        failure = _certify(spec.specialize(t0), c, cls.ell_kernel, seed)
        if failure is None:
            return spec
    raise SeedExhausted(f"deformation certificate failed: {failure}")
