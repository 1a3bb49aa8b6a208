"""Local polynomial vector fields and classification of a coordinate center.

A center is the coordinate subspace W = {z1 = ... = zd = 0}.  The
classification follows the chart-1 blow-up: with m' the order of the first
d components and m the order of the whole field along W,

* TypeI      m + 1 == m'
* TypeII     m + 1 <  m'
* TypeIII    m == m' and some G_j = Q_j - u_j Q_1 is nonzero
* Dicritical m == m' and every G_j vanishes

where Q_i is the u1^{m'} coefficient of P_i in chart 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import inf
from typing import Sequence

from .errors import DegenerateField, NotSingularAlongCenter, PreconditionError, SeedExhausted
from .exact_arith import MultiPoly, poly_parse


@dataclass(frozen=True)
class VectorField:
    """X = sum_i P_i d/dz_i on an affine chart of P^n."""

    components: tuple[MultiPoly, ...]
    degree: int = 0
    chart_label: str = "U"

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        n = len(comps)
        if n == 0:
            raise PreconditionError("a vector field needs at least one component")
        if any(p.nvars != n for p in comps):
            raise PreconditionError("every component must live in n variables")
        if all(p.is_zero() for p in comps):
            raise DegenerateField("all components vanish identically")

    @property
    def n(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> MultiPoly:
        return self.components[i]

    def with_components(self, comps: Sequence[MultiPoly], label: str | None = None) -> "VectorField":
        return VectorField(tuple(comps), self.degree, self.chart_label if label is None else label)

    @classmethod
    def parse(cls, texts: Sequence[str], degree: int = 0, chart_label: str = "U", prefix: str = "z"):
        n = len(texts)
        return cls(tuple(poly_parse(t, n, prefix) for t in texts), degree, chart_label)

    def to_strings(self, names: Sequence[str] | None = None) -> list[str]:
        return [p.to_string(names) for p in self.components]


@dataclass(frozen=True)
class CenterLocal:
    d: int

    def check(self, n: int) -> None:
        if not 2 <= self.d <= n:
            raise PreconditionError(f"center codimension must satisfy 2 <= d <= n, got d={self.d}, n={n}")


class TypeTag(str, Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    DICRITICAL = "Dicritical"


class Verdict(str, Enum):
    ELEMENTARY = "Elementary"
    NON_ELEMENTARY = "NonElementary"


@dataclass(frozen=True)
class Classification:
    m_prime: int
    m_min: int
    dicritical: bool
    type_tag: TypeTag
    ell: int
    ell_kernel: int
    per_component: tuple = field(default=())
    g_polys: tuple = field(default=(), compare=False, repr=False)

    def check_invariants(self) -> None:
        m1, mn = self.m_prime, self.m_min
        assert mn <= m1
        tag = self.type_tag
        if tag is TypeTag.TYPE_I:
            assert mn + 1 == m1
        elif tag is TypeTag.TYPE_II:
            assert mn + 1 < m1
        elif tag is TypeTag.TYPE_III:
            assert mn == m1 and any(not g.is_zero() for g in self.g_polys)
        else:
            assert mn == m1 and all(g.is_zero() for g in self.g_polys)
        assert self.dicritical == (tag is TypeTag.DICRITICAL)
        if self.dicritical:
            assert self.ell == m1 and self.ell_kernel == self.ell - 1
        else:
            assert self.ell == min(m1 - 1, mn) and self.ell_kernel == self.ell


# ---------------------------------------------------------------------------

def assert_singular_along(F: VectorField, c: CenterLocal) -> bool:
    c.check(F.n)
    return all(p.vanish_order(c.d) >= 1 for p in F.components)


def _require_singular(F: VectorField, c: CenterLocal) -> None:
    if not assert_singular_along(F, c):
        raise NotSingularAlongCenter(
            f"{{z1=...=z{c.d}=0}} is not contained in the singular set"
        )


def multiplicities(F: VectorField, c: CenterLocal) -> tuple[int, int, tuple]:
    """(m', m, raw per-component orders) along the center."""
    _require_singular(F, c)
    orders = tuple(p.vanish_order(c.d) for p in F.components)
    m_prime = min(orders[: c.d])
    if m_prime == inf:
        raise DegenerateField("the first d components vanish identically")
    return int(m_prime), int(min(orders)), orders


# -- linear normalization ----------------------------------------------------

def _mat_inverse(a: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def apply_linear_change(F: VectorField, A: Sequence[Sequence[Fraction]]) -> VectorField:
    """Field expressed in w = A z: components A * P(A^{-1} w)."""
    n = F.n
    A = [[Fraction(x) for x in row] for row in A]
    inv = _mat_inverse(A)
    if inv is None:
        raise PreconditionError("linear change of coordinates is singular")
    w = [MultiPoly.var(i, n) for i in range(n)]
    images = [sum((w[j] * inv[i][j] for j in range(n) if inv[i][j]), MultiPoly.zero(n)) for i in range(n)]
    pulled = [p.substitute(images) for p in F.components]
    comps = [
        sum((pulled[j] * A[i][j] for j in range(n) if A[i][j]), MultiPoly.zero(n))
        for i in range(n)
    ]
    return F.with_components(comps)


def _normalized_ok(G: VectorField, d: int, m_prime: int, m_min: int) -> bool:
    orders = [p.vanish_order(d) for p in G.components]
    return all(o == m_prime for o in orders[:d]) and all(o == m_min for o in orders[d:])


def normalize_linear_with_matrix(F: VectorField, c: CenterLocal, seed: int = 0):
    """Normalize and also return the matrix A used (w = A z)."""
    m_prime, m_min, _ = multiplicities(F, c)
    n, d = F.n, c.d
    identity = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if _normalized_ok(F, d, m_prime, m_min):
        return F, identity
    rng = random.Random(seed)
    for _ in range(32):
        A = [row[:] for row in identity]
        for i in range(d):
            for j in range(d):
                A[i][j] = Fraction(rng.randint(-7, 7))
        for i in range(d, n):
            for j in range(d):
                A[i][j] = Fraction(rng.randint(-7, 7))
        if _mat_inverse(A) is None:
            continue
        G = apply_linear_change(F, A)
        if _normalized_ok(G, d, m_prime, m_min):
            return G, A
    raise SeedExhausted(
        f"no W-preserving linear change achieved orders ({m_prime} x {d}, {m_min} x {n - d})"
    )


def normalize_linear(F: VectorField, c: CenterLocal, seed: int = 0) -> VectorField:
    return normalize_linear_with_matrix(F, c, seed)[0]


# -- linear part ---------------------------------------------------------------

def jacobian_block(F: VectorField, c: CenterLocal) -> list[list[MultiPoly]]:
    d = c.d
    zero_first = {i: 0 for i in range(d)}
    return [
        [F.components[i].derivative(j).evaluate_vars(zero_first) for j in range(d)]
        for i in range(d)
    ]


def charpoly_coefficients(M: Sequence[Sequence[MultiPoly]]) -> list[MultiPoly]:
    """e_1 ... e_d with det(x I - M) = x^d - e_1 x^{d-1} + e_2 x^{d-2} - ...

    Computed by Newton's identities from traces of powers.
    """
    d = len(M)
    if d == 0:
        return []
    nv = M[0][0].nvars
    traces = []
    power = [row[:] for row in M]
    for k in range(1, d + 1):
        traces.append(sum((power[i][i] for i in range(d)), MultiPoly.zero(nv)))
        if k < d:
            power = [
                [sum((power[i][t] * M[t][j] for t in range(d)), MultiPoly.zero(nv)) for j in range(d)]
                for i in range(d)
            ]
    e = [MultiPoly.constant(1, nv)]
    for k in range(1, d + 1):
        acc = MultiPoly.zero(nv)
        for i in range(1, k + 1):
            term = e[k - i] * traces[i - 1]
            acc = acc + (term if i % 2 else -term)
        e.append(acc / k)
    return e[1:]


def is_elementary(F: VectorField, c: CenterLocal) -> Verdict:
    coeffs = charpoly_coefficients(jacobian_block(F, c))
    if any(not e.is_zero() for e in coeffs):
        return Verdict.ELEMENTARY
    return Verdict.NON_ELEMENTARY


# -- classification -----------------------------------------------------------

def chart_map(n: int, d: int, chart: int) -> list[MultiPoly]:
    """Images of z_1..z_n under the blow-up chart sigma_j (chart is 1-based)."""
    j = chart - 1
    u = [MultiPoly.var(i, n) for i in range(n)]
    return [u[i] if (i == j or i >= d) else u[j] * u[i] for i in range(n)]


def leading_g_polys(F: VectorField, d: int, m_prime: int) -> list[MultiPoly]:
    """G_i = Q_i - u_i Q_1, i = 2..d, from chart-1 leading parts in u1."""
    sigma = chart_map(F.n, d, 1)
    q = []
    for i in range(d):
        pulled = F.components[i].substitute(sigma)
        q.append(pulled.coefficients_in(0).get(m_prime, MultiPoly.zero(F.n)))
    u = [MultiPoly.var(i, F.n) for i in range(F.n)]
    return [q[i] - u[i] * q[0] for i in range(1, d)]


def classify_center(F: VectorField, c: CenterLocal, seed: int = 0) -> Classification:
    """Classification of W on the normalized form of F."""
    _, _, raw_orders = multiplicities(F, c)
    G = normalize_linear(F, c, seed)
    m_prime, m_min, _ = multiplicities(G, c)
    g_polys = tuple(leading_g_polys(G, c.d, m_prime))
    all_zero = all(g.is_zero() for g in g_polys)
    if m_min + 1 < m_prime:
        tag = TypeTag.TYPE_II
    elif m_min + 1 == m_prime:
        tag = TypeTag.TYPE_I
    elif all_zero:
        tag = TypeTag.DICRITICAL
    else:
        tag = TypeTag.TYPE_III
    dicritical = tag is TypeTag.DICRITICAL
    ell = m_prime if dicritical else min(m_prime - 1, m_min)
    cls = Classification(
        m_prime, m_min, dicritical, tag, ell, ell - 1 if dicritical else ell,
        raw_orders, g_polys,
    )
    cls.check_invariants()
    return cls
