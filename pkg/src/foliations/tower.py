"""Closed formulas along a blow-up tower over a smooth curve W0 in P^n.

The tower is described by the foliation degree k, the curve data
(deg W0, chi(W0)), Lambda0 = (n+1) deg - chi, and the orders of annulment
ell_1, ell_2, ... of the successive blow-ups.  All arithmetic is carried out
in exact rationals; counts that the theory guarantees to be integers are
checked when reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .errors import IndexOutOfRange, NonIntegerResult, PreconditionError, ZeroLambda


@dataclass(frozen=True)
class TowerState:
    n: int
    k: int
    deg_w: int
    chi: int
    ells: tuple[int, ...] = ()
    lambda0: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "ells", tuple(int(x) for x in self.ells))
        lam = (self.n + 1) * self.deg_w - self.chi
        if self.lambda0 is None:
            object.__setattr__(self, "lambda0", lam)
        elif self.lambda0 != lam:
            raise PreconditionError(f"lambda0 must equal (n+1)deg - chi = {lam}")
        if self.n < 3:
            raise PreconditionError("tower formulas need n >= 3")
        if any(x < 0 for x in self.ells):
            raise PreconditionError("orders of annulment are non-negative")

    @property
    def j(self) -> int:
        return len(self.ells)

    def ell(self, i: int) -> int:
        """ell_i with 1-based index."""
        if not 1 <= i <= len(self.ells):
            raise IndexOutOfRange(f"ell_{i} is not recorded (tower length {len(self.ells)})")
        return self.ells[i - 1]

    def extended(self, *more: int) -> "TowerState":
        return TowerState(self.n, self.k, self.deg_w, self.chi, self.ells + tuple(more))


@dataclass(frozen=True)
class ChernIntegrals:
    zeta_top: Fraction | None
    e_on_w: Fraction
    c1_tm: Fraction
    c1_tf_star: Fraction


def _weighted_sum(t: TowerState, upto: int) -> Fraction:
    """sum_{i=1}^{upto} ell_i / (n-1)^i."""
    return sum((Fraction(t.ell(i), (t.n - 1) ** i) for i in range(1, upto + 1)), Fraction(0))


def _cotangent_term(t: TowerState, upto: int) -> Fraction:
    """(k-1) deg - Lambda0 * sum_{i<=upto} ell_i/(n-1)^i."""
    return (t.k - 1) * t.deg_w - t.lambda0 * _weighted_sum(t, upto)


def _integral(what: str, value: Fraction, strict: bool):
    if not strict:
        return value
    if value.denominator != 1:
        raise NonIntegerResult(what, value)
    return int(value)


def chern_integrals(t: TowerState, j: int) -> ChernIntegrals:
    if not 0 <= j <= t.j:
        raise IndexOutOfRange(f"level {j} outside 0..{t.j}")
    n, lam = t.n, t.lambda0
    closed = ChernIntegrals(
        Fraction((-1) ** n * lam, (n - 1) ** (j - 1)) if j >= 1 else None,
        Fraction(lam, (n - 1) ** j),
        t.chi + Fraction(lam, (n - 1) ** j),
        _cotangent_term(t, j),
    )
    # Step recursion: normal-bundle degree drops by (n-2) E-integrals.
    normal = Fraction(lam)
    c1_tm = Fraction((n + 1) * t.deg_w)
    c1_tf = Fraction((t.k - 1) * t.deg_w)
    e_on_w = Fraction(lam)
    zeta = None
    for level in range(1, j + 1):
        zeta = (-1) ** n * normal
        e_on_w = (-1) ** n * zeta / (n - 1)
        normal = normal - (n - 2) * e_on_w
        c1_tm = c1_tm - (n - 2) * e_on_w
        c1_tf = c1_tf - t.ell(level) * e_on_w
    stepped = ChernIntegrals(zeta, e_on_w, c1_tm, c1_tf)
    assert stepped == closed, (stepped, closed)
    assert c1_tm - t.chi == normal
    return closed


def n_on_divisor(t: TowerState, j: int, strict: bool = True):
    """Singular points on E_j of the special deformation at level j."""
    if not 1 <= j <= t.j:
        raise IndexOutOfRange(f"need 1 <= j <= {t.j}")
    n, lj = t.n, t.ell(j)
    value = (
        t.chi * sum((lj + 1) ** i for i in range(n - 1))
        - lj * (1 + lj) ** (n - 2) * Fraction(t.lambda0, (n - 1) ** (j - 1))
        + (n - 1) * (lj + 1) ** (n - 2) * _cotangent_term(t, j - 1)
    )
    return _integral(f"N(E_{j})", value, strict)


def eta(t: TowerState, m: int, strict: bool = True):
    if not 1 <= m <= t.j:
        raise IndexOutOfRange(f"need 1 <= m <= {t.j}")
    n, lm = t.n, t.ell(m)
    value = (
        t.chi * (sum((1 + lm) ** i for i in range(n - 1)) - (1 + lm) ** (n - 1))
        + (1 + lm) ** (n - 2) * (lm**2 - lm) * Fraction(t.lambda0, (n - 1) ** (m - 1))
        - (1 + lm) ** (n - 2) * (n * lm - n + 2) * _cotangent_term(t, m - 1)
    )
    return _integral(f"eta_{m}", value, strict)


def n_total(t: TowerState, j: int, strict: bool = True):
    """Singular points on M_j of the special deformation at level j."""
    if not 0 <= j <= t.j:
        raise IndexOutOfRange(f"need 0 <= j <= {t.j}")
    value = sum(Fraction(t.k) ** i for i in range(t.n + 1)) + sum(
        (eta(t, m, strict=False) for m in range(1, j + 1)), Fraction(0)
    )
    return _integral(f"N(M_{j})", value, strict)


def mu_along(
    t: TowerState,
    j: int,
    ell_next: int | None = None,
    N_embedded: int = 0,
    literal_ellj: bool = False,
    strict: bool = True,
):
    """Milnor number of F_j along W_j.

    ``ell_next`` is ell_{j+1}; it defaults to the recorded value.  With
    ``literal_ellj`` the third term uses (1 + ell_j)^(n-2) instead of
    (1 + ell_{j+1})^(n-2); that variant is undefined at j = 0.
    """
    if not 0 <= j <= t.j:
        raise IndexOutOfRange(f"need 0 <= j <= {t.j}")
    if ell_next is None:
        ell_next = t.ell(j + 1)
    n, l1 = t.n, ell_next
    if literal_ellj:
        if j == 0:
            raise PreconditionError("the literal (1 + ell_j) variant has no ell_0")
        base = 1 + t.ell(j)
    else:
        base = 1 + l1
    value = (
        (1 + l1) ** (n - 1) * t.chi
        - l1**2 * (1 + l1) ** (n - 2) * Fraction(t.lambda0, (n - 1) ** j)
        + (n * l1 + 1) * base ** (n - 2) * _cotangent_term(t, j)
        + N_embedded
    )
    return _integral(f"mu(W_{j})", value, strict)


def mu_next_delta(t: TowerState, j: int, strict: bool = True):
    """mu(F_{j+1}, union of W^(j+1)) - mu(F_j, W_j)."""
    if not 0 <= j < t.j:
        raise IndexOutOfRange(f"need ell_{j + 1} recorded")
    n, l1 = t.n, t.ell(j + 1)
    value = (
        t.chi * (sum((1 + l1) ** i for i in range(n - 1)) - (1 + l1) ** (n - 1))
        + (l1**2 - l1) * (1 + l1) ** (n - 2) * Fraction(t.lambda0, (n - 1) ** j)
        - (n * l1 - n + 2) * (1 + l1) ** (n - 2) * _cotangent_term(t, j)
    )
    return _integral(f"delta mu at level {j}", value, strict)


def mu_next(t: TowerState, j: int, mu_j, strict: bool = True):
    value = Fraction(mu_j) + mu_next_delta(t, j, strict=False)
    return _integral(f"mu after blow-up {j + 1}", value, strict)


def integrality_sequence(t: TowerState, j: int) -> Fraction:
    """a_j, which must be a natural number for every level of a genuine tower."""
    n, l1 = t.n, t.ell(j + 1)
    return (l1 + 1) ** (n - 2) * t.lambda0 * (
        Fraction(l1**2, (n - 1) ** j) + (n * l1 + 1) * _weighted_sum(t, j)
    )


def floor_log(base: int, x: int) -> int:
    """Largest e with base**e <= x (exact integers, x >= 1)."""
    if base < 2 or x < 1:
        raise PreconditionError("floor_log needs base >= 2 and x >= 1")
    e, p = 0, base
    while p <= x:
        e += 1
        p *= base
    return e


def blowup_bound(n: int, lambda0: int, ell1: int, lambda_squared: bool = False) -> int:
    """Upper bound on the number of blow-ups before the order of annulment vanishes.

    Sum over ell = 1..ell1 of floor(log_{n-1}(ell (1+ell)^(n-2) (1+2 ell) |L|)),
    with L = Lambda0, or Lambda0^2 when ``lambda_squared`` is set.
    """
    if lambda0 == 0:
        raise ZeroLambda("Lambda0 = 0: the divisibility argument degenerates")
    if ell1 < 1:
        raise PreconditionError("ell1 must be at least 1")
    if n < 3:
        raise PreconditionError("need n >= 3")
    lam = lambda0**2 if lambda_squared else abs(lambda0)
    return sum(
        floor_log(n - 1, ell * (1 + ell) ** (n - 2) * (1 + 2 * ell) * lam)
        for ell in range(1, ell1 + 1)
    )


def first_nonintegral_level(n: int, lambda0: int, ell: int, max_levels: int = 200) -> int | None:
    """Smallest j >= 1 with a_j not an integer for the constant tower ell_i = ell."""
    deg_w, chi = 1, (n + 1) - lambda0  # any curve data with this Lambda0
    t = TowerState(n, 1, deg_w, chi, (ell,) * (max_levels + 1))
    for j in range(1, max_levels + 1):
        if integrality_sequence(t, j).denominator != 1:
            return j
    return None

