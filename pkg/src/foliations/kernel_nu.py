"""The kernel nu(F, W, phi) and the Milnor-number identities built on it.

The kernel is a finite double sum over a = (a1, a2) and a Taylor order m:

    nu = -deg(W) * sum_{|a|=0}^{n-d} sum_{m=0}^{n-d-|a|}
             (-1)^delta * phi_a^{(m)}(l)/m! * (k-1)^m
             * sigma_{a1} * tau_{a2} * h_delta(k_1..k_d),

with delta = n - d - |a| - m.  Three polynomial families are supported:
``Phi`` (x^(n-d-a2) (1+x)^(d-a1)), ``Psi`` (((1+x)^(d-a1) - 1) x^(n-d-a2-1),
expanded so that no negative power appears) and ``Theta = Phi - Psi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

from .errors import DimensionMismatch, IndexOutOfRange, PreconditionError
from .exact_arith import MultiPoly, uni_from_coeffs
from .symmetric_chern import CIData, chern_coeffs, complete_symmetric


class Family(str, Enum):
    PHI = "Phi"
    PSI = "Psi"
    THETA = "Theta"

    @classmethod
    def parse(cls, text: "str | Family") -> "Family":
        if isinstance(text, Family):
            return text
        for fam in cls:
            if fam.value.lower() == str(text).lower():
                return fam
        raise PreconditionError(f"unknown kernel family {text!r}")


@dataclass(frozen=True)
class KernelFamily:
    tag: Family
    a1: int
    a2: int
    n: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "tag", Family.parse(self.tag))
        if not (0 <= self.a1 <= self.d and 0 <= self.a2 <= self.n - self.d):
            raise IndexOutOfRange(
                f"index a=({self.a1},{self.a2}) outside 0..{self.d} x 0..{self.n - self.d}"
            )


@dataclass(frozen=True)
class NuInput:
    k: int
    ell: int
    ci: CIData

    def __post_init__(self):
        if self.ell < 0:
            raise PreconditionError("ell must be non-negative")
        if self.k < 0:
            raise PreconditionError("foliation degree must be non-negative")


def _phi_coeffs(n: int, d: int, a1: int, a2: int) -> list[int]:
    shift = n - d - a2
    out = [0] * (shift + d - a1 + 1)
    for i in range(d - a1 + 1):
        out[shift + i] = comb(d - a1, i)
    return out


def _psi_coeffs(n: int, d: int, a1: int, a2: int) -> list[int]:
    # ((1+x)^e - 1) * x^(s-1) = sum_{i>=1} C(e,i) x^(i+s-1); the i=0 term cancels.
    e, s = d - a1, n - d - a2
    if e == 0:
        return [0]
    out = [0] * (e + s)
    for i in range(1, e + 1):
        out[i + s - 1] = comb(e, i)
    return out


def _family_coeffs(tag: Family, n: int, d: int, a1: int, a2: int) -> list[int]:
    if tag is Family.PHI:
        return _phi_coeffs(n, d, a1, a2)
    if tag is Family.PSI:
        return _psi_coeffs(n, d, a1, a2)
    phi, psi = _phi_coeffs(n, d, a1, a2), _psi_coeffs(n, d, a1, a2)
    size = max(len(phi), len(psi))
    return [
        (phi[i] if i < len(phi) else 0) - (psi[i] if i < len(psi) else 0)
        for i in range(size)
    ]


def kernel_poly(f: KernelFamily) -> MultiPoly:
    """The family member as a univariate polynomial in x."""
    return uni_from_coeffs(_family_coeffs(f.tag, f.n, f.d, f.a1, f.a2))


def _taylor_at(coeffs: list[int], ell: int, m: int) -> int:
    """phi^{(m)}(ell)/m!, i.e. the x^m coefficient of phi(x + ell)."""
    return sum(c * comb(i, m) * ell ** (i - m) for i, c in enumerate(coeffs) if i >= m)


def nu(family_tag, inp: NuInput) -> int:
    tag = Family.parse(family_tag)
    ci = inp.ci
    n, d, ks = ci.n, ci.d, ci.degrees
    cc = chern_coeffs(ci)
    total = 0
    for size in range(n - d + 1):
        for a1 in range(0, min(size, d) + 1):
            a2 = size - a1
            if a2 > n - d:
                continue
            coeffs = _family_coeffs(tag, n, d, a1, a2)
            weight = cc.sigma_at(a1) * cc.tau_at(a2)
            if not weight:
                continue
            for m in range(n - d - size + 1):
                delta = n - d - size - m
                total += (
                    (-1) ** delta
                    * _taylor_at(coeffs, inp.ell, m)
                    * (inp.k - 1) ** m
                    * weight
                    * complete_symmetric(delta, ks)
                )
    return -cc.deg_w * total


def _binom(p: int, q: int) -> int:
    return comb(p, q) if 0 <= q <= p else 0


def nu_gamma_oracle(inp: NuInput) -> int:
    """Second, independent evaluation of nu(Theta) via the Gamma triple sum.

    Computes N(M_1) - sum_{i=0}^n k^i, where N(M_1) is written as the
    binomial sum over j with Gamma_a^j = C(d-a1, j-|a|-1) - C(d-a1, j-|a|).
    """
    ci = inp.ci
    n, d, ks = ci.n, ci.d, ci.degrees
    cc = chern_coeffs(ci)
    ell, k = inp.ell, inp.k
    total = 0
    for size in range(n - d + 1):
        for a1 in range(0, min(size, d) + 1):
            a2 = size - a1
            if a2 > n - d:
                continue
            weight = cc.sigma_at(a1) * cc.tau_at(a2)
            if not weight:
                continue
            for j in range(size, n + 1):
                gamma = _binom(d - a1, j - size - 1) - _binom(d - a1, j - size)
                if not gamma:
                    continue
                for m in range(n - d - size + 1):
                    c = _binom(n - j, m)
                    if not c:
                        continue
                    delta = n - d - size - m
                    total += (
                        (-1) ** delta
                        * c
                        * gamma
                        * ell ** (n - j - m)
                        * (k - 1) ** m
                        * weight
                        * complete_symmetric(delta, ks)
                    )
    return cc.deg_w * total


def total_count(k: int, n: int) -> int:
    """sum_{i=0}^n k^i: singular points of a generic degree-k foliation on P^n."""
    return sum(k**i for i in range(n + 1))


@dataclass(frozen=True)
class MilnorReport:
    mu_lower_bound: int
    mu_after_blowup_delta: int
    sum_isolated_mu: int | None
    mu: int | None
    N_embedded: int | None


def milnor_report(inp: NuInput, N_embedded: int | None = None) -> MilnorReport:
    phi = nu(Family.PHI, inp)
    theta = nu(Family.THETA, inp)
    if N_embedded is None:
        return MilnorReport(-phi, theta, None, None, None)
    total = total_count(inp.k, inp.ci.n)
    return MilnorReport(-phi, theta, total + phi - N_embedded, -phi + N_embedded, N_embedded)


def special_counts(inp: NuInput) -> tuple[int, int]:
    """(N(E_1), N(M_1)) for a foliation special along W."""
    return -nu(Family.PSI, inp), total_count(inp.k, inp.ci.n) + nu(Family.THETA, inp)


def curve_remark_formula(k: int, ell: int, ci: CIData) -> int:
    """Closed form of nu(Theta) for curves (d = n - 1)."""
    if not ci.is_curve:
        raise DimensionMismatch(f"curve formula needs d = n-1, got d={ci.d}, n={ci.n}")
    n = ci.n
    cc = chern_coeffs(ci)
    chi, deg = cc.chi, cc.deg_w
    s = sum((1 + ell) ** j for j in range(n - 2))
    return chi * (s - ell**2 * (1 + ell) ** (n - 2)) + (1 + ell) ** (n - 2) * deg * (
        (n - n * ell - 2) * (k - 1) + (n + 1) * (ell**2 - ell)
    )


def point_case_theta0(n: int, ell: int) -> int:
    """(1+l)^n - sum_{j<n} (1+l)^j, the isolated-point closed form.

    For an isolated point (d = n, all k_j = 1) one has
    nu(Theta) = -point_case_theta0(n, ell).
    """
    return (1 + ell) ** n - sum((1 + ell) ** j for j in range(n))


@dataclass(frozen=True)
class BalanceReport:
    """Cross-check of a claimed Milnor number against the count identities.

    ``N_from_count`` is the embedded-point number forced by the count of
    other isolated points, ``mu_from_count`` the Milnor number it implies.
    ``consistent`` is False when the claimed value disagrees.
    """

    total: int
    mu_lower_bound: int
    isolated_elsewhere: int | None
    N_from_count: int | None
    mu_from_count: int | None
    mu_claimed: int | None
    N_claimed: int | None
    mu_from_N_claimed: int | None
    consistent: bool
    notes: tuple[str, ...]


def balance_report(
    inp: NuInput,
    isolated_elsewhere: int | None = None,
    mu_claimed: int | None = None,
    N_claimed: int | None = None,
) -> BalanceReport:
    total = total_count(inp.k, inp.ci.n)
    lower = -nu(Family.PHI, inp)
    notes = []
    n_count = mu_count = mu_from_n = None
    if isolated_elsewhere is not None:
        # total = (mu of W) + (other isolated points), mu = lower + N.
        mu_count = total - isolated_elsewhere
        n_count = mu_count - lower
    if N_claimed is not None:
        mu_from_n = lower + N_claimed
    consistent = True
    if mu_claimed is not None:
        for label, value in (("count", mu_count), ("claimed N", mu_from_n)):
            if value is not None and value != mu_claimed:
                consistent = False
                notes.append(f"mu via {label} = {value} differs from claimed {mu_claimed}")
    if mu_claimed is not None and mu_claimed < lower:
        consistent = False
        notes.append(f"claimed mu {mu_claimed} is below the lower bound {lower}")
    return BalanceReport(
        total, lower, isolated_elsewhere, n_count, mu_count,
        mu_claimed, N_claimed, mu_from_n, consistent, tuple(notes),
    )

