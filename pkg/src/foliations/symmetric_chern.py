"""Chern data of a complete intersection in projective space.

For W = Z(f_1, ..., f_d) in P^n with deg f_j = k_j, the normal bundle has
total Chern class prod(1 + k_j h) and the tangent bundle of W has
(1 + h)^(n+1) / prod(1 + k_j h).  Everything here is exact integer
arithmetic on truncated power series in the hyperplane class h.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, prod
from typing import Sequence

from .errors import PreconditionError


@dataclass(frozen=True)
class CIData:
    n: int
    d: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(k) for k in self.degrees))
        if not 2 <= self.d <= self.n:
            raise PreconditionError(f"need 2 <= d <= n, got d={self.d}, n={self.n}")
        if len(self.degrees) != self.d:
            raise PreconditionError(f"expected {self.d} degrees, got {len(self.degrees)}")
        if any(k < 1 for k in self.degrees):
            raise PreconditionError("hypersurface degrees must be >= 1")

    @classmethod
    def of(cls, n: int, degrees: Sequence[int]) -> "CIData":
        return cls(n, len(degrees), tuple(degrees))

    @property
    def is_curve(self) -> bool:
        return self.d == self.n - 1


@dataclass(frozen=True)
class ChernCoeffs:
    sigma: tuple[int, ...]
    tau: tuple[int, ...]
    deg_w: int
    chi: int | None
    lambda0: int | None

    def sigma_at(self, i: int) -> int:
        return self.sigma[i] if 0 <= i < len(self.sigma) else 0

    def tau_at(self, i: int) -> int:
        return self.tau[i] if 0 <= i < len(self.tau) else 0


def complete_symmetric(delta: int, ks: Sequence[int]) -> int:
    """h_delta(k_1, ..., k_d): sum of all monomials of degree delta."""
    if delta < 0:
        return 0
    # Dynamic programming over the variables keeps this polynomial-time.
    row = [1] + [0] * delta
    for k in ks:
        for e in range(1, delta + 1):
            row[e] += k * row[e - 1]
    return row[delta]


def complete_symmetric_bruteforce(delta: int, ks: Sequence[int]) -> int:
    """Direct enumeration, kept as an independent check."""
    if delta < 0:
        return 0
    total = 0
    for idx in product(range(delta + 1), repeat=len(ks)):
        if sum(idx) == delta:
            total += prod(k**i for k, i in zip(ks, idx))
    return total


def elementary_symmetric(ks: Sequence[int]) -> list[int]:
    """e_0 ... e_d as coefficients of prod(1 + k_j h)."""
    coeffs = [1]
    for k in ks:
        nxt = coeffs + [0]
        for i in range(len(coeffs), 0, -1):
            nxt[i] += k * coeffs[i - 1]
        coeffs = nxt
    return coeffs


def _series_divide(num: list[int], den: list[int], length: int) -> list[int]:
    """Truncated power-series quotient; den[0] must be 1."""
    assert den[0] == 1
    out = []
    for i in range(length):
        c = num[i] if i < len(num) else 0
        c -= sum(out[j] * den[i - j] for j in range(max(0, i - len(den) + 1), i))
        out.append(c)
    return out


def chern_coeffs(ci: CIData) -> ChernCoeffs:
    n, d, ks = ci.n, ci.d, ci.degrees
    sigma = elementary_symmetric(ks)
    ambient = [comb(n + 1, i) for i in range(n + 2)]
    tau = _series_divide(ambient, sigma, n - d + 1)
    deg_w = prod(ks)

    # Whitney identity, truncated in the degree range where tau lives.
    for i in range(n - d + 1):
        lhs = sum(tau[j] * (sigma[i - j] if i - j < len(sigma) else 0) for j in range(i + 1))
        assert lhs == ambient[i], "Whitney product identity failed"
    assert sum(sigma) == prod(1 + k for k in ks)

    chi = lambda0 = None
    if ci.is_curve:
        chi = tau[1] * deg_w
        lambda0 = (n + 1) * deg_w - chi
    return ChernCoeffs(tuple(sigma), tuple(tau), deg_w, chi, lambda0)
