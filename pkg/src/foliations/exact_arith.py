"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are :class:`fractions.Fraction` values, which already give the
lowest-terms, positive-denominator rational type this package needs.  A
polynomial is an immutable map from exponent tuples to nonzero coefficients.

Variable indices are 0-based in the Python API (``z1`` is index 0); the
textual form uses 1-based names ``z1 ... z16``.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotDivisible, ParseError

MAX_VARS = 16

Exponent = tuple[int, ...]
Scalar = int | Fraction


def _as_fraction(c: object) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _grlex_key(exp: Exponent) -> tuple:
    # Larger total degree first, then lexicographically larger exponent first.
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        if not 0 <= nvars <= MAX_VARS:
            raise ValueError(f"number of variables must be in 0..{MAX_VARS}, got {nvars}")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = _as_fraction(c)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
                    if not clean[exp]:
                        del clean[exp]
        self._nvars = nvars
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, c: Scalar, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: Scalar = 1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj._nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- basic accessors -------------------------------------------------
    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """A copy of the term map."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in canonical (graded-lex, descending) order."""
        for exp in sorted(self._terms, key=_grlex_key):
            yield exp, self._terms[exp]

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, var: int) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        return max((e[var] for e in self._terms), default=-1)

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, a in enumerate(e) if a}

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other: object) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other._nvars != self._nvars:
                raise ValueError(
                    f"variable count mismatch: {self._nvars} vs {other._nvars}"
                )
            return other
        return MultiPoly.constant(_as_fraction(other), self._nvars)

    def __add__(self, other: object) -> "MultiPoly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in o._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self._nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "MultiPoly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            try:
                c = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MultiPoly.zero(self._nvars)
            return MultiPoly._raw(self._nvars, {e: v * c for e, v in self._terms.items()})
        o = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self._nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "MultiPoly":
        """Division by a nonzero rational scalar only."""
        c = _as_fraction(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MultiPoly.constant(1, self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self._nvars == other._nvars and self._terms == other._terms
        try:
            c = _as_fraction(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self._terms
        return self._terms == {(0,) * self._nvars: c}

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    # -- algebraic operations ------------------------------------------
    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable ``i`` by ``images[i]`` and expand."""
        if len(images) != self._nvars:
            raise ValueError(
                f"substitute needs {self._nvars} images, got {len(images)}"
            )
        if self._nvars == 0:
            raise ValueError("cannot infer target ring for a 0-variable polynomial")
        m = images[0].nvars
        if any(img.nvars != m for img in images):
            raise ValueError("all images must share one variable count")
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(1, m)} for _ in images]

        def power(i: int, e: int) -> MultiPoly:
            cache = powers[i]
            if e not in cache:
                best = max(k for k in cache if k <= e)
                p = cache[best]
                for k in range(best + 1, e + 1):
                    p = p * images[i]
                    cache[k] = p
            return cache[e]

        out = MultiPoly.zero(m)
        for exp, c in self._terms.items():
            term = MultiPoly.constant(c, m)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate_vars(self, values: Mapping[int, Scalar]) -> "MultiPoly":
        """Set selected variables to rational constants (ring unchanged)."""
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            e = list(exp)
            for i, v in values.items():
                if e[i]:
                    c = c * _as_fraction(v) ** e[i]
                    e[i] = 0
            if c:
                t = tuple(e)
                s = out.get(t, 0) + c
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return MultiPoly._raw(self._nvars, out)

    def derivative(self, var: int) -> "MultiPoly":
        if not 0 <= var < self._nvars:
            raise IndexError(f"variable index {var} out of range")
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            if exp[var]:
                e = list(exp)
                e[var] -= 1
                out[tuple(e)] = c * exp[var]
        return MultiPoly._raw(self._nvars, out)

    def vanish_order(self, d: int) -> float | int:
        """Minimal total degree in the first ``d`` variables (``inf`` for 0)."""
        if not 1 <= d <= self._nvars:
            raise ValueError(f"d must lie in 1..{self._nvars}")
        if not self._terms:
            return inf
        return min(sum(e[:d]) for e in self._terms)

    def order_in(self, var: int) -> float | int:
        """Minimal exponent of a single variable (``inf`` for 0)."""
        if not self._terms:
            return inf
        return min(e[var] for e in self._terms)

    def divide_monomial_power(self, var: int, e: int) -> "MultiPoly":
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            if exp[var] < e:
                raise NotDivisible(MultiPoly._raw(self._nvars, {exp: c}).to_string())
            t = list(exp)
            t[var] -= e
            out[tuple(t)] = c
        return MultiPoly._raw(self._nvars, out)

    def homogeneous_part(self, d: int, degree: int) -> "MultiPoly":
        """Terms whose degree in the first ``d`` variables equals ``degree``."""
        return MultiPoly._raw(
            self._nvars, {e: c for e, c in self._terms.items() if sum(e[:d]) == degree}
        )

    def coefficients_in(self, var: int) -> dict[int, "MultiPoly"]:
        """Split as sum of ``var**k * c_k`` with ``c_k`` free of ``var``."""
        out: dict[int, dict[Exponent, Fraction]] = {}
        for exp, c in self._terms.items():
            e = list(exp)
            k = e[var]
            e[var] = 0
            out.setdefault(k, {})[tuple(e)] = c
        return {k: MultiPoly._raw(self._nvars, t) for k, t in out.items()}

    def extend(self, nvars: int, positions: Sequence[int] | None = None) -> "MultiPoly":
        """Embed into a ring with more variables; old var i goes to positions[i]."""
        positions = list(range(self._nvars)) if positions is None else list(positions)
        out = {}
        for exp, c in self._terms.items():
            e = [0] * nvars
            for i, a in enumerate(exp):
                e[positions[i]] += a
            out[tuple(e)] = c
        return MultiPoly(nvars, out)

    # -- printing ----------------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"z{i + 1}" for i in range(self._nvars)]
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.items():
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(exp) if a
            )
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"MultiPoly({self._nvars}, {self.to_string()!r})"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

class _Parser:
    """Recursive-descent parser for ``expr := term (('+'|'-') term)*``.

    A term is an optional rational coefficient followed by factors
    ``z<i>`` or ``z<i>^<k>`` joined by optional ``*``.  A leading sign is
    accepted on the first term.
    """

    def __init__(self, text: str, nvars: int, prefix: str = "z"):
        self.text = text
        self.pos = 0
        self.nvars = nvars
        self.prefix = prefix

    def error(self, msg: str) -> ParseError:
        offset = len(self.text[: self.pos].encode("utf-8"))
        return ParseError(msg, offset)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def parse(self) -> MultiPoly:
        if not self.text.strip():
            raise self.error("empty polynomial")
        total = MultiPoly.zero(self.nvars)
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        total = total + self.term() * sign
        while True:
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                raise self.error(f"unexpected character {ch!r}")
            self.pos += 1
            sign = -1 if ch == "-" else 1
            total = total + self.term() * sign
        return total

    def term(self) -> MultiPoly:
        coeff = Fraction(1)
        have_coeff = False
        if self.peek().isdigit():
            num = self.nat()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.nat()
                if den == 0:
                    raise self.error("denominator zero")
            coeff = Fraction(num, den)
            have_coeff = True
        exp = [0] * self.nvars
        have_factor = False
        while True:
            ch = self.peek()
            if ch == "*":
                if not (have_coeff or have_factor):
                    raise self.error("'*' without a left operand")
                self.pos += 1
                if self.peek() != self.prefix:
                    raise self.error("expected a variable after '*'")
                continue
            if ch != self.prefix:
                break
            self.pos += 1
            idx_pos = self.pos
            idx = self.nat()
            if not 1 <= idx <= self.nvars:
                self.pos = idx_pos
                raise self.error(
                    f"variable {self.prefix}{idx} out of range 1..{self.nvars}"
                )
            power = 1
            if self.peek() == "^":
                self.pos += 1
                power = self.nat()
            exp[idx - 1] += power
            have_factor = True
        if not (have_coeff or have_factor):
            raise self.error("expected a coefficient or a variable")
        return MultiPoly(self.nvars, {tuple(exp): coeff})


def poly_parse(text: str, num_vars: int, prefix: str = "z") -> MultiPoly:
    """Parse the canonical textual form (see module docstring for names)."""
    return _Parser(text, num_vars, prefix).parse()


# ---------------------------------------------------------------------------
# Free-function aliases matching the operation names used elsewhere
# ---------------------------------------------------------------------------

def substitute(p: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    return p.substitute(images)


def vanish_order(p: MultiPoly, d: int) -> float | int:
    return p.vanish_order(d)


def divide_monomial_power(p: MultiPoly, var: int, e: int) -> MultiPoly:
    return p.divide_monomial_power(var, e)


def derivative(p: MultiPoly, var: int) -> MultiPoly:
    return p.derivative(var)


def variables(nvars: int) -> list[MultiPoly]:
    return [MultiPoly.var(i, nvars) for i in range(nvars)]


# ---------------------------------------------------------------------------
# Univariate helpers (a UniPoly is a MultiPoly; the helpers act on one
# chosen variable and treat the polynomial as univariate in it).
# ---------------------------------------------------------------------------

def uni_coeffs(p: MultiPoly, var: int = 0) -> list[Fraction]:
    """Dense coefficient list (index = power) of a polynomial in ``var`` only."""
    if p.variables_used() - {var}:
        raise ValueError("polynomial involves more than the chosen variable")
    deg = p.degree_in(var)
    out = [Fraction(0)] * (deg + 1)
    for exp, c in p._terms.items():
        out[exp[var]] = c
    return out


def uni_from_coeffs(coeffs: Iterable[Scalar], nvars: int = 1, var: int = 0) -> MultiPoly:
    terms = {}
    for k, c in enumerate(coeffs):
        e = [0] * nvars
        e[var] = k
        terms[tuple(e)] = c
    return MultiPoly(nvars, terms)


def _trim(c: list[Fraction]) -> list[Fraction]:
    while c and not c[-1]:
        c.pop()
    return c


def uni_divmod(a: MultiPoly, b: MultiPoly, var: int = 0) -> tuple[MultiPoly, MultiPoly]:
    """Euclidean division of polynomials in one variable ``var``."""
    bc = _trim(uni_coeffs(b, var))
    if not bc:
        raise ZeroDivisionError("division by the zero polynomial")
    ac = _trim(uni_coeffs(a, var))
    q = [Fraction(0)] * max(len(ac) - len(bc) + 1, 0)
    while len(ac) >= len(bc) and ac:
        shift = len(ac) - len(bc)
        f = ac[-1] / bc[-1]
        q[shift] = f
        for i, c in enumerate(bc):
            ac[i + shift] -= f * c
        _trim(ac)
    n = a.nvars
    return uni_from_coeffs(q, n, var), uni_from_coeffs(ac, n, var)


def uni_exact_div(a: MultiPoly, b: MultiPoly, var: int = 0) -> MultiPoly | None:
    """Quotient when ``b`` divides ``a`` exactly, else ``None``."""
    q, r = uni_divmod(a, b, var)
    return q if r.is_zero() else None


def uni_gcd(a: MultiPoly, b: MultiPoly, var: int = 0) -> MultiPoly:
    """Monic gcd in one variable (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, uni_divmod(a, b, var)[1]
    if a.is_zero():
        return a
    lead = _trim(uni_coeffs(a, var))[-1]
    return a / lead


def _rational_sqrt(c: Fraction) -> Fraction | None:
    from math import isqrt

    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def uni_sqrt(p: MultiPoly, var: int = 0) -> MultiPoly | None:
    """Exact square root in Q[var] with positive leading coefficient, or None."""
    if p.is_zero():
        return p
    c = _trim(uni_coeffs(p, var))
    deg = len(c) - 1
    if deg % 2:
        return None
    half = deg // 2
    lead = _rational_sqrt(c[-1])
    if lead is None:
        return None
    # Determine the root's coefficients from the top down.
    r = [Fraction(0)] * (half + 1)
    r[half] = lead
    for k in range(half - 1, -1, -1):
        # coefficient of x^(half + k) in r^2 determines r[k]
        s = sum(r[i] * r[half + k - i] for i in range(k + 1, half + 1) if 0 <= half + k - i <= half)
        r[k] = (c[half + k] - s) / (2 * lead)
    root = uni_from_coeffs(r, p.nvars, var)
    return root if root * root == p else None
