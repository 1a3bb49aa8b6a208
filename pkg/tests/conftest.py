import random

import pytest

from foliations.exact_arith import MultiPoly
from foliations.foliation_local import VectorField

ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def record(number: int, title: str, ok: bool) -> None:
    ACCEPTANCE[number] = (title, ok)


def random_poly(rng: random.Random, n: int, max_deg: int, terms: int = 4) -> MultiPoly:
    out = MultiPoly.zero(n)
    for _ in range(terms):
        deg = rng.randint(0, max_deg)
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        out = out + MultiPoly.monomial(e, rng.randint(-5, 5))
    return out


def random_singular_field(rng: random.Random, n: int, d: int, max_deg: int = 4) -> VectorField:
    """Random field vanishing on {z1 = ... = zd = 0}."""
    comps = []
    for _ in range(n):
        p = MultiPoly.zero(n)
        while p.is_zero():
            p = sum(
                (MultiPoly.var(rng.randrange(d), n) * random_poly(rng, n, max_deg - 1, 3) for _ in range(2)),
                MultiPoly.zero(n),
            )
        comps.append(p)
    return VectorField(tuple(comps), max_deg, "R")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}")


@pytest.fixture
def rng():
    return random.Random(20261019)
