"""Normal forms along a singular curve {z1 = z2 = 0} in dimension three.

The linear part of X in (z1, z2) is read off as

    P_i = z1 p_i0(z3) + z2 p_i1(z3) + (order >= 2),     i = 1, 2, 3

and the transverse 2x2 block [[p10, p11], [p20, p21]] drives everything:
its trace, determinant and discriminant decide the case, the branch curves
of the first blow-up, and the eigenvalues predicted after it.  The
resolution driver then blows up repeatedly along curves that project
isomorphically onto the previous center and stops once the transverse
linear part is elementary at generic points.

Polynomials in z3 are stored as 3-variable polynomials that only involve
the third variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import isqrt

from .blowup_transform import (
    BranchData,
    permute_variables,
    recenter_on_branch,
    strict_transform,
    translate_variable,
)
from .errors import (
    DegenerateField,
    HypothesisNotMet,
    NotSingularAlongCenter,
    PreconditionError,
    UnsupportedBranch,
)
from .exact_arith import MultiPoly, uni_coeffs, uni_exact_div, uni_gcd, uni_sqrt
from .foliation_local import CenterLocal, Classification, VectorField, classify_center

Z3 = 2  # index of the curve parameter
CURVE = CenterLocal(2)


@dataclass(frozen=True)
class CurveLocalData:
    p10: MultiPoly
    p11: MultiPoly
    p20: MultiPoly
    p21: MultiPoly
    p30: MultiPoly
    p31: MultiPoly
    higher: tuple[MultiPoly, ...]

    def linear_components(self) -> list[MultiPoly]:
        z1, z2 = MultiPoly.var(0, 3), MultiPoly.var(1, 3)
        return [
            z1 * self.p10 + z2 * self.p11,
            z1 * self.p20 + z2 * self.p21,
            z1 * self.p30 + z2 * self.p31,
        ]

    def reconstruct(self) -> list[MultiPoly]:
        return [a + b for a, b in zip(self.linear_components(), self.higher)]


@dataclass(frozen=True)
class EigenData:
    trace: MultiPoly
    det: MultiPoly
    delta: MultiPoly
    delta_sqrt: MultiPoly | None

    def __post_init__(self):
        assert self.delta == self.trace * self.trace - self.det * 4
        if self.delta_sqrt is not None:
            assert self.delta_sqrt * self.delta_sqrt == self.delta

    def eigenvalues(self) -> tuple[MultiPoly, MultiPoly] | None:
        """(lambda_1, lambda_2) = ((T - sqrt D)/2, (T + sqrt D)/2) when rational."""
        if self.delta_sqrt is None:
            return None
        return (self.trace - self.delta_sqrt) / 2, (self.trace + self.delta_sqrt) / 2


class Case3(str, Enum):
    DISTINCT = "CaseI_distinct"
    ONE_ZERO = "CaseII_oneZero"
    BOTH_ZERO = "CaseIII_bothZero"


@dataclass(frozen=True)
class EigenCase:
    tag: Case3
    trace_sq_over_det: Fraction | None = None
    resonant_n: int | None = None

    @property
    def resonant(self) -> bool:
        return self.resonant_n is not None


# ---------------------------------------------------------------------------

def extract_curve_data(F: VectorField) -> CurveLocalData:
    if F.n != 3:
        raise PreconditionError("curve normal forms are implemented for n = 3")
    if any(p.vanish_order(2) < 1 for p in F.components):
        raise NotSingularAlongCenter("{z1 = z2 = 0} is not contained in the singular set")
    lin: list[MultiPoly] = []
    higher: list[MultiPoly] = []
    for p in F.components:
        one = p.homogeneous_part(2, 1)
        higher.append(p - one)
        lin.append(one)
    coeffs = []
    for one in lin:
        c0 = MultiPoly(3, {(0, 0, e[2]): c for e, c in one.terms.items() if e[0] == 1})
        c1 = MultiPoly(3, {(0, 0, e[2]): c for e, c in one.terms.items() if e[1] == 1})
        coeffs += [c0, c1]
    cd = CurveLocalData(*coeffs, tuple(higher))
    assert cd.reconstruct() == list(F.components)
    return cd


def eigen_data(cd: CurveLocalData) -> EigenData:
    trace = cd.p10 + cd.p21
    det = cd.p10 * cd.p21 - cd.p11 * cd.p20
    delta = (cd.p10 - cd.p21) ** 2 + cd.p11 * cd.p20 * 4
    if det.is_zero():
        # One eigenvalue vanishes: the square root is the trace itself, which
        # fixes the labelling lambda_1 = 0, lambda_2 = trace.
        root = trace
    else:
        root = uni_sqrt(delta, Z3)
    return EigenData(trace, det, delta, root)


def _constant_ratio(a: MultiPoly, b: MultiPoly) -> Fraction | None:
    """c with a == c * b when such a constant exists (b nonzero)."""
    if a.is_zero():
        return Fraction(0)
    exp = max(b.terms, key=lambda e: e[Z3])
    c = a.coeff(exp) / b.coeff(exp)
    return c if a == b * c else None


def _is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    return isqrt(x.numerator) ** 2 == x.numerator and isqrt(x.denominator) ** 2 == x.denominator


def case_classify3(e: EigenData, resonance_bound: int = 64) -> EigenCase:
    if e.det.is_zero():
        return EigenCase(Case3.BOTH_ZERO if e.trace.is_zero() else Case3.ONE_ZERO)
    c = _constant_ratio(e.trace * e.trace, e.det)
    resonant = None
    if c is not None:
        # lambda_1 = q lambda_2 with (1 + q)^2 / q = c; resonance q = n or 1/n.
        for n in range(1, resonance_bound + 1):
            if Fraction((1 + n) ** 2, n) == c:
                resonant = n
                break
    return EigenCase(Case3.DISTINCT, c, resonant)


def ratio_in_positive_rationals(e: EigenData) -> bool:
    """Whether lambda_1/lambda_2 is a constant positive rational."""
    if e.det.is_zero():
        return False
    c = _constant_ratio(e.trace * e.trace, e.det)
    if c is None:
        return False
    # q + 1/q = c - 2 has positive rational roots iff c >= 4 and c(c-4) is a square.
    return c >= 4 and _is_rational_square(c * (c - 4))


def elementary_ratio_test(e: EigenData) -> bool:
    """Generic-point elementarity: some eigenvalue is nonzero and the
    eigenvalue ratio is not a constant positive rational."""
    if e.trace.is_zero() and e.det.is_zero():
        return False
    return not ratio_in_positive_rationals(e)


# -- branches of the first blow-up -------------------------------------------

def _div(num: MultiPoly, den: MultiPoly) -> MultiPoly | None:
    if den.is_zero():
        return None
    return uni_exact_div(num, den, Z3)


def branch_curves3(cd: CurveLocalData, e: EigenData | None = None) -> list[BranchData]:
    e = e or eigen_data(cd)
    if not cd.p11.is_zero():
        if e.delta_sqrt is None:
            raise UnsupportedBranch("discriminant is not a square in Q[z3]", {"delta": str(e.delta)})
        out = []
        for i in (1, 2):
            num = cd.p21 - cd.p10 + e.delta_sqrt * (-1) ** i
            psi = _div(num, cd.p11 * 2)
            if psi is None:
                raise UnsupportedBranch(
                    "branch is not polynomial in z3",
                    {"numerator": str(num), "denominator": str(cd.p11 * 2)},
                )
            out.append(BranchData((psi,), 1, f"psi_{i}"))
        return out
    out = []
    diff = cd.p21 - cd.p10
    if not diff.is_zero():
        psi = _div(-cd.p20, diff)
        if psi is None:
            raise UnsupportedBranch(
                "chart-1 branch is not polynomial in z3",
                {"numerator": str(-cd.p20), "denominator": str(diff)},
            )
        out.append(BranchData((psi,), 1, "psi_1"))
    out.append(BranchData((), 2, "chart2-origin"))
    return out


def post_blowup_eigen(cd: CurveLocalData, branch_index: int) -> tuple[MultiPoly, MultiPoly]:
    """Eigenvalue pair predicted on branch ``branch_index`` (1 or 2)."""
    if branch_index not in (1, 2):
        raise HypothesisNotMet("branch index must be 1 or 2")
    e = eigen_data(cd)
    case = case_classify3(e)
    if case.tag is Case3.BOTH_ZERO:
        raise HypothesisNotMet("both eigenvalues vanish: no prediction available")
    if cd.p11.is_zero():
        lam1, lam2 = cd.p10, cd.p21
        if branch_index == 1:
            return lam1, lam2 - lam1
        return lam1 - lam2, lam2
    if case.tag is Case3.ONE_ZERO:
        lam1 = e.trace
        zero = MultiPoly.zero(3)
        return (lam1, zero) if branch_index == 1 else (lam1, -lam1)
    lams = e.eigenvalues()
    if lams is None:
        raise HypothesisNotMet("eigenvalues are not rational functions of z3")
    li, lo = lams[branch_index - 1], lams[2 - branch_index]
    return li, lo - li


def eigen_pair_matches(F: VectorField, pair: tuple[MultiPoly, MultiPoly]) -> bool:
    """Compare the transverse linear part of F with a predicted eigenvalue pair."""
    e = eigen_data(extract_curve_data(F))
    a, b = pair
    return e.trace == a + b and e.det == a * b


def detect_ss_obstruction(cd: CurveLocalData) -> bool:
    if not (cd.p10.is_zero() and cd.p11.is_zero() and cd.p21.is_zero()):
        return False
    if cd.p20.is_zero() or cd.p20.degree_in(Z3) > 1:
        return False
    if cd.p31.is_zero():
        return False
    return uni_gcd(cd.p20, cd.p31, Z3).is_constant()


# -- the resolution driver ----------------------------------------------------

class Outcome(str, Enum):
    ELEMENTARY = "ElementaryReached"
    OBSTRUCTION = "ObstructionSS"
    BUDGET = "BudgetExceeded"
    NO_CURVE = "NoHomeomorphicCurve"


@dataclass(frozen=True)
class TraceStep:
    level: int
    chart_path: str
    center: str
    classification: Classification | None
    eigen: EigenData
    case: EigenCase
    elementary: bool
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ResolutionTrace:
    steps: tuple[TraceStep, ...]
    outcome: Outcome
    outcome_step: int
    notes: tuple[str, ...] = field(default=())
    final_field: VectorField | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return f"{self.outcome.value}({self.outcome_step})"


def _restrict_to_divisor(p: MultiPoly) -> MultiPoly:
    return p.evaluate_vars({0: 0})


def _root_candidates(f: MultiPoly) -> tuple[list[MultiPoly], bool]:
    """Polynomial roots u2 = psi(u3) of f(u2, u3); flag True if unsupported."""
    parts = f.coefficients_in(1)
    low = min(parts)
    cands = [MultiPoly.zero(3)] if low > 0 else []
    coeffs = {k - low: c for k, c in parts.items()}
    g = MultiPoly.zero(3)
    for c in coeffs.values():
        g = uni_gcd(g, c, Z3) if not g.is_zero() else c / uni_coeffs(c, Z3)[-1]
    coeffs = {k: uni_exact_div(c, g, Z3) for k, c in coeffs.items()}
    top = max(coeffs)
    zero = MultiPoly.zero(3)
    c0, c1, c2 = (coeffs.get(i, zero) for i in range(3))
    if top == 0:
        return cands, False
    if top == 1:
        psi = uni_exact_div(-c0, c1, Z3)
        return cands + ([psi] if psi is not None else []), False
    if top == 2:
        disc = c1 * c1 - c2 * c0 * 4
        root = uni_sqrt(disc, Z3)
        if root is None:
            return cands, False
        for sign in (1, -1):
            psi = uni_exact_div(-c1 + root * sign, c2 * 2, Z3)
            if psi is not None:
                cands.append(psi)
        return cands, False
    return cands, True


def homeomorphic_branches(F: VectorField, seed: int = 0):
    """Curves in the exceptional divisor that map isomorphically onto W.

    Returns (list of (description, recentered field)), annotations.
    """
    found = []
    notes = []
    chart1 = strict_transform(F, CURVE, 1, seed).strict
    restricted = [_restrict_to_divisor(p) for p in chart1.components]
    nonzero = [p for p in restricted if not p.is_zero()]
    if not nonzero:
        notes.append("exceptional divisor lies in the singular set in chart 1")
    else:
        cands: list[MultiPoly] = []
        unsupported = False
        for f in sorted(nonzero, key=lambda p: p.degree_in(1)):
            if f.degree_in(1) <= 0 and not f.is_zero():
                cands = []
                break
            more, flag = _root_candidates(f)
            unsupported |= flag
            for c in more:
                if c not in cands:
                    cands.append(c)
        if unsupported:
            notes.append("some branch equations have degree > 2 in the fiber variable")
        for psi in cands:
            b = BranchData((psi,), 1, f"u2={psi.to_string(['u1', 'u2', 'u3'])}")
            imgs = [MultiPoly.zero(3), psi, MultiPoly.var(2, 3)]
            if all(p.substitute(imgs).is_zero() for p in chart1.components):
                found.append((f"chart1 {b.label}", recenter_on_branch(chart1, b)))
    chart2 = strict_transform(F, CURVE, 2, seed).strict
    if all(p.vanish_order(2) >= 1 for p in chart2.components):
        found.append(("chart2 v1=v2=0", chart2))
    return found, notes


def fiber_step(F: VectorField, seed: int = 0) -> VectorField:
    """Blow up W and recenter on the fiber {u1 = 0, u3 = beta} over the root
    beta of an affine p20, with coordinates reordered so the new center is
    again {w1 = w2 = 0}."""
    cd = extract_curve_data(F)
    if cd.p20.degree_in(Z3) != 1:
        raise HypothesisNotMet("p20 must be affine to pick the fiber")
    a0, a1 = uni_coeffs(cd.p20, Z3)
    beta = -a0 / a1
    chart1 = strict_transform(F, CURVE, 1, seed).strict
    shifted = translate_variable(chart1, 2, beta)
    return permute_variables(shifted, [0, 2, 1], f"{chart1.chart_label}/fiber(u3={beta})")


def _step_record(F: VectorField, level: int, path: str, seed: int) -> TraceStep:
    cd = extract_curve_data(F)
    e = eigen_data(cd)
    case = case_classify3(e)
    notes = []
    try:
        cls = classify_center(F, CURVE, seed)
    except DegenerateField as exc:
        cls = None
        notes.append(f"classification skipped: {exc}")
    if case.tag is Case3.BOTH_ZERO and detect_ss_obstruction(cd):
        notes.append("obstruction pattern present (fiber blow-ups do not terminate)")
    if case.resonant:
        notes.append(f"resonance lambda1 = {case.resonant_n} lambda2")
    return TraceStep(level, path, "{z1=z2=0}", cls, e, case, elementary_ratio_test(e), tuple(notes))


def resolve_curve(
    F: VectorField,
    budget: int = 10,
    mode: str = "curve",
    seed: int = 0,
    min_budget: int | None = None,
) -> ResolutionTrace:
    """Blow up along {z1 = z2 = 0} until the center is elementary.

    ``mode="curve"`` follows curves homeomorphic to the base (preferring a
    non-elementary one when several exist).  ``mode="fiber"`` examines the
    fiber branch instead and stops with ``ObstructionSS`` when the
    non-terminating coefficient pattern is detected.
    """
    if mode not in ("curve", "fiber"):
        raise PreconditionError("mode must be 'curve' or 'fiber'")
    if min_budget is not None and budget < min_budget:
        raise PreconditionError(f"budget {budget} is below the required {min_budget}")
    steps: list[TraceStep] = []
    notes: list[str] = []
    current, path = F, "W0"
    base_m = None
    for level in range(budget + 1):
        rec = _step_record(current, level, path, seed)
        steps.append(rec)
        if rec.classification is not None:
            if base_m is None:
                base_m = rec.classification.m_min
            elif rec.classification.m_min > base_m + 1:
                notes.append(f"order bound exceeded at level {level}")
        if rec.elementary:
            return ResolutionTrace(tuple(steps), Outcome.ELEMENTARY, level, tuple(notes), current)
        if mode == "fiber":
            cd = extract_curve_data(current)
            if rec.case.tag is Case3.BOTH_ZERO and detect_ss_obstruction(cd):
                nxt = fiber_step(current, seed)
                again = detect_ss_obstruction(extract_curve_data(nxt))
                notes.append(f"pattern recurs on the fiber branch: {again}")
                return ResolutionTrace(tuple(steps), Outcome.OBSTRUCTION, level, tuple(notes), current)
        if level == budget:
            break
        try:
            branches, extra = homeomorphic_branches(current, seed)
        except UnsupportedBranch as exc:
            notes.append(f"level {level}: {exc}")
            branches, extra = [], []
        notes.extend(f"level {level}: {x}" for x in extra)
        if not branches:
            return ResolutionTrace(tuple(steps), Outcome.NO_CURVE, level, tuple(notes), current)
        choice = branches[0]
        for desc, fld in branches:
            if not elementary_ratio_test(eigen_data(extract_curve_data(fld))):
                choice = (desc, fld)
                break
        if len(branches) > 1:
            notes.append(f"level {level}: {len(branches)} homeomorphic curves, followed {choice[0]}")
        path = f"{path} > {choice[0]}"
        current = choice[1]
    return ResolutionTrace(tuple(steps), Outcome.BUDGET, budget, tuple(notes), current)


def follow_charts(F: VectorField, charts: list[int], seed: int = 0) -> list[VectorField]:
    """Successive strict transforms along the chart origins {u1 = u2 = 0}."""
    out = [F]
    for ch in charts:
        out.append(strict_transform(out[-1], CURVE, ch, seed).strict)
    return out
