"""Command-line front end.

Field files are UTF-8 text::

    n=3
    degree=2
    P1 = z1^2
    P2 = -1/2*z1*z2 + z1*z3
    P3 = -2*z1 + z2 - z1*z3

Reports are ``key=value`` lines, or one JSON document with ``--json``.
Rationals are printed as ``p/q``.  Exit codes: 0 success, 2 parse error,
3 precondition violation, 4 mathematical inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import desing3, kernel_nu, milnor_oracle, tower
from .blowup_transform import BranchData, pullback_identity_holds, recenter_on_branch, strict_transform
from .errors import FoliationError, MathInconsistency, ParseError, PreconditionError
from .exact_arith import MultiPoly, poly_parse
from .foliation_local import CenterLocal, VectorField, classify_center, is_elementary, multiplicities
from .symmetric_chern import CIData

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INCONSISTENT = 0, 2, 3, 4


# -- field files ----------------------------------------------------------------

def parse_field_text(text: str) -> VectorField:
    header: dict[str, int] = {}
    comps: dict[int, str] = {}
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0].strip()
        start = offset
        offset += len(raw.encode("utf-8"))
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", start)
        key, value = (s.strip() for s in line.split("=", 1))
        if key in ("n", "degree"):
            try:
                header[key] = int(value)
            except ValueError:
                raise ParseError(f"{key} must be an integer", start) from None
        elif key[:1] == "P" and key[1:].isdigit():
            comps[int(key[1:])] = value
        else:
            raise ParseError(f"unknown key {key!r}", start)
    if "n" not in header:
        raise ParseError("missing header line n=<int>", 0)
    n = header["n"]
    if not 1 <= n <= 16:
        raise ParseError("n must lie in 1..16", 0)
    if sorted(comps) != list(range(1, n + 1)):
        raise ParseError(f"need components P1..P{n}, got {sorted(comps)}", 0)
    polys = tuple(poly_parse(comps[i], n) for i in range(1, n + 1))
    return VectorField(polys, header.get("degree", 0), "U")


def format_field(F: VectorField) -> str:
    lines = [f"n={F.n}", f"degree={F.degree}"]
    lines += [f"P{i} = {s}" for i, s in enumerate(F.to_strings(), start=1)]
    return "\n".join(lines) + "\n"


def _read_field(path: str) -> VectorField:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_field_text(text)


# -- output ---------------------------------------------------------------------

def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, MultiPoly):
        return value.to_string()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if hasattr(value, "value") and not isinstance(value, (int, str, bool)):
        return value.value
    return value


def _emit(report: dict[str, Any], as_json: bool, out) -> None:
    report = {k: _plain(v) for k, v in report.items()}
    if as_json:
        out.write(json.dumps(report, indent=2) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        out.write(f"{key}={value}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _default_seed() -> int:
    try:
        return int(os.environ.get("FOLIATION_SEED", "0"))
    except ValueError:
        return 0


def _center(F: VectorField, d: int | None) -> CenterLocal:
    c = CenterLocal(F.n - 1 if d is None else d)
    c.check(F.n)
    return c


def _nu_input(a) -> kernel_nu.NuInput:
    return kernel_nu.NuInput(a.k, a.ell, CIData(a.n, a.d, tuple(_int_list(a.degrees))))


# -- commands -------------------------------------------------------------------

def cmd_analyze(a) -> dict:
    F = _read_field(a.field)
    c = _center(F, a.d)
    m_prime, m, orders = multiplicities(F, c)
    cls = classify_center(F, c, a.seed)
    rep: dict[str, Any] = {
        "m": [m_prime, m],
        "orders": list(orders),
        "type": cls.type_tag,
        "dicritical": cls.dicritical,
        "ell": cls.ell,
        "ell_kernel": cls.ell_kernel,
        "verdict": is_elementary(F, c),
    }
    if F.n == 3 and c.d == 2:
        cd = desing3.extract_curve_data(F)
        e = desing3.eigen_data(cd)
        case = desing3.case_classify3(e)
        rep.update(trace=e.trace, det=e.det, delta=e.delta, case=case.tag,
                   elementary=desing3.elementary_ratio_test(e))
        if case.resonant:
            rep["resonance_n"] = case.resonant_n
        rep["obstruction_ss"] = desing3.detect_ss_obstruction(cd)
    return rep


def cmd_blowup(a) -> dict | str:
    F = _read_field(a.field)
    c = _center(F, a.d)
    res = strict_transform(F, c, a.chart, a.seed)
    Fs = res.strict
    if a.recenter:
        text = Path(a.recenter).read_text(encoding="utf-8").strip()
        psi = tuple(poly_parse(t, F.n) for t in text.split(";"))
        Fs = recenter_on_branch(Fs, BranchData(psi, 1, "file"))
    if a.field_out:
        return format_field(Fs)
    return {
        "chart": a.chart,
        "ell": res.ell,
        "type": res.case_tag,
        "divisor_invariant": res.divisor_invariant,
        "pullback_identity": pullback_identity_holds(F, c, res),
        **{f"P{i}": p for i, p in enumerate(Fs.components, start=1)},
    }


def cmd_nu(a) -> dict:
    inp = _nu_input(a)
    fams = [kernel_nu.Family.parse(a.family)] if a.family else list(kernel_nu.Family)
    return {f"nu_{f.value}" if len(fams) > 1 else "nu": kernel_nu.nu(f, inp) for f in fams}


def cmd_mu(a) -> dict:
    inp = _nu_input(a)
    rep = kernel_nu.milnor_report(inp, a.N)
    out = {"mu_lower_bound": rep.mu_lower_bound, "mu_after_blowup_delta": rep.mu_after_blowup_delta}
    if rep.mu is not None:
        out.update(mu=rep.mu, N=rep.N_embedded, other_isolated=rep.sum_isolated_mu)
    e1, m1 = kernel_nu.special_counts(inp)
    out.update(N_E1_special=e1, N_M1_special=m1)
    return out


def cmd_tower(a) -> dict:
    t = tower.TowerState(a.n, a.k, a.deg, a.chi, tuple(_int_list(a.ells)))
    j = t.j if a.at is None else a.at
    strict = not a.allow_fractions
    ci = tower.chern_integrals(t, j)
    rep: dict[str, Any] = {"lambda0": t.lambda0, "j": j}
    if ci.zeta_top is not None:
        rep["zeta_top"] = ci.zeta_top
    rep.update(e_on_w=ci.e_on_w, c1_tm=ci.c1_tm, c1_tf_star=ci.c1_tf_star)
    if j >= 1:
        rep["N_E"] = tower.n_on_divisor(t, j, strict)
    rep["N_M"] = tower.n_total(t, j, strict)
    if j < t.j or a.ell_next is not None:
        rep["mu_W"] = tower.mu_along(t, j, a.ell_next, a.N, a.literal_ellj, strict)
    if j < t.j:
        rep["a"] = tower.integrality_sequence(t, j)
    return rep


def cmd_bound(a) -> dict:
    lam = a.lambda0 if a.lambda0 is not None else (a.n + 1) * a.deg - a.chi
    b = tower.blowup_bound(a.n, lam, a.ell1, a.corollary_lambda_squared)
    rep = {"lambda0": lam, "bound": b}
    rep["first_nonintegral_level"] = tower.first_nonintegral_level(a.n, lam, a.ell1, max(64, 4 * b))
    return rep


def cmd_resolve(a) -> dict:
    F = _read_field(a.field)
    tr = desing3.resolve_curve(F, a.budget, a.mode, a.seed)
    rep: dict[str, Any] = {"outcome": tr.outcome, "outcome_step": tr.outcome_step}
    for s in tr.steps:
        key = f"step{s.level}"
        rep[f"{key}.path"] = s.chart_path
        if s.classification is not None:
            rep[f"{key}.type"] = s.classification.type_tag
            rep[f"{key}.ell"] = s.classification.ell
        rep[f"{key}.trace"] = s.eigen.trace
        rep[f"{key}.det"] = s.eigen.det
        rep[f"{key}.case"] = s.case.tag
        rep[f"{key}.elementary"] = s.elementary
    rep["notes"] = list(tr.notes)
    if tr.final_field is not None:
        rep.update({f"final.P{i}": p for i, p in enumerate(tr.final_field.components, start=1)})
    return rep


def cmd_oracle_milnor(a) -> dict:
    F = _read_field(a.field)
    r = milnor_oracle.local_milnor(list(F.components), a.max_degree)
    return {"mu": r.mu, "stabilized_at": r.stabilized_at, "certificate": r.certificate,
            "dimensions": list(r.dimensions)}


def cmd_deform(a) -> dict | str:
    F = _read_field(a.field)
    c = _center(F, a.d)
    spec = milnor_oracle.build_deformation(F, c, None, a.seed)
    if a.field_out:
        return format_field(spec.specialize(spec.certified_at if a.t is None else Fraction(a.t)))
    rep: dict[str, Any] = {"targets": list(spec.targets), "certified_at": spec.certified_at}
    rep.update({f"Y{i}": p for i, p in enumerate(spec.perturbation.components, start=1)})
    return rep


def cmd_selftest(a) -> dict:
    checked = failures = 0
    for n in range(3, 6):
        for d in range(2, n):
            for k in range(1, 6):
                for ell in range(5):
                    for degs in _degree_tuples(d, 3):
                        inp = kernel_nu.NuInput(k, ell, CIData(n, d, degs))
                        ok = kernel_nu.nu_gamma_oracle(inp) == kernel_nu.nu(kernel_nu.Family.THETA, inp)
                        if d == n - 1:
                            ok &= kernel_nu.curve_remark_formula(k, ell, inp.ci) == kernel_nu.nu(
                                kernel_nu.Family.THETA, inp)
                        checked += 1
                        failures += not ok
    return {"cells": checked, "failures": failures}


def _degree_tuples(d: int, top: int):
    if d == 0:
        yield ()
        return
    for rest in _degree_tuples(d - 1, top):
        lo = rest[-1] if rest else 1
        for k in range(lo, top + 1):
            yield rest + (k,)


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    seed = _default_seed()
    p = argparse.ArgumentParser(prog="foliations", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    sub = p.add_subparsers(dest="command", required=True)

    def field_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("field", help="field file, or - for standard input")
        sp.add_argument("--seed", type=int, default=seed)
        sp.set_defaults(func=func)
        return sp

    sp = field_cmd("analyze", cmd_analyze, "multiplicities, type and eigen data")
    sp.add_argument("--d", type=int, default=None, help="codimension of the center (default n-1)")
    sp = field_cmd("blowup", cmd_blowup, "strict transform in one chart")
    sp.add_argument("--chart", type=int, required=True)
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--recenter", help="file with psi_2;...;psi_{n-1}")
    sp.add_argument("--field-out", action="store_true", help="print the result as a field file")
    sp = field_cmd("resolve", cmd_resolve, "blow up a curve until it is elementary")
    sp.add_argument("--budget", type=int, default=10)
    sp.add_argument("--mode", choices=["curve", "fiber"], default="curve")
    sp = field_cmd("oracle-milnor", cmd_oracle_milnor, "Milnor number at the origin")
    sp.add_argument("--max-degree", type=int, default=12)
    sp = field_cmd("deform", cmd_deform, "special deformation along the center")
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--field-out", action="store_true")
    sp.add_argument("--t", default=None, help="specialization value (default: the certified one)")

    def ci_args(sp):
        for name in ("n", "d", "k", "ell"):
            sp.add_argument(f"--{name}", type=int, required=True)
        sp.add_argument("--degrees", required=True, help="comma-separated k_1,...,k_d")

    sp = sub.add_parser("nu", help="kernel value nu for one family")
    ci_args(sp)
    sp.add_argument("--family", choices=["phi", "psi", "theta"], default=None)
    sp.set_defaults(func=cmd_nu)
    sp = sub.add_parser("mu", help="Milnor number from the kernel and embedded points")
    ci_args(sp)
    sp.add_argument("--N", type=int, default=None)
    sp.set_defaults(func=cmd_mu)

    sp = sub.add_parser("tower", help="counts along a blow-up tower over a curve")
    for name in ("n", "k", "deg", "chi"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.add_argument("--ells", default="", help="comma-separated ell_1,ell_2,...")
    sp.add_argument("--at", type=int, default=None)
    sp.add_argument("--N", type=int, default=0, help="embedded points along W_j")
    sp.add_argument("--ell-next", type=int, default=None)
    sp.add_argument("--literal-ellj", action="store_true")
    sp.add_argument("--allow-fractions", action="store_true")
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("bound", help="bound on the number of blow-ups")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lambda0", type=int, default=None)
    sp.add_argument("--deg", type=int, default=1)
    sp.add_argument("--chi", type=int, default=2)
    sp.add_argument("--ell1", type=int, required=True)
    sp.add_argument("--corollary-lambda-squared", action="store_true")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("selftest", help="run the kernel invariant grid")
    sp.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        result = args.func(args)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except MathInconsistency as exc:
        err.write(f"inconsistency: {exc}\n")
        return EXIT_INCONSISTENT
    except (PreconditionError, FoliationError, OSError) as exc:
        err.write(f"precondition: {exc}\n")
        return EXIT_PRECONDITION
    if isinstance(result, str):
        out.write(result)
    else:
        _emit(result, args.json, out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
