"""Command line interface.

Subcommands: check (witness + certificate + invariants for each
polynomial in a file), factor, fpt, matroid (exchange axiom plus the
basis polynomial pipeline), modify (the linear-form modification), and
suite (randomized theorem checking).

Exit codes: 0 every requested test passed, 1 a theorem-level check
failed (counterexample material), 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import (
    CertificateSearchExhausted,
    FsingError,
    NotSquareFreeSupportedError,
    ParseError,
    PointNotOnVarietyError,
    TheoremContradictionError,
    ZeroOrConstantError,
)
from .field import build_field
from .frobenius import (
    assert_split_or_dump,
    build_regularity_certificate,
    fpt_oracle,
    fsplit_witness,
    verify_regularity_certificate,
)
from .invariants import dfpt_at, fpt_crosscheck, global_invariants
from .io import (
    matroid_basis_polynomial,
    parse_matroid_file,
    parse_point,
    parse_poly_file,
    verify_exchange,
)
from .pipeline import SuiteConfig, modification_build, theorem_suite
from .report import (
    build_report,
    render_certificate,
    render_fpt_sample,
    render_invariants,
    render_point,
    render_witness,
    text_summary,
    to_json,
)
from .structure import disjoint_factorization, squarefree_offender

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2


def _field_info(field):
    info = {"p": field.p, "s": field.s}
    if field.s > 1:
        info["modulus"] = field.modulus_str()
    return info


def _emit(report, args) -> None:
    text = text_summary(report) if args.text else to_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _select_polys(parsed, wanted):
    if wanted is None:
        return list(parsed.polys.items())
    if wanted not in parsed.polys:
        raise FsingError(f"no polynomial named {wanted!r} in the input file")
    return [(wanted, parsed.polys[wanted])]


def _render_search_point(base_field, rep):
    """Encode a report whose point may live in an extension field."""
    big = base_field if len(rep.point[0]) == base_field.s else build_field(
        base_field.p, len(rep.point[0])
    )
    out = render_invariants(big, rep)
    out["point_field_ext"] = big.s
    return out


# --------------------------------------------------------------------------
# check
# --------------------------------------------------------------------------

def _check_poly(field, varctx, name, f, args):
    """Run the requested tests on one polynomial; returns (entry, status)."""
    entry = {"name": name, "poly": str(f)}
    tests = args.tests
    if f.is_zero() or f.is_constant():
        raise ZeroOrConstantError(f"polynomial {name} is zero or constant")
    off = squarefree_offender(f)
    if off is not None:
        if tests == "fsplit":
            w = fsplit_witness(f, 1)
            entry["fsplit"] = render_witness(varctx, w) if w else "NotSplit"
            return entry, "pass"
        raise NotSquareFreeSupportedError(
            f"polynomial {name} is not square-free supported"
            f" at {varctx.monomial_str(off)}",
            off,
        )
    Q = disjoint_factorization(f, seed=args.seed)
    entry["factors"] = [str(g) for g in Q.factors]
    entry["t"] = Q.t
    status = "pass"
    if tests in ("all", "fsplit"):
        w = assert_split_or_dump(Q, 1)
        entry["fsplit"] = render_witness(varctx, w)
        if tests == "fsplit":
            return entry, status
    if tests in ("all", "certificate"):
        try:
            cert = build_regularity_certificate(Q, args.e_max)
        except CertificateSearchExhausted as exc:
            entry["certificate"] = {"search_error": str(exc)}
            return entry, "counterexample"
        ok = verify_regularity_certificate(Q, cert)
        entry["certificate"] = render_certificate(varctx, cert, verified=ok)
        if not ok:
            status = "counterexample"
        if tests == "certificate":
            return entry, status
    origin = tuple(field.zero for _ in range(varctx.n))
    point = parse_point(field, args.point, varctx.n) if args.point else origin
    try:
        rep = dfpt_at(Q, point)
        entry["invariants"] = render_invariants(field, rep)
    except PointNotOnVarietyError:
        if args.point:
            raise
        rep = global_invariants(Q, s_max=args.s_max)
        entry["invariants"] = _render_search_point(field, rep)
        entry["note"] = "origin not on the variety; searched for a maximizer"
        point = None
    if rep.dfpt != rep.mult - Q.t or rep.fpt != Fraction(rep.dim - rep.dfpt):
        status = "counterexample"
        entry["invariant_identity"] = "broken"
    if point is not None and all(a == field.zero for a in point):
        samples = []
        for sample, diff in fpt_crosscheck(Q, (1, 2)):
            row = render_fpt_sample(sample)
            row["discrepancy"] = {"num": diff.numerator, "den": diff.denominator}
            samples.append(row)
            if diff != 0:
                status = "counterexample"
        entry["fpt"] = samples
    return entry, status


def _cmd_check(args) -> int:
    parsed = parse_poly_file(args.file)
    entries = []
    status = "pass"
    for name, f in _select_polys(parsed, args.poly):
        entry, st = _check_poly(parsed.field, parsed.varctx, name, f, args)
        entries.append(entry)
        if st != "pass":
            status = st
    report = build_report(
        _field_info(parsed.field),
        parsed.varctx.names,
        {"file": args.file, "tests": args.tests},
        {"polys": entries},
        status,
    )
    _emit(report, args)
    return EXIT_PASS if status == "pass" else EXIT_COUNTEREXAMPLE


# --------------------------------------------------------------------------
# factor
# --------------------------------------------------------------------------

def _cmd_factor(args) -> int:
    parsed = parse_poly_file(args.file)
    entries = []
    for name, f in _select_polys(parsed, args.poly):
        Q = disjoint_factorization(f, seed=args.seed)
        entries.append(
            {
                "name": name,
                "poly": str(f),
                "constant": Q.field.scalar_str(Q.constant),
                "factors": [str(g) for g in Q.factors],
                "t": Q.t,
                "used_fallback": Q.used_fallback,
            }
        )
    report = build_report(
        _field_info(parsed.field),
        parsed.varctx.names,
        {"file": args.file},
        {"polys": entries},
        "pass",
    )
    _emit(report, args)
    return EXIT_PASS


# --------------------------------------------------------------------------
# fpt
# --------------------------------------------------------------------------

def _cmd_fpt(args) -> int:
    parsed = parse_poly_file(args.file)
    field = parsed.field
    entries = []
    status = "pass"
    for name, f in _select_polys(parsed, args.poly):
        Q = disjoint_factorization(f, seed=args.seed)
        entry = {"name": name, "poly": str(f), "t": Q.t}
        origin = tuple(field.zero for _ in range(parsed.varctx.n))
        on_variety = all(g.evaluate(origin) == field.zero for g in Q.factors)
        if not on_variety:
            raise PointNotOnVarietyError(
                f"the origin does not lie on the vanishing locus of {name}"
            )
        rep = dfpt_at(Q, origin)
        entry["invariants"] = render_invariants(field, rep)
        samples = []
        for sample, diff in fpt_crosscheck(Q, tuple(range(1, args.e_max + 1))):
            row = render_fpt_sample(sample)
            row["discrepancy"] = {"num": diff.numerator, "den": diff.denominator}
            samples.append(row)
            if diff != 0:
                status = "counterexample"
        entry["samples"] = samples
        entries.append(entry)
    report = build_report(
        _field_info(field),
        parsed.varctx.names,
        {"file": args.file},
        {"polys": entries},
        status,
    )
    _emit(report, args)
    return EXIT_PASS if status == "pass" else EXIT_COUNTEREXAMPLE


# --------------------------------------------------------------------------
# matroid
# --------------------------------------------------------------------------

def _cmd_matroid(args) -> int:
    m = parse_matroid_file(args.file)
    ok, detail = verify_exchange(m)
    field = build_field(args.p)
    if not ok:
        report = build_report(
            _field_info(field),
            [f"x{i + 1}" for i in range(m.n)],
            {"file": args.file, "bases": len(m.bases)},
            {"exchange": False, "detail": detail},
            "counterexample",
        )
        _emit(report, args)
        return EXIT_COUNTEREXAMPLE
    f = matroid_basis_polynomial(m, field)
    entry, status = _check_poly(field, f.vars, "basis_polynomial", f, args)
    report = build_report(
        _field_info(field),
        f.vars.names,
        {"file": args.file, "bases": len(m.bases), "exchange": True},
        {"polys": [entry]},
        status,
    )
    _emit(report, args)
    return EXIT_PASS if status == "pass" else EXIT_COUNTEREXAMPLE


# --------------------------------------------------------------------------
# modify
# --------------------------------------------------------------------------

def _cmd_modify(args) -> int:
    parsed = parse_poly_file(args.file)
    field = parsed.field
    if args.g not in parsed.polys or args.h not in parsed.polys:
        raise FsingError("the modify command needs --g and --h naming file polynomials")
    g = parsed.polys[args.g]
    h = parsed.polys[args.h]
    n = parsed.varctx.n
    coeffs = parse_point(field, args.a, n) if args.a else tuple(field.zero for _ in range(n))
    result = modification_build(
        g, h, coeffs, e_max=args.e_max, s_max=args.s_max, max_points=args.max_points
    )
    status = "pass"
    if not result.verified or any(not c["ok"] for c in result.point_checks):
        status = "counterexample"
    results = {
        "f": str(result.f),
        "homogenized": str(result.ftilde),
        "transformed": str(result.transformed),
        "fsplit": render_witness(result.transformed.vars, result.witness),
        "certificate": render_certificate(
            result.transformed.vars, result.certificate, verified=result.verified
        ),
        "max_mult": result.max_mult,
        "dfpt": result.dfpt,
        "point_checks": result.point_checks,
        "budget_exceeded": result.budget_exceeded,
    }
    report = build_report(
        _field_info(field),
        parsed.varctx.names,
        {"file": args.file, "g": args.g, "h": args.h,
         "a": render_point(field, coeffs)},
        results,
        status,
    )
    _emit(report, args)
    return EXIT_PASS if status == "pass" else EXIT_COUNTEREXAMPLE


# --------------------------------------------------------------------------
# suite
# --------------------------------------------------------------------------

def _cmd_suite(args) -> int:
    extra = ()
    varnames = []
    if args.file:
        parsed = parse_poly_file(args.file)
        extra = tuple(parsed.polys.values())
        varnames = parsed.varctx.names
    config = SuiteConfig(
        p_list=tuple(int(x) for x in args.p_list.split(",")),
        n=args.n,
        max_terms=args.max_terms,
        max_factors=args.max_factors,
        count=args.count,
        seed=args.seed,
        e_max=args.e_max,
        extra_inputs=extra,
    )
    results, status = theorem_suite(config)
    report = build_report(
        {"p_list": list(config.p_list)},
        varnames,
        {"kind": "randomized suite"},
        results,
        status,
    )
    _emit(report, args)
    return EXIT_PASS if status == "pass" else EXIT_COUNTEREXAMPLE


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fsing",
        description="Frobenius splitting, regularity certificates, and "
        "threshold defects for square-free supported polynomials.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=True,
                        help="emit a JSON report (default)")
    common.add_argument("--text", action="store_true",
                        help="emit a short text summary instead of JSON")
    common.add_argument("--out", metavar="FILE", help="write the report to FILE")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized internals (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common],
                       help="witness, certificate and invariants for file polynomials")
    c.add_argument("file")
    c.add_argument("--poly", help="restrict to one named polynomial")
    c.add_argument("--tests", choices=("all", "fsplit", "certificate"),
                   default="all", help="which layer of tests to run")
    c.add_argument("--e-max", type=int, default=3, dest="e_max",
                   help="largest Frobenius exponent tried per certificate stage")
    c.add_argument("--s-max", type=int, default=3, dest="s_max",
                   help="largest extension degree searched for maximizers")
    c.add_argument("--point", help="comma separated point encodings for invariants")
    c.set_defaults(func=_cmd_check)

    fc = sub.add_parser("factor", parents=[common],
                        help="variable-disjoint irreducible factorization")
    fc.add_argument("file")
    fc.add_argument("--poly")
    fc.set_defaults(func=_cmd_factor)

    fp = sub.add_parser("fpt", parents=[common],
                        help="threshold samples and origin invariants")
    fp.add_argument("file")
    fp.add_argument("--poly")
    fp.add_argument("--e-max", type=int, default=2, dest="e_max",
                    help="sample every level up to this exponent")
    fp.set_defaults(func=_cmd_fpt)

    mt = sub.add_parser("matroid", parents=[common],
                        help="exchange axiom check plus the basis polynomial pipeline")
    mt.add_argument("file")
    mt.add_argument("--p", type=int, default=2, help="characteristic (default 2)")
    mt.add_argument("--tests", choices=("all", "fsplit", "certificate"), default="all")
    mt.add_argument("--e-max", type=int, default=3, dest="e_max")
    mt.add_argument("--s-max", type=int, default=2, dest="s_max")
    mt.add_argument("--point", default=None)
    mt.set_defaults(func=_cmd_matroid)

    md = sub.add_parser("modify", parents=[common],
                        help="build g*(1+sum a_i x_i)+h and certify the result")
    md.add_argument("file")
    md.add_argument("--g", required=True, help="name of the divisor polynomial")
    md.add_argument("--h", required=True, help="name of the added form")
    md.add_argument("--a", help="comma separated linear form coefficients")
    md.add_argument("--e-max", type=int, default=3, dest="e_max")
    md.add_argument("--s-max", type=int, default=2, dest="s_max")
    md.add_argument("--max-points", type=int, default=20, dest="max_points")
    md.set_defaults(func=_cmd_modify)

    st = sub.add_parser("suite", parents=[common],
                        help="randomized verification of the splitting theorems")
    st.add_argument("--count", type=int, default=200)
    st.add_argument("--p-list", default="2,3,5", dest="p_list")
    st.add_argument("--n", type=int, default=8)
    st.add_argument("--max-terms", type=int, default=8, dest="max_terms")
    st.add_argument("--max-factors", type=int, default=3, dest="max_factors")
    st.add_argument("--e-max", type=int, default=2, dest="e_max")
    st.add_argument("--file", help="poly file of extra inputs to include")
    st.set_defaults(func=_cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except TheoremContradictionError as exc:
        payload = {"error": str(exc), "dump": exc.dump}
        sys.stderr.write(json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n")
        return EXIT_COUNTEREXAMPLE
    except (FsingError, OSError, ValueError) as exc:
        prefix = "parse error" if isinstance(exc, ParseError) else "error"
        sys.stderr.write(f"{prefix}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
