"""Command-line driver: ``hk <command> <file> [options]``.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error,
3 resource cap reached.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from fractions import Fraction

from .algebra import TermOrder
from .errors import HKError, InputError
from .groebner import buchberger, colength, is_zero_dimensional
from .hilbert import (
    LaurentPoly,
    UnitRootFactor,
    dimension_from_series,
    evaluate_at_one,
    hilbert_series_quotient,
    hilbert_series_ring,
)
from .hk import (
    conjecture_report,
    ehk_estimate,
    finite_pd_hypothesis,
    frobenius_series_identity,
    length_identity_check,
    ring_dimension,
)
from .parser import parse_problem
from .report import check, emit
from .resolution import chi_from_betti, chi_reduced, graded_betti, koszul_chi, verify_factorization

COMMANDS = ("length", "series", "betti", "chi", "verify", "frobcheck", "ehk", "conjecture")

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _ring_factor_value(ring, order):
    """p(1)/g(1) where P_R = p / ((1-t)^d g)."""
    series = hilbert_series_ring(ring, order)
    d = dimension_from_series(series)
    num = series.numerator
    for _ in range(len(series.denominator) - d):
        num, _r = num.divmod_one_minus_t()
    g = 1
    for s in series.denominator:
        g *= UnitRootFactor(s).g.at_one()
    return Fraction(num.at_one(), g), d


def _chi_for(problem, regular_sequence):
    ring, ideal, order = problem.ring, problem.ideal, problem.options["order"]
    if regular_sequence:
        return koszul_chi(ideal.generator_degrees()), None, "regular sequence (Koszul closed form)"
    betti = graded_betti(ring, ideal, order)
    return chi_from_betti(betti), betti, "Koszul homology"


def cmd_length(problem, args):
    ring, ideal, order = problem.ring, problem.ideal, problem.options["order"]
    gb = buchberger(ideal, order, args.degree_budget)
    lam = colength(ring, ideal, order, gb=gb)
    checks = []
    if ideal.homogeneous:
        value = evaluate_at_one(hilbert_series_quotient(ring, ideal, order, gb=gb))
        checks.append(check("Hilbert series at t=1", lam, value))
    return lam, checks


def cmd_series(problem, args):
    ring, ideal, order = problem.ring, problem.ideal, problem.options["order"]
    pr = hilbert_series_ring(ring, order)
    pm = hilbert_series_quotient(ring, ideal, order, args.degree_budget)
    result = {
        "ring": pr,
        "ring_dimension": dimension_from_series(pr),
        "quotient": pm,
        "quotient_reduced": pm.reduced(),
        "quotient_dimension": dimension_from_series(pm),
        "length": evaluate_at_one(pm) if pm.pole_order() == 0 else None,
    }
    return result, []


def cmd_betti(problem, args):
    betti = graded_betti(problem.ring, problem.ideal, problem.options["order"])
    chi = chi_from_betti(betti)
    d = ring_dimension(problem.ring)
    result = {
        "table": betti.to_json(),
        "projective_dimension": betti.projective_dimension,
        "totals": [{"i": i, "total": n} for i, n in sorted(betti.totals().items())],
    }
    checks = [check("b_00 = 1", 1, betti[0, 0])]
    if d > 0:
        checks.append(check("chi(1) = 0", 0, chi.at_one()))
    return result, checks


def cmd_chi(problem, args):
    ring, ideal, order = problem.ring, problem.ideal, problem.options["order"]
    chi, _, route = _chi_for(problem, args.regular_sequence)
    factor, d = _ring_factor_value(ring, order)
    chi_t = chi_reduced(chi, d)
    lam = colength(ring, ideal, order, args.degree_budget)
    result = {"chi": chi, "chi_tilde": chi_t, "d": d, "route": route, "chi_tilde_at_one": chi_t.at_one()}
    return result, [check("chi~(1) * p(1)/g(1) = length", Fraction(lam), chi_t.at_one() * factor)]


def cmd_verify(problem, args):
    ring, ideal, order = problem.ring, problem.ideal, problem.options["order"]
    rep = verify_factorization(ring, ideal, order=order, regular_sequence=args.regular_sequence, strict=False)
    checks = [check("P_M = chi * P_R", str(rep.lhs.reduced()), str(rep.rhs.reduced()), rep.equal)]
    return rep, checks


def cmd_frobcheck(problem, args):
    ring, ideal, order = problem.ring, problem.ideal, problem.options["order"]
    rep = length_identity_check(ring, ideal, args.e, order, args.regular_sequence, args.degree_budget)
    result = {"identity": rep}
    checks = []
    if rep.certified:
        checks.append(check("q^d scaling", rep.predicted, rep.length_bracket))
    if ring.is_polynomial_ring:
        ser = frobenius_series_identity(ring, ideal, args.e, order, args.degree_budget, strict=False)
        result["series_identity"] = ser
        checks.append(check("Frobenius series identity", str(ser.direct), str(ser.via_chi), ser.equal))
        checks.append(check("series value at t=1", rep.predicted, ser.value_direct))
    return result, checks


def cmd_ehk(problem, args):
    est = ehk_estimate(problem.ring, problem.ideal, args.max_e, problem.options["order"], args.degree_budget)
    return est, []


def cmd_conjecture(problem, args):
    rep = conjecture_report(
        problem.ring, problem.ideal, args.max_e, problem.options["order"], args.regular_sequence, args.degree_budget
    )
    checks = []
    if rep["finite_pd_certified"]:
        for item in rep["exact_equality_by_e"]:
            checks.append(check(f"part (2) exact equality at e={item['e']}", True, item["equal"]))
    return rep, checks


HANDLERS = {
    "length": cmd_length,
    "series": cmd_series,
    "betti": cmd_betti,
    "chi": cmd_chi,
    "verify": cmd_verify,
    "frobcheck": cmd_frobcheck,
    "ehk": cmd_ehk,
    "conjecture": cmd_conjecture,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="hk", description="Hilbert-Kunz and Frobenius length checks over GF(p).")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="problem file, or - for stdin")
    ap.add_argument("--e", type=int, default=1, help="Frobenius exponent for frobcheck (default 1)")
    ap.add_argument("--max-e", type=int, default=None, help="largest exponent for ehk/conjecture")
    ap.add_argument("--order", choices=("grevlex", "lex"), default=None)
    ap.add_argument("--format", choices=("json", "table"), default="json")
    ap.add_argument("--degree-budget", type=int, default=None)
    ap.add_argument("--regular-sequence", action="store_true", default=None,
                    help="assert the generators form a regular sequence (checked)")
    ap.add_argument("--allow-inhomogeneous", action="store_true",
                    help="warn instead of failing on inhomogeneous generators")
    ap.add_argument("--timing", action="store_true", help="record wall time in timing_ms")
    return ap


def run(command, text, args):
    """Execute one command on problem ``text``; returns (report dict, exit code)."""
    doc = {"command": command, "input_echo": None, "result": None, "checks": [], "timing_ms": None}
    start = time.perf_counter()
    try:
        problem = parse_problem(text, strict_homogeneity=not args.allow_inhomogeneous)
        opts = problem.options
        if args.order is not None:
            opts["order"] = TermOrder.parse(args.order)
        if args.max_e is None:
            args.max_e = opts["e_max"]
        opts["e_max"] = args.max_e
        if args.degree_budget is None:
            args.degree_budget = opts["degree_budget"]
        opts["degree_budget"] = args.degree_budget
        if args.regular_sequence is None:
            args.regular_sequence = opts["regular_sequence"]
        opts["regular_sequence"] = args.regular_sequence
        if args.e < 0 or args.max_e < 1:
            raise InputError("--e must be >= 0 and --max-e >= 1")
        doc["input_echo"] = problem.echo()
        result, checks = HANDLERS[command](problem, args)
        doc["result"] = result
        doc["checks"] = checks
        status = EXIT_OK if all(c["pass"] for c in checks) else EXIT_CHECK
    except HKError as exc:
        doc["error"] = exc.to_dict()
        status = exc.exit_status
    if args.timing:
        doc["timing_ms"] = round((time.perf_counter() - start) * 1000)
    return doc, status


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        doc = {"command": args.command, "error": {"code": "io_error", "message": str(exc)}}
        sys.stdout.write(emit(doc, args.format))
        return EXIT_INPUT
    doc, status = run(args.command, text, args)
    sys.stdout.write(emit(doc, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
