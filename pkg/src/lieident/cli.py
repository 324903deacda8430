"""Command-line interface.

Exit codes: 0 when every verdict passes, 1 when a check fails (or the
polynomial given to ``check`` is not an identity), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from . import __version__
from .algebras import build_pauli_matrix_oracle, derive_pauli_lambda, derive_swap_lambda, eval_poly_thin, make_thin
from .checks import CRITERIA
from .core import QQ, CyclotomicField, FieldError, GradingError, PrimeField, is_prime
from .freelie import MultilinearityError, make_generator, normalize
from .independence import (
    PreconditionError,
    check_pair_independence,
    check_triple_independence,
    minimal_filter,
    no_finite_basis_evidence,
)
from .parsing import ParseError, parse_poly, reduce_degrees
from .tideal import BoundExceeded as SpanBoundExceeded, sweep, u1_generators, w1_generators
from .tuples import BoundExceeded as OracleBoundExceeded, ORACLE_BOUND, classify, oracle_classify

SCHEMA = "lieident-report/1"

USAGE_ERRORS = (FieldError, GradingError, ParseError, MultilinearityError, PreconditionError,
                SpanBoundExceeded, OracleBoundExceeded)


class UsageError(Exception):
    pass


# helpers -----------------------------------------------------------------------


def _stringify(obj):
    """Numbers become exact strings; containers are walked; bools and None stay."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(x) for x in obj]
    return obj


def make_report(command: str, parameters: dict, field: str, passed: bool, verdicts: list,
                counterexamples: list = (), notes: list = ()) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "parameters": _stringify(parameters),
        "field": field,
        "passed": passed,
        "verdicts": _stringify(list(verdicts)),
        "counterexamples": _stringify(list(counterexamples)),
        "notes": list(notes),
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def _pair_list(text: str) -> list[tuple[int, int]]:
    pairs = [(int(a), int(b)) for a, b in _PAIR.findall(text)]
    if not pairs or _PAIR.sub("", text).replace(",", "").strip():
        raise UsageError(f"expected degrees like (1,0),(0,1), got {text!r}")
    return pairs


def _field_for(char: int):
    if char == 0:
        return QQ
    if char == 2 or not is_prime(char):
        raise UsageError(f"characteristic must be 0 or an odd prime, got {char}")
    return PrimeField(char)


def algebra_from_name(name: str, char: int):
    """``u1``, ``w1`` or ``pauli:q`` over the field of characteristic ``char``."""
    if name in ("u1", "w1"):
        return make_thin(name, _field_for(char))
    m = re.fullmatch(r"(?:sl_)?pauli:(\d+)", name)
    if m:
        q = int(m.group(1))
        if not is_prime(q):
            raise UsageError(f"Pauli grading needs a prime q, got {q}")
        if char == 0:
            field = QQ if q == 2 else CyclotomicField(q)
        else:
            field = _field_for(char)
            if (char - 1) % q:
                raise UsageError(f"F_{char} has no primitive {q}-th root of unity")
        return make_thin("sl_pauli", field, q)
    raise UsageError(f"unknown algebra {name!r} (expected u1, w1 or pauli:q)")


# commands ----------------------------------------------------------------------


def cmd_classify(args) -> tuple[int, dict]:
    g = tuple(_int_list(args.tuple))
    if not g:
        raise UsageError("empty tuple")
    field = _field_for(args.char)
    tc = classify(g, args.char)
    verdict = {"tuple": list(g), "char": args.char, "verdict": tc.verdict, "pattern": tc.pattern}
    if tc.base is not None:
        verdict.update(base=tc.base, lambdas=list(tc.lambdas), g_count=tc.g_count)
    line = f"{g} char {args.char}: {tc.verdict}"
    if tc.pattern:
        line += f" [{tc.pattern}]"
    if tc.base is not None:
        line += f" g={tc.base} lambdas={list(tc.lambdas)} count(g)={tc.g_count}"
    print(line)
    agree = True
    if len(g) <= ORACLE_BOUND:
        oc = oracle_classify(g, make_thin("u1", field))
        agree = oc.verdict == tc.verdict
        verdict["oracle"] = oc.verdict
        if oc.witness is not None:
            order = [g[i] for i in oc.witness]
            verdict["witness"] = order
            print(f"oracle: {oc.verdict}, non-identity order {order}")
        else:
            print(f"oracle: {oc.verdict}")
    else:
        print(f"oracle skipped (n > {ORACLE_BOUND})")
    report = make_report("classify", {"tuple": list(g), "char": args.char}, str(field), agree, [verdict])
    return (0 if agree else 1), report


def cmd_check(args) -> tuple[int, dict]:
    A = algebra_from_name(args.algebra, args.char)
    terms = parse_poly(args.poly)
    pauli = A.grading.moduli is not None
    for _, e in terms:
        if isinstance(_first_degree(e), tuple) != pauli:
            raise UsageError(f"degrees of {args.poly!r} do not match the grading of {A.name}")
    P = normalize([(c, reduce_degrees(e, A.grading)) for c, e in terms], A.field)
    value = eval_poly_thin(P, A)
    ok = A.field.is_zero(value)
    print(f"normal form: {_format_normal(P)}")
    print(f"identity: {'true' if ok else 'false'}")
    if not ok:
        print(f"value at the canonical substitution: {A.field.format(value)}")
    verdict = {"poly": args.poly, "normal_form": _format_normal(P), "identity": ok,
               "value": A.field.format(value)}
    report = make_report("check", {"algebra": args.algebra, "char": args.char}, str(A.field), ok, [verdict])
    return (0 if ok else 1), report


def _first_degree(e):
    while not hasattr(e, "degree"):
        e = e.children[0]
    return e.degree


def _format_normal(P) -> str:
    if P.is_zero():
        return "0"
    return " + ".join(f"({P.field.format(c)})*{e}" for c, e in P.terms())


def cmd_lambda(args) -> tuple[int, dict]:
    A = algebra_from_name(args.algebra, args.char)
    if A.grading.moduli is None:
        raise UsageError("lambda is defined for Pauli gradings only")
    degs = [A.grading.reduce(d) for d in _pair_list(args.degrees)]
    f = A.field
    if len(degs) == 3:
        lam = derive_swap_lambda(*degs, A)
        family = "swap_lambda"
    elif len(degs) == 4:
        lam = derive_pauli_lambda(degs, A)
        family = "pauli_deg4"
    else:
        raise UsageError("give three or four degrees")
    verdict = {"degrees": [list(d) for d in degs], "family": family,
               "lambda": None if lam is None else f.format(lam)}
    if lam is None:
        print(f"no lambda: the reference monomial vanishes at {degs}")
        report = make_report("lambda", {"algebra": args.algebra, "degrees": args.degrees}, str(f), False, [verdict])
        return 1, report
    print(f"lambda = {f.format(lam)}")
    P = make_generator(family, (*degs, lam), f)
    oracle_ok = None
    if args.char == 0:
        M = build_pauli_matrix_oracle(A.grading.moduli[0], f)
        oracle_ok = M.find_violation(P) is None
        print(f"matrix model agrees: {'true' if oracle_ok else 'false'}")
        verdict["matrix_model"] = oracle_ok
    ok = oracle_ok is not False
    report = make_report("lambda", {"algebra": args.algebra, "degrees": args.degrees}, str(f), ok, [verdict])
    return (0 if ok else 1), report


def cmd_verify_basis(args) -> tuple[int, dict]:
    if args.algebra not in ("u1", "w1"):
        raise UsageError("verify-basis supports u1 and w1")
    A = algebra_from_name(args.algebra, args.char)
    gens = u1_generators(args.char) if args.algebra == "u1" else w1_generators(args.char)
    lo = -args.entry_max if args.entry_min is None else args.entry_min
    if lo > args.entry_max:
        raise UsageError("empty entry range")
    report = sweep(range(1, args.n_max + 1), (lo, args.entry_max), A, gens,
                   allow_large=args.allow_large, workers=args.workers, keep_rows=args.verbose)
    bad = report.counterexamples
    print(f"{A.name} over {A.field}: n <= {args.n_max}, entries in [{lo}, {args.entry_max}]")
    print(f"tuples: {len(report.verdicts)}, counterexamples: {len(bad)}")
    for v in report.verdicts:
        if not v.verified:
            print(f"  {v.tuple}: kernel dim {v.dim_kernel}, span dim {v.dim_span}, "
                  f"sound={v.span_subset_kernel}, complete={v.kernel_subset_span}")
    for note in report.notes:
        print(f"note: {note}")
    print("pass" if report.passed else "FAIL")
    out = make_report(
        "verify-basis",
        {"algebra": args.algebra, "char": args.char, **report.parameters},
        report.field,
        report.passed,
        [v.as_dict() for v in report.verdicts],
        [list(t) for t in bad],
        report.notes,
    )
    return (0 if report.passed else 1), out


def cmd_verify_independence(args) -> tuple[int, dict]:
    p = args.char
    _field_for(p)
    R = args.pairs_max
    evidence = []
    for r in range(-R, R + 1):
        for s in range(-R, R + 1):
            if minimal_filter("pair", (r, s), p):
                evidence.append(check_pair_independence(r, s, p))
    if p:
        lo = -args.triples_max if args.triples_min is None else args.triples_min
        rng = range(lo, args.triples_max + 1)
        for a in rng:
            for b in rng:
                for c in rng:
                    if minimal_filter("triple", (a, b, c), p, strict=args.strict):
                        evidence.append(check_triple_independence(a, b, c, p))
    levels = []
    for N in range(1, args.levels + 1):
        levels.extend(no_finite_basis_evidence(N, p))
    failed = [e for e in evidence if not e.independent] + [e.witness for e in levels if not e.independent]
    pairs = sum(1 for e in evidence if e.kind == "pair")
    print(f"characteristic {p}: {pairs} pair and {len(evidence) - pairs} triple generators checked")
    if levels:
        print(f"level checks: {len(levels)} generators, {sum(not e.independent for e in levels)} dependent")
    for e in failed:
        reason = "witness satisfies it" if e.target is None else \
            "witness fails " + ", ".join(f"{v.family}{tuple(v.params)}" for v in e.violations[:3])
        print(f"  not independent: {e.kind} {e.params} ({reason})")
    ok = not failed
    print("pass" if ok else "FAIL")
    params = {"char": p, "pairs_max": R, "triples_max": args.triples_max, "triples_min": args.triples_min,
              "strict": args.strict, "levels": args.levels}
    verdicts = [e.as_dict() for e in evidence] + [e.as_dict() for e in levels]
    report = make_report("verify-independence", params, str(_field_for(p)), ok, verdicts,
                         [[e.kind, *e.params] for e in failed])
    return (0 if ok else 1), report


def cmd_selftest(args) -> tuple[int, dict]:
    numbers = sorted(CRITERIA) if not args.only else _int_list(args.only)
    unknown = [k for k in numbers if k not in CRITERIA]
    if unknown:
        raise UsageError(f"unknown criteria {unknown}")
    results = []
    for k in numbers:
        fn = CRITERIA[k]
        r = fn(4) if args.quick and k in (4, 5, 7, 8) else fn()
        print(r.line(), flush=True)
        results.append(r)
    ok = all(r.passed for r in results)
    report = make_report("selftest", {"criteria": numbers, "quick": args.quick}, "mixed", ok,
                         [r.as_dict() for r in results], [r.number for r in results if not r.passed])
    if args.timing:
        report["timing"] = {str(r.number): f"{r.elapsed:.3f}" for r in results}
    return (0 if ok else 1), report


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieident", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lieident {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="PATH", help="write the structured report to PATH")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    sp = sub.add_parser("classify", help="good/bad classification of a degree tuple for U1")
    sp.add_argument("--tuple", required=True, help="comma-separated integer degrees")
    sp.add_argument("--char", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("check", help="decide whether a polynomial is a graded identity")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--algebra", required=True, help="u1, w1 or pauli:q")
    sp.add_argument("--char", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("lambda", help="scalar of the Pauli swap or degree-4 identity")
    sp.add_argument("--algebra", required=True, help="pauli:q")
    sp.add_argument("--degrees", required=True, help="three or four degrees like (1,0),(0,1),(1,1)")
    sp.add_argument("--char", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_lambda)

    sp = sub.add_parser("verify-basis", help="compare consequence spans with identity kernels on a grid")
    sp.add_argument("--algebra", required=True, choices=["u1", "w1"])
    sp.add_argument("--char", type=int, default=0)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--entry-max", type=int, required=True)
    sp.add_argument("--entry-min", type=int, default=None, help="default: -entry-max")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--allow-large", action="store_true", help="permit n = 6")
    sp.add_argument("--verbose", action="store_true", help="include echelon rows in the report")
    common(sp)
    sp.set_defaults(func=cmd_verify_basis)

    sp = sub.add_parser("verify-independence", help="independence of the filtered basis identities")
    sp.add_argument("--char", type=int, required=True)
    sp.add_argument("--pairs-max", type=int, default=6)
    sp.add_argument("--triples-max", type=int, default=4)
    sp.add_argument("--triples-min", type=int, default=None, help="default: -triples-max")
    sp.add_argument("--strict", action="store_true", help="also require b != c and c != a+b for triples")
    sp.add_argument("--levels", type=int, default=0, help="level checks for N = 1..LEVELS")
    common(sp)
    sp.set_defaults(func=cmd_verify_independence)

    sp = sub.add_parser("selftest", help="run the bounded verification suite")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.add_argument("--quick", action="store_true", help="n <= 4 for the basis grids")
    common(sp)
    sp.set_defaults(func=cmd_selftest)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let ``--tuple -1,1`` through: argparse would read ``-1,1`` as an option."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--tuple", "--degrees", "--poly") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code, report = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except USAGE_ERRORS as exc:
        print(f"lieident: error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        report.setdefault("timing", {})["total_seconds"] = f"{time.perf_counter() - t0:.3f}"
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dump_report(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
