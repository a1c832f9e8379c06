"""Command line front end.

Exit codes: 0 ok, 2 ``scan --expect-negative`` without a certificate or a
failed ``verify``, 64 unparsable input, 65 input outside the domain,
69 enumeration budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import CosetFunction, HeckeElement, convolve, l1_norm, r_inner, star
from .backends import SL2Pair, make_pair
from .errors import BackendMismatch, BudgetExceeded, DomainError, ParseError
from .growth import CosetSet, growth_sequence
from .scalar import check_prime, format_rational, parse_rational
from .spherical import counterexample_element, default_grid, scan_positivity
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_NO_CERTIFICATE = 2
EXIT_PARSE = 64
EXIT_DOMAIN = 65
EXIT_BUDGET = 69


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _load_json(text: str):
    """Inline JSON, or the contents of a file if ``text`` names one."""
    path = Path(text)
    try:
        if not text.lstrip().startswith(("[", "{", '"')) and path.exists():
            text = path.read_text()
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise ParseError(str(exc)) from None


def _require_pair(args):
    if not getattr(args, "pair", None):
        raise ParseError("--pair is required for this command")
    return make_pair(args.pair, args.budget)


def _load_hecke(pair, text: str) -> HeckeElement:
    if text == "builtin:unit":
        return HeckeElement.unit(pair)
    return HeckeElement.from_json(pair, _load_json(text))


def _load_coset_function(pair, text: str) -> CosetFunction:
    if text == "builtin:unit":
        return CosetFunction.indicator(pair, pair.identity)
    if text == "builtin:counterexample":
        if not isinstance(pair, SL2Pair):
            raise DomainError("builtin:counterexample needs an sl2:<q> pair")
        return counterexample_element(pair.q, pair)
    return CosetFunction.from_json(pair, _load_json(text))


def _emit(args, payload, table_rows=None, csv_rows=None):
    fmt = args.output
    if fmt == "csv" and csv_rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        sys.stdout.write(buf.getvalue())
    elif fmt == "table" and table_rows is not None:
        for row in table_rows:
            print("\t".join(str(x) for x in row))
    else:
        print(json.dumps(payload))


def _element_rows(pair, f):
    rows = [("coset", "re", "im")]
    for c, v in f:
        rows.append((json.dumps(pair.element_to_json(c.rep)), format_rational(v.re), format_rational(v.im)))
    return rows


# -- commands -----------------------------------------------------------------

def cmd_classify(args) -> int:
    pair = _require_pair(args)
    g = pair.element_from_json(_load_json(args.element))
    d = pair.double_coset(g)
    L, R = pair.coset_counts(d)
    record = dict(pair.describe_double_coset(d))
    record.update({"L": L, "R": R, "delta": format_rational(pair.delta(d))})
    _emit(args, record, table_rows=list(record.items()), csv_rows=[list(record), list(record.values())])
    return EXIT_OK


def cmd_algebra(args) -> int:
    pair = _require_pair(args)
    op = args.op
    operands = args.operands
    arity = {"mul": (2, 2), "star": (1, 1), "norm": (1, 1), "rinner": (1, 2)}[op]
    if not arity[0] <= len(operands) <= arity[1]:
        raise ParseError(f"{op} takes {arity[0]}..{arity[1]} operands, got {len(operands)}")
    if op == "mul":
        result = convolve(_load_hecke(pair, operands[0]), _load_hecke(pair, operands[1]))
    elif op == "star":
        result = star(_load_hecke(pair, operands[0]))
    elif op == "norm":
        n = l1_norm(_load_hecke(pair, operands[0]))
        payload = {"value": format_rational(n.value), "exact": n.exact}
        _emit(args, payload, table_rows=list(payload.items()))
        return EXIT_OK
    else:
        f = _load_coset_function(pair, operands[0])
        g = _load_coset_function(pair, operands[1]) if len(operands) > 1 else f
        result = r_inner(f, g)
    _emit(args, result.to_json(), table_rows=_element_rows(pair, result),
          csv_rows=_element_rows(pair, result))
    return EXIT_OK


def _parse_grid(spec: str, q: int):
    zs = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok == "default":
            zs.extend(default_grid(q))
        else:
            zs.append(parse_rational(tok))
    seen = set()
    return [z for z in zs if not (z in seen or seen.add(z))]


def cmd_scan(args) -> int:
    q = check_prime(args.q)
    pair = make_pair(f"sl2:{q}", args.budget)
    if args.pair and make_pair(args.pair, args.budget) != pair:
        raise DomainError(f"scan runs on sl2:{q}, not {args.pair}")
    f = _load_coset_function(pair, args.f)
    zs = _parse_grid(args.z_grid, q)
    report = scan_positivity(q, f, zs, allow_outside_domain=args.allow_outside_domain)
    payload = report.to_json()
    rows = [("z", "value", "in_domain")] + [(format_rational(z), format_rational(v), dom)
                                            for z, v, dom in report.values]
    table = rows + ([("certificate", format_rational(report.certificate.z),
                      format_rational(report.certificate.value))] if report.certificate else [])
    _emit(args, payload, table_rows=table, csv_rows=rows)
    if args.expect_negative and report.certificate is None:
        return EXIT_NO_CERTIFICATE
    return EXIT_OK


def cmd_growth(args) -> int:
    pair = _require_pair(args)
    obj = _load_json(args.set)
    if not isinstance(obj, list):
        raise ParseError("--set must be a JSON list of elements")
    A = CosetSet(pair, [pair.double_coset(pair.element_from_json(x)) for x in obj])
    report = growth_sequence(A, args.nmax)
    payload = report.to_json()
    rows = [["n", "size", "L", "root", "ratio"]] + [
        [r["n"], r["size"], r["L"], r["root"] or "", r["ratio"] or ""] for r in payload["rows"]]
    _emit(args, payload, table_rows=rows + [["classification", payload["classification"]]],
          csv_rows=rows)
    if report.truncated:
        print(f"truncated: {report.reason}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = "all" if args.suite == "all" else [args.suite]
    pairs = [make_pair(args.pair, args.budget)] if args.pair else None
    print(f"# hecke verify suite={args.suite} trials={args.trials} seed={args.seed}"
          + (f" pair={args.pair}" if args.pair else ""))
    results = run_suites(suites, trials=args.trials, seed=args.seed, pairs=pairs, budget=args.budget)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"# {len(results) - failed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_NO_CERTIFICATE


# -- parser -------------------------------------------------------------------

def _common(parser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--pair", default=default(None),
                        help="dihedral | dyadic | sl2:<q> | finite:<path or fixture name>")
    parser.add_argument("--budget", type=int, default=default(None),
                        help="coset enumeration cap (default $HECKE_BUDGET or 10^6)")
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument("--output", choices=("json", "csv", "table"), default=default("json"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hecke", description="Exact Hecke algebra computations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="canonical double coset, L, R and Delta of an element")
    _common(p, suppress=True)
    p.add_argument("element", help="element JSON (inline or file)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("algebra", help="mul / star / norm / rinner")
    _common(p, suppress=True)
    p.add_argument("op", choices=("mul", "star", "norm", "rinner"))
    p.add_argument("operands", nargs="+", help="element JSON (inline or file) or builtin:unit / builtin:counterexample")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("scan", help="evaluate pi_z(<f, f>_R) over a grid of z")
    _common(p, suppress=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--f", default="builtin:counterexample")
    p.add_argument("--z-grid", default="default", help="comma separated rationals; 'default' expands")
    p.add_argument("--allow-outside-domain", action="store_true")
    p.add_argument("--expect-negative", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("growth", help="L(A^n) for a finite set A of double cosets")
    _common(p, suppress=True)
    p.add_argument("--set", required=True, help="JSON list of elements (inline or file)")
    p.add_argument("--nmax", type=int, default=10)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("verify", help="run the seeded property suites")
    _common(p, suppress=True)
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"hecke: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, BackendMismatch) as exc:
        print(f"hecke: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BudgetExceeded as exc:
        print(f"hecke: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
