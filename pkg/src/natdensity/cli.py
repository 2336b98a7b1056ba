"""Command-line interface.

Verbs: ``density``, ``freq``, ``check``, ``decide``, ``oscillate``, ``audit``.
Exit status is 0 on success, 1 when a refutation or rule violation was
found, and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import itertools
import random
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .actual import ActualEvent, CauchyGrid, Modulus, probability, validate_cauchy
from .dsl import DSLSyntaxError, elaborate, parse
from .errors import NoWitness
from .exact import format_rational, render_decimal
from .omniscience import lpo_regular, oscillation_report, pp_lpo_regular, witness_search
from .regular import as_potential, closed_form_density, reg
from .structure import (
    FiniteFuzzySpace,
    audit_structure,
    density_instance,
    fault_seeded_instance,
    finite_fuzzy_instance,
    finite_kolmogorov_instance,
)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2

_AFFINE_RE = re.compile(r"\s*(\d*)\s*\*?\s*n\s*(?:([+-])\s*(\d+))?\s*\Z")


def parse_modulus(text: str) -> Modulus:
    """Parse an affine modulus such as ``n``, ``8n``, ``52n+1`` or ``3*n-1``."""
    m = _AFFINE_RE.match(text)
    if m is None:
        raise ValueError(f"modulus must look like 'a*n+b', got {text!r}")
    a = int(m.group(1)) if m.group(1) else 1
    b = int(m.group(3)) if m.group(3) else 0
    if m.group(2) == "-":
        b = -b
    return Modulus.linear(a, b)


def _q(q: Fraction, args) -> str:
    s = format_rational(q)
    if args.decimal is not None:
        s += f"  [decimal rendering: {render_decimal(q, args.decimal)}]"
    return s


def _witness(el, args) -> ActualEvent:
    if args.modulus is not None:
        return ActualEvent(el.event, parse_modulus(args.modulus))
    if el.witness is not None:
        return el.witness
    raise NoWitness("no convergence modulus known for this event; pass --modulus a*n+b")


def cmd_density(el, args, out) -> int:
    n = args.precision
    a = _witness(el, args)
    q = probability(a)(n)
    if el.is_regular and args.modulus is None:
        print(f"{_q(closed_form_density(el.regular), args)} (closed form), approximant error ≤ 1/{n}", file=out)
        print(f"approximant: {_q(q, args)} at n={n}, modulus {a.modulus}", file=out)
    else:
        print(f"approximant: {_q(q, args)} at n={n}, modulus {a.modulus} "
              f"(caller-supplied, error ≤ 1/{n} only if the modulus is valid)", file=out)
    return EXIT_OK


def cmd_freq(el, args, out) -> int:
    e = el.event
    if args.format == "tsv":
        print("index\tnumerator\tdenominator", file=out)
    for k in range(1, args.upto + 1):
        f = Fraction(e.count(k), k)
        if args.format == "tsv":
            print(f"{k}\t{f.numerator}\t{f.denominator}", file=out)
        else:
            print(f"{k}\t{_q(f, args)}", file=out)
    return EXIT_OK


def cmd_check(el, args, out) -> int:
    a = _witness(el, args)
    grid = CauchyGrid(args.grid_n, args.grid_ij)
    verdict = validate_cauchy(a, grid)
    print(f"modulus {a.modulus}, {grid}: {verdict}", file=out)
    return EXIT_OK if verdict.ok else EXIT_REFUTED


def cmd_decide(el, args, out) -> int:
    if el.is_regular:
        print(lpo_regular(el.regular), file=out)
        print(pp_lpo_regular(el.regular), file=out)
    else:
        print(witness_search(el.event, args.budget), file=out)
    return EXIT_OK


def cmd_oscillate(el, args, out) -> int:
    report = oscillation_report(el.event, args.upto)
    if args.format == "tsv":
        print("index\tnumerator\tdenominator\trunning_min\trunning_max", file=out)
        for k, c, d, lo, hi in report.rows():
            f = Fraction(c, d)
            print(f"{k}\t{f.numerator}\t{f.denominator}\t{format_rational(lo)}\t{format_rational(hi)}", file=out)
    else:
        for line in report.lines():
            print(line, file=out)
    return EXIT_OK


def _random_regular(rng: random.Random, max_pre: int = 4, max_per: int = 4):
    pre = [rng.randint(0, 1) for _ in range(rng.randint(0, max_pre))]
    per = [rng.randint(0, 1) for _ in range(rng.randint(1, max_per))]
    return reg(pre, per)


def cmd_audit(args, out) -> int:
    if args.structure == "density":
        s = density_instance()
        rng = random.Random(args.seed)
        elements = [as_potential(_random_regular(rng)) for _ in range(args.samples)]
    elif args.structure == "kolmogorov":
        s = finite_kolmogorov_instance(range(1, 5), [Fraction(1, 4)] * 4)
        elements = s.subsets()
    else:
        s = finite_fuzzy_instance(FiniteFuzzySpace(("a", "b", "c"), (Fraction(1, 3),) * 3))
        degrees = [Fraction(i, 4) for i in range(5)]
        elements = [tuple(d) for d in itertools.product(degrees, repeat=3)]
    if args.fault:
        s = fault_seeded_instance(s)
    report = audit_structure(s, elements, args.precision)
    print(report.to_tsv() if args.format == "tsv" else report.to_text(), file=out)
    return EXIT_OK if report.passed else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="approximant index n (error <= 1/n)")
    common.add_argument("--upto", type=int, default=None, help="number of terms")
    common.add_argument("--budget", type=int, default=10_000, help="search budget for semi-decisions")
    common.add_argument("--format", choices=("text", "tsv"), default="text")
    common.add_argument("--decimal", type=int, default=None, metavar="K",
                        help="also render rationals with K decimal digits")

    p = argparse.ArgumentParser(prog="natdensity", description="Exact natural-density probability.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if name != "audit":
            sp.add_argument("expr", help="event expression, e.g. 'reg([1],[1,0]) or bot'")
        return sp

    sp = verb("density", "approximate the probability of an event")
    sp.add_argument("--modulus", default=None, help="affine modulus a*n+b for non-regular events")
    verb("freq", "print the frequencies S(k)/k for k = 1..upto")
    sp = verb("check", "spot-check the Cauchy condition of the witness")
    sp.add_argument("--modulus", default=None, help="affine modulus a*n+b to check instead of the built-in witness")
    sp.add_argument("--grid-n", type=int, default=16)
    sp.add_argument("--grid-ij", type=int, default=64)
    verb("decide", "decide LPO / PP-LPO (total for regular events, budgeted otherwise)")
    verb("oscillate", "report frequency oscillation over the first terms")
    sp = verb("audit", "audit a probability structure")
    sp.add_argument("structure", choices=("density", "kolmogorov", "fuzzy"))
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--fault", action="store_true", help="seed the fault P(bot) = 1/10")
    return p


_DEFAULTS = {
    "density": {"precision": 16},
    "freq": {"upto": 20},
    "oscillate": {"upto": 65536},
    "audit": {"precision": 32},
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for key, value in _DEFAULTS.get(args.verb, {}).items():
        if getattr(args, key) is None:
            setattr(args, key, value)
    for key in ("precision", "upto", "budget"):
        v = getattr(args, key, None)
        if v is not None and v < 1:
            print(f"error: --{key} must be >= 1", file=err)
            return EXIT_USAGE
    if args.verb == "oscillate" and args.upto < 2:
        print("error: --upto must be >= 2", file=err)
        return EXIT_USAGE

    try:
        if args.verb == "audit":
            return cmd_audit(args, out)
        el = elaborate(parse(args.expr))
        handler = {
            "density": cmd_density,
            "freq": cmd_freq,
            "check": cmd_check,
            "decide": cmd_decide,
            "oscillate": cmd_oscillate,
        }[args.verb]
        return handler(el, args, out)
    except DSLSyntaxError as exc:
        print(f"syntax error: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        # EmptyPeriod, NoWitness, malformed --modulus, ...
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE

if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
