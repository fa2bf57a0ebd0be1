"""Command-line front end.

    discdet disc --ring Z --n 2 --d 3 --poly "x0^3+x1^3+x2^3+x3^3"
    discdet verify --ring fq:2:1 --n 2 --d 3 --poly "x0^3+x1^3+x2^3+x3^3"

Every subcommand prints one JSON object on stdout (integers that may exceed
64 bits are decimal strings) and a one-line summary on stderr.  Exit codes:
0 success/agreement, 1 mathematical disagreement or internal inconsistency,
2 input error, 3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import gmpy2
import numpy as np

from .algebra import ZZ, AlgebraError, FieldSpec, parse_ring, ring_name
from .char2 import artin_schreier_class
from .corpus import run_acceptance
from .discriminant import (DiscriminantError, InternalError, discriminant_report, epsilon,
                           find_singular_point, salmon_disc, salmon_disc_printed, topology_sign)
from .enumeration import DEFAULT_BUDGET, BudgetExceeded
from .forms import FormError, SylvesterCoefficients, format_form, parse_form, sylvester_form
from .zeta import predicted_character, verify_determinant_theorem

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
TRIAL_DIVISION_BOUND = 10**6


class InputError(ValueError):
    pass


def elem(x) -> str | None:
    """Ring element as a string: decimal integer, ``a/b``, or field encoding."""
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, tuple):  # lift-ring element
        return "[" + ",".join(str(c) for c in x) + "]"
    return str(x)


def _read_poly(text: str) -> str:
    if text is None:
        raise InputError("--poly is required")
    if os.path.isfile(text):
        with open(text) as fh:
            return fh.read().strip()
    return text


def load_form(args):
    try:
        ring = parse_ring(args.ring)
    except AlgebraError as exc:
        raise InputError(str(exc)) from exc
    if args.n is None:
        raise InputError("--n is required")
    if args.n < 0:
        raise InputError("n must be non-negative")
    f = parse_form(_read_poly(args.poly), args.n + 2, ring)
    if args.d is not None and f.degree != args.d:
        raise InputError(f"polynomial has degree {f.degree}, --d says {args.d}")
    if f.is_zero:
        raise InputError("the zero form defines no hypersurface")
    return f


# ---------------------------------------------------------------------------
# squarefree parts over Z


def _small_primes(bound: int) -> np.ndarray:
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for k in range(2, math.isqrt(bound) + 1):
        if sieve[k]:
            sieve[k * k :: k] = False
    return np.nonzero(sieve)[0]


def squarefree_part(D: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, bool]:
    """(sign * squarefree part of |D|, fully reduced?) by trial division up to ``bound``."""
    if D == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if D < 0 else 1
    m = abs(D)
    out = 1
    for p in _small_primes(bound):
        p = int(p)
        if p * p > m:
            break
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e % 2:
            out *= p
    if m == 1:
        return sign * out, True
    if m < bound * bound or gmpy2.is_prime(m):
        return sign * out * m, True
    if gmpy2.is_square(m):
        r = int(gmpy2.isqrt(m))
        if r < bound * bound or gmpy2.is_prime(r):
            return sign * out, True
    return D, False


# ---------------------------------------------------------------------------
# subcommands


def cmd_disc(args) -> tuple[dict, int, str]:
    f = load_form(args)
    n = args.n
    rep = discriminant_report(f, n, f.degree, seed=args.seed)
    inv = rep.invariants
    out = {
        "command": "disc", "ring": ring_name(f.ring), "n": n, "d": f.degree, "form": format_form(f),
        "a": str(inv.a), "m": str(inv.m), "epsilon": inv.epsilon,
        "disc_r": elem(rep.disc_r), "disc_d": elem(rep.disc_d), "signed": elem(rep.signed),
        "smooth": rep.smooth,
    }
    return out, EXIT_OK, f"disc_d = {elem(rep.disc_d)}"


def cmd_smooth(args) -> tuple[dict, int, str]:
    f = load_form(args)
    rep = discriminant_report(f, args.n, f.degree, seed=args.seed)
    R = f.ring
    out = {"command": "smooth", "ring": ring_name(R), "n": args.n, "d": f.degree, "form": format_form(f),
           "disc_d": elem(rep.disc_d)}
    if isinstance(R, FieldSpec):
        out["smooth"] = rep.smooth
        out["witness"] = None
        if not rep.smooth:
            w = find_singular_point(f, args.max_ext, args.budget)
            if w is not None:
                out["witness"] = {"extension_degree": w.degree, "field": w.field.name,
                                  "point": [str(c) for c in w.point]}
        summary = "smooth" if rep.smooth else "singular"
    else:
        # smooth over the fraction field; smooth over Z iff disc_d = +-1
        out["smooth"] = rep.disc_d != 0
        out["smooth_over_Z"] = R == ZZ and rep.disc_d in (1, -1)
        summary = "smooth over Q" if out["smooth"] else "singular"
    return out, EXIT_OK, summary


def cmd_character(args) -> tuple[dict, int, str]:
    f = load_form(args)
    n, d = args.n, f.degree
    R = f.ring
    out = {"command": "character", "ring": ring_name(R), "n": n, "d": d, "form": format_form(f)}
    if isinstance(R, FieldSpec):
        desc = predicted_character(f, n, d, seed=args.seed)
        out["character"] = desc.as_dict()
        if R.p == 2:
            ctx = artin_schreier_class(f, n, d, seed=args.seed)
            out["character"]["D_mod_8"] = elem(ctx.D)
            out["character"]["w"] = str(ctx.w)
        return out, EXIT_OK, desc.kind
    rep = discriminant_report(f, n, d, seed=args.seed)
    if rep.signed is None:
        raise InputError("the character needs even n")
    D = rep.signed
    if D == 0:
        raise InputError("disc_d(f) = 0: singular hypersurface")
    # the square class of a/b equals that of a*b
    D_int = D.numerator * D.denominator if isinstance(D, Fraction) else D
    core, reduced = squarefree_part(D_int)
    kind = "trivial" if reduced and core == 1 else "square_root"
    out["character"] = {"kind": kind, "D": elem(D), "squarefree_part": str(core), "reduced": reduced}
    return out, EXIT_OK, f"{kind} (D = {elem(D)}, squarefree part {core})"


def cmd_verify(args) -> tuple[dict, int, str]:
    f = load_form(args)
    v = verify_determinant_theorem(f, args.n, f.degree, optional_heavy=args.optional_heavy,
                                   budget=args.budget, workers=args.workers, seed=args.seed)
    out = {"command": "verify", **v.as_dict()}
    code = EXIT_OK if v.agree else EXIT_DISAGREE
    return out, code, f"{'agree' if v.agree else 'DISAGREE'}: det(Frobenius) {v.lhs}, character {v.rhs}"


def cmd_topology(args) -> tuple[dict, int, str]:
    if args.n is None or args.d is None:
        raise InputError("topology needs --n and --d")
    r = topology_sign(args.n, args.d)
    out = {"command": "topology", "n": r.n, "d": r.d, "phi": str(r.phi), "e_real": r.e_real, "N": str(r.N),
           "sign": r.sign, "epsilon": epsilon(r.n, r.d) if r.d >= 2 else None,
           "matches_epsilon": r.matches_epsilon}
    return out, EXIT_OK if r.matches_epsilon else EXIT_DISAGREE, f"sign {r.sign}"


def cmd_salmon(args) -> tuple[dict, int, str]:
    try:
        vals = [int(x) for x in args.sylvester.split(",")]
    except (AttributeError, ValueError) as exc:
        raise InputError("--sylvester expects five comma-separated integers") from exc
    if len(vals) != 5:
        raise InputError("--sylvester expects five comma-separated integers")
    s = SylvesterCoefficients(*vals)
    rep = discriminant_report(sylvester_form(s), 2, 3, seed=args.seed)
    lhs = salmon_disc(s)
    agree = 3**27 * lhs == rep.disc_d
    out = {"command": "salmon", "sylvester": vals, "salmon_disc": str(lhs),
           "salmon_disc_printed_grouping": str(salmon_disc_printed(s)),
           "disc_d_sylvester_form": str(rep.disc_d), "disc_d_over_3_27": elem(Fraction(rep.disc_d, 3**27)),
           "agree": agree}
    return out, EXIT_OK if agree else EXIT_DISAGREE, f"disc_s = {lhs}, {'agree' if agree else 'DISAGREE'}"


def cmd_corpus(args) -> tuple[dict, int, str]:
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_acceptance(args.seed, only, args.optional_heavy)
    for r in results:
        print(r.line(), file=sys.stderr)
    passed = sum(r.passed for r in results)
    out = {"command": "corpus", "seed": args.seed, "passed": passed, "failed": len(results) - passed,
           "criteria": [r.as_dict() for r in results]}
    code = EXIT_OK if passed == len(results) else EXIT_DISAGREE
    return out, code, f"{passed}/{len(results)} criteria passed"


COMMANDS = {
    "disc": cmd_disc, "smooth": cmd_smooth, "character": cmd_character, "verify": cmd_verify,
    "topology": cmd_topology, "salmon": cmd_salmon, "corpus": cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discdet", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--ring", default="Z", help="Z, Q, fp:p or fq:p:k")
        p.add_argument("--n", type=int, help="hypersurface dimension (n+2 variables)")
        p.add_argument("--d", type=int, help="degree")
        p.add_argument("--poly", help="polynomial text or a file containing it")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max point evaluations")
        p.add_argument("--max-ext", type=int, default=2, help="extension degrees searched for witnesses")
        p.add_argument("--optional-heavy", action="store_true", help="allow large enumerations")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--quiet", action="store_true", help="no summary on stderr")
        if name == "salmon":
            p.add_argument("--sylvester", default="1,1,1,1,1", help="a,b,c,d,e")
        if name == "corpus":
            p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code, summary = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        out, code, summary = {"command": args.command, "error": "budget", "message": str(exc),
                              "required": str(exc.required), "budget": str(exc.budget)}, EXIT_BUDGET, str(exc)
    except InternalError as exc:
        out, code, summary = {"command": args.command, "error": "internal", "message": str(exc)}, \
            EXIT_DISAGREE, str(exc)
    except (InputError, FormError, AlgebraError, DiscriminantError, ValueError) as exc:
        out, code, summary = {"command": args.command, "error": "input", "message": str(exc)}, \
            EXIT_INPUT, str(exc)
    out["exit_code"] = code
    print(json.dumps(out, indent=2, sort_keys=False))
    if not args.quiet:
        print(f"{args.command}: {summary}", file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
