"""Command-line front end.

All output is compact JSON (JSON lines for batches), or TSV for multiplicity
tables.  Exit status: 0 on success, 1 on a domain error (a JSON object on
stderr), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import LatticeLabError
from .gamma22 import (
    Vec22,
    enumerate_roots22,
    family_for,
    family_member,
    is_root22,
    to_sl2,
)
from .height import height, parse_functional, small_height_root
from .lattice import GramLattice, classify, enumerate_norm, inner, make_gamma, make_standard
from .partitions import root_multiplicity
from .prospector import (
    LexOrder,
    LinearOrder,
    cartan_check,
    generation_check,
    lex_candidates,
    split_positive,
)
from .reflections import orbit, reflect, simple_roots
from .weyl import orthogonal_root

_ERROR_HELP = """\
exit status:
  0  success
  1  domain error; stderr holds {"error": NAME, "message": TEXT, ...}
  2  usage error (bad flags or values)

domain errors (NAME) and extra JSON fields:
""" + "\n".join(
    f"  {name}{extra}"
    for name, extra in [
        ("NotEvenSelfDual", ""),
        ("DegenerateForm", ""),
        ("DimensionMismatch", ""),
        ("NotARoot", ""),
        ("NotUnimodular", ""),
        ("NotCoprime", ""),
        ("NotNormTwo", ""),
        ("ZeroMatrix", ""),
        ("ZeroOnRoot", '  + "root": [k,l,m,n]'),
        ("Inconclusive", '  + "budget": N'),
    ]
) + """

negative vector or number arguments must be attached with '=',
e.g. --rho=-1,2,0,3 or --a=-sqrt(2).
"""


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _vec4(text: str) -> Vec22:
    v = _ints(text)
    if len(v) != 4:
        raise argparse.ArgumentTypeError(f"expected four integers k,l,m,n, got {text!r}")
    return Vec22(*v)


def _pair(text: str) -> tuple[int, int]:
    v = _ints(text)
    if len(v) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers, got {text!r}")
    return v


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return value


def _workers() -> int:
    cpus = os.cpu_count() or 1
    cap = os.environ.get("LATTICE_LAB_THREADS")
    if cap:
        try:
            cpus = min(cpus, max(1, int(cap)))
        except ValueError:
            raise UsageError(f"LATTICE_LAB_THREADS must be an integer, got {cap!r}") from None
    return cpus


# -- lattice selection ------------------------------------------------------


def _add_lattice_flags(p, default_gamma=None):
    g = p.add_mutually_exclusive_group(required=default_gamma is None)
    g.add_argument("--gamma", type=_pair, metavar="P,Q", help="even self-dual lattice of signature (P,Q)")
    g.add_argument("--standard", choices=["II11", "E8"])
    g.add_argument("--gram", help="JSON Gram matrix or lattice object {rank, gram}")
    p.set_defaults(default_gamma=default_gamma)


def _lattice(args) -> GramLattice:
    if args.gamma is not None:
        return make_gamma(*args.gamma)
    if args.standard is not None:
        return make_standard(args.standard)
    if args.gram is not None:
        try:
            obj = json.loads(args.gram)
        except json.JSONDecodeError as e:
            raise UsageError(f"--gram is not valid JSON: {e}") from None
        if isinstance(obj, dict):
            return GramLattice.from_json(obj)
        return GramLattice(tuple(tuple(r) for r in obj))
    return make_gamma(*args.default_gamma)


# -- certificate re-checks ----------------------------------------------------

_GAMMA22 = None


def _gamma22() -> GramLattice:
    global _GAMMA22
    if _GAMMA22 is None:
        _GAMMA22 = make_gamma(2, 2)
    return _GAMMA22


def _recheck_root(alpha):
    """Independent check on the Gram-matrix model of Gamma^{2,2}."""
    L = _gamma22()
    if inner(L, alpha, alpha) != 2:
        raise AssertionError(f"verification failed: {list(alpha)} is not a root")
    M = to_sl2(alpha)
    if M.a11 * M.a22 - M.a12 * M.a21 != 1:
        raise AssertionError(f"verification failed: det to_sl2({list(alpha)}) != 1")


# -- commands -----------------------------------------------------------------


def cmd_lattice_make(args, out):
    out.write(_dump(_lattice(args).to_json()) + "\n")


def cmd_lattice_classify(args, out):
    c = classify(_lattice(args))
    out.write(_dump({"even": c.is_even, "abs_det": c.abs_det, "signature": list(c.signature)}) + "\n")


def cmd_lattice_enum(args, out):
    for v in enumerate_norm(_lattice(args), args.norm, args.box):
        out.write(_dump(list(v)) + "\n")


def cmd_roots_enum(args, out):
    for v in enumerate_roots22(args.box):
        out.write(_dump(list(v)) + "\n")


def cmd_roots_test(args, out):
    v = args.vector
    obj = {"vector": list(v), "norm": v.norm(), "is_root": is_root22(v)}
    if obj["is_root"]:
        obj["sl2"] = to_sl2(v).rows()
    out.write(_dump(obj) + "\n")


def cmd_roots_family(args, out):
    fam = family_for(args.l, args.n)
    members = [family_member(fam, t) for t in (args.t or [0])]
    if args.verify:
        for m in members:
            _recheck_root(m)
    out.write(_dump({"l": fam.l, "n": fam.n, "k0": fam.k0, "m0": fam.m0, "members": [list(m) for m in members]}) + "\n")


def cmd_reflect(args, out):
    L = _lattice(args)
    image = reflect(L, args.alpha, args.vector)
    out.write(_dump({"alpha": list(args.alpha), "vector": list(args.vector), "image": list(image)}) + "\n")


def cmd_orbit(args, out):
    L = _lattice(args)
    alphas = args.alpha or simple_roots(L)
    if not alphas:
        raise UsageError("no reflections given and the basis has no norm-2 vectors")
    res = orbit(L, args.start, alphas, args.box)
    out.write(_dump({"size": len(res.vectors), "clipped": res.clipped, "vectors": [list(v) for v in res.vectors]}) + "\n")


def _refute_chunk(rhos):
    return [orthogonal_root(r).to_json() for r in rhos]


def cmd_weyl_refute(args, out):
    rhos = list(args.rho or [])
    if args.box is not None:
        span = range(-args.box, args.box + 1)
        rhos.extend(Vec22(a, b, c, d) for a in span for b in span for c in span for d in span)
    if args.random:
        if args.seed is None:
            raise UsageError("--random needs an explicit --seed")
        rng = random.Random(args.seed)
        r = args.range
        rhos.extend(Vec22(*(rng.randint(-r, r) for _ in range(4))) for _ in range(args.random))
    if not rhos:
        raise UsageError("give --rho, --box or --random")
    workers = _workers()
    if workers > 1 and len(rhos) >= 20000:
        size = -(-len(rhos) // (workers * 8))
        chunks = [rhos[i:i + size] for i in range(0, len(rhos), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [c for part in pool.map(_refute_chunk, chunks) for c in part]
    else:
        results = _refute_chunk(rhos)
    for obj in results:
        if args.verify:
            rho, alpha = Vec22(*obj["rho"]), Vec22(*obj["alpha"])
            _recheck_root(alpha)
            if inner(_gamma22(), rho, alpha) != 0:
                raise AssertionError(f"verification failed: {obj}")
        out.write(_dump(obj) + "\n")


def cmd_height_accumulate(args, out):
    try:
        h = parse_functional([args.a, args.b, args.c, args.d])
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.epsilon <= 0:
        raise UsageError("--epsilon must be positive")
    result = small_height_root(h, args.epsilon, args.budget)
    if args.verify:
        _recheck_root(result.alpha)
        if result.variant == "ExactZero":
            exact = h.exact(result.alpha)
            if exact is not None and exact != 0:
                raise AssertionError("verification failed: height is not zero")
        else:
            iv = height(h, result.alpha, args.epsilon / 1024)
            if iv.contains_zero() or not iv.within(args.epsilon):
                raise AssertionError("verification failed: height bound not certified")
    out.write(_dump(result.to_json()) + "\n")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return lo, hi


def cmd_mult(args, out):
    if args.normsq is None and args.normsq_range is None:
        raise UsageError("give --normsq or --normsq-range")
    if args.normsq is not None:
        values = [args.normsq]
    else:
        lo, hi = args.normsq_range
        values = [s for s in range(lo, hi + 1) if s % 2 == 0]
    rows = [(s, root_multiplicity(args.rank, s)) for s in values]
    if args.format == "tsv":
        out.write("normsq\tmult\n")
        for s, m in rows:
            out.write(f"{s}\t{m}\n")
    elif args.normsq is not None:
        out.write(f"{rows[0][1]}\n")
    else:
        for s, m in rows:
            out.write(_dump({"normsq": s, "mult": str(m)}) + "\n")


def _order(text: str):
    if text == "lex":
        return LexOrder()
    if text.startswith("rho="):
        return LinearOrder(_vec4(text[4:]))
    raise argparse.ArgumentTypeError("ordering must be 'lex' or 'rho=a,b,c,d'")


def cmd_prospect_split(args, out):
    pos, neg = split_positive(enumerate_roots22(args.box), args.order)
    out.write(_dump({"box": args.box, "positives": [list(v) for v in pos], "negatives": [list(v) for v in neg]}) + "\n")


def cmd_prospect_candidates(args, out):
    out.write(_dump(lex_candidates(args.box).to_json()) + "\n")


def cmd_prospect_generate(args, out):
    target = args.target_box if args.target_box is not None else args.box
    report = generation_check(lex_candidates(args.box), target)
    out.write(_dump(report.to_json()) + "\n")


def cmd_prospect_cartan(args, out):
    if args.matrix is not None:
        try:
            M = [[Fraction(x) for x in row] for row in json.loads(args.matrix)]
        except (json.JSONDecodeError, TypeError, ValueError) as e:
            raise UsageError(f"--matrix must be a JSON list of rows: {e}") from None
    elif args.box is not None:
        M = lex_candidates(args.box).gram
    else:
        raise UsageError("give --box or --matrix")
    out.write(_dump([v.to_json() for v in cartan_check(M)]) + "\n")


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    parser = argparse.ArgumentParser(
        prog="latticelab",
        description="Exact computations on even self-dual lattices and Gamma^{2,2}.",
        epilog=_ERROR_HELP,
        formatter_class=fmt,
    )
    verify = argparse.ArgumentParser(add_help=False)
    verify.add_argument(
        "--verify", action=argparse.BooleanOptionalAction, default=True,
        help="re-check every certificate with independent arithmetic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="construct and classify lattices", epilog=_ERROR_HELP, formatter_class=fmt)
    lsub = lat.add_subparsers(dest="action", required=True)
    p = lsub.add_parser("make", help="print the Gram matrix as {rank, gram}")
    _add_lattice_flags(p)
    p.set_defaults(func=cmd_lattice_make)
    p = lsub.add_parser("classify", help="even / |det| / signature")
    _add_lattice_flags(p)
    p.set_defaults(func=cmd_lattice_classify)
    p = lsub.add_parser("enum", help="vectors of a given norm in a coordinate box (JSON lines)")
    _add_lattice_flags(p)
    p.add_argument("--norm", type=int, default=2)
    p.add_argument("--box", type=int, required=True)
    p.set_defaults(func=cmd_lattice_enum)

    roots = sub.add_parser("roots", help="roots of Gamma^{2,2}", epilog=_ERROR_HELP, formatter_class=fmt)
    rsub = roots.add_subparsers(dest="action", required=True)
    p = rsub.add_parser("enum", help="all roots in a box, lex order (JSON lines)")
    p.add_argument("--box", type=int, required=True)
    p.set_defaults(func=cmd_roots_enum)
    p = rsub.add_parser("test", help="norm, root test and SL(2,Z) image")
    p.add_argument("--vector", type=_vec4, required=True, metavar="K,L,M,N")
    p.set_defaults(func=cmd_roots_test)
    p = rsub.add_parser("family", parents=[verify], help="one-parameter root family through coprime (l, n)")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, action="append", help="family parameter (repeatable, default 0)")
    p.set_defaults(func=cmd_roots_family)

    p = sub.add_parser("reflect", help="reflect a vector in a norm-2 vector", epilog=_ERROR_HELP, formatter_class=fmt)
    _add_lattice_flags(p, default_gamma=(2, 2))
    p.add_argument("--alpha", type=_ints, required=True)
    p.add_argument("--vector", type=_ints, required=True)
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("orbit", help="bounded orbit under reflections", epilog=_ERROR_HELP, formatter_class=fmt)
    _add_lattice_flags(p, default_gamma=(2, 2))
    p.add_argument("--start", type=_ints, required=True)
    p.add_argument("--alpha", type=_ints, action="append", help="reflection vector (repeatable; default: norm-2 basis vectors)")
    p.add_argument("--box", type=int, required=True)
    p.set_defaults(func=cmd_orbit)

    weyl = sub.add_parser("weyl", help="refute Weyl-like vectors", epilog=_ERROR_HELP, formatter_class=fmt)
    wsub = weyl.add_subparsers(dest="action", required=True)
    p = wsub.add_parser("refute", parents=[verify], help="orthogonal root certificates (JSON lines)")
    p.add_argument("--rho", type=_vec4, action="append", metavar="A,B,C,D")
    p.add_argument("--box", type=int, help="every rho with coordinates in [-BOX, BOX]")
    p.add_argument("--random", type=int, metavar="N", help="N random rho (needs --seed)")
    p.add_argument("--seed", type=int)
    p.add_argument("--range", type=int, default=10, help="coordinate bound for --random (default 10)")
    p.set_defaults(func=cmd_weyl_refute)

    ht = sub.add_parser("height", help="small heights of real functionals", epilog=_ERROR_HELP, formatter_class=fmt)
    hsub = ht.add_subparsers(dest="action", required=True)
    p = hsub.add_parser(
        "accumulate", parents=[verify],
        help="root with 0 < |h| < epsilon for h = (a, b; c, d)",
        description="Coefficients accept p/q, exact decimals such as 1.25, or surds such as 1/2-3*sqrt(5).",
    )
    for name in "abcd":
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--budget", type=int, default=64)
    p.set_defaults(func=cmd_height_accumulate)

    p = sub.add_parser("mult", help="root multiplicity p_{d-1}(1 - s/2) - p_{d-1}(-s/2)", epilog=_ERROR_HELP, formatter_class=fmt)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--normsq", type=int)
    p.add_argument("--normsq-range", type=_range, metavar="LO:HI", help="every even norm in [LO, HI]")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.set_defaults(func=cmd_mult)

    pr = sub.add_parser("prospect", help="fundamental-root candidates and Cartan checks", epilog=_ERROR_HELP, formatter_class=fmt)
    psub = pr.add_subparsers(dest="action", required=True)
    p = psub.add_parser("split", help="positive / negative roots in a box")
    p.add_argument("--box", type=int, required=True)
    p.add_argument("--order", type=_order, default=LexOrder(), help="'lex' (default) or 'rho=a,b,c,d'")
    p.set_defaults(func=cmd_prospect_split)
    p = psub.add_parser("candidates", help="indecomposable lex-positive roots in a box")
    p.add_argument("--box", type=int, required=True)
    p.set_defaults(func=cmd_prospect_candidates)
    p = psub.add_parser("generate", help="positive roots not generated by the box candidates")
    p.add_argument("--box", type=int, required=True, help="box for the candidates")
    p.add_argument("--target-box", type=int, help="box for the roots to generate (default: --box)")
    p.set_defaults(func=cmd_prospect_generate)
    p = psub.add_parser("cartan", help="generalised Cartan condition violations")
    p.add_argument("--box", type=int, help="use the Gram matrix of the box candidates")
    p.add_argument("--matrix", help="JSON matrix of integers or 'p/q' strings")
    p.set_defaults(func=cmd_prospect_cartan)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.func(args, out)
    except LatticeLabError as e:
        err.write(_dump(e.to_json()) + "\n")
        return 1
    except (UsageError, ValueError) as e:
        err.write(_dump({"error": "UsageError", "message": str(e)}) + "\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
