"""Command line front end.

Exit status contract: 0 on success, 1 when a mathematical check fails
(a verification axiom, a round trip, a cone comparison), 2 on usage or
parse errors including unreadable input files.  All output is plain
deterministic text: identical arguments produce identical bytes, cache
cold or warm, and every seeded command discloses its seed in the report
header.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from . import acceptance
from .complexes import euler_char, homology_report, parse_complex
from .exterior import FlaggedModule, derived_lambda, flag_exterior
from .gamma import absolute_cohomology, gamma_filtration, filtration_table
from .lambdaring import binomial_int, verify_lambda
from .poly import format_poly
from .ringspec import description_algebra, load_ring_spec, seeded_samples
from .simplicial import (
    check_cone_nerve,
    constant_simplicial_functor,
    enumerate_functors,
    nerve,
    parse_category,
    pi0,
)
from .universal import universal_poly
from .witt import (
    WittElement,
    from_coeffs,
    witt_add,
    witt_lambda,
    witt_mul,
    witt_neg,
    witt_rank,
)

__all__ = ["RunConfig", "main"]


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by every subcommand.  The seed fully determines all
    randomized checks of a run."""

    degree: int = 8
    levels: int | None = None
    cache_dir: str | None = None
    verbosity: int = 0
    seed: int = acceptance.DEFAULT_SEED


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_upoly(args, config: RunConfig) -> int:
    up = universal_poly(args.kind, *args.indices, cache_dir=config.cache_dir)
    print(format_poly(up.polynomial))
    return 0


def _witt_operand(text: str, degree: int) -> WittElement:
    parts = [p.strip() for p in text.split(",")]
    try:
        tail = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"series tail must be comma-separated integers, got {text!r}")
    if len(tail) > degree:
        raise ValueError(f"tail {text!r} is longer than the truncation degree {degree}")
    return from_coeffs(tail + [0] * (degree - len(tail)))


def cmd_witt(args, config: RunConfig) -> int:
    degree = config.degree
    if args.op == "lam":
        if len(args.operands) != 2:
            raise ValueError("witt lam needs an index and one series tail")
        k = int(args.operands[0])
        print(repr(witt_lambda(k, _witt_operand(args.operands[1], degree))))
        return 0
    elements = [_witt_operand(t, degree) for t in args.operands]
    if not elements:
        raise ValueError("witt needs at least one series tail")
    if args.op == "neg":
        if len(elements) != 1:
            raise ValueError("witt neg takes exactly one series tail")
        print(repr(witt_neg(elements[0])))
    elif args.op == "rank":
        if len(elements) != 1:
            raise ValueError("witt rank takes exactly one series tail")
        print(witt_rank(elements[0]))
    else:
        acc = elements[0]
        for other in elements[1:]:
            acc = witt_add(acc, other) if args.op == "add" else witt_mul(acc, other)
        print(repr(acc))
    return 0


def cmd_verify(args, config: RunConfig) -> int:
    desc = load_ring_spec(args.spec)
    samples = list(desc.samples)
    if args.samples:
        samples += seeded_samples(desc, random.Random(config.seed), args.samples)
    print(f"ring spec: {args.spec}")
    print(f"seed: {config.seed}")
    print(f"indices: k <= {args.kmax}, l <= {args.lmax}; "
          f"samples: {len(samples)}")
    report = verify_lambda(desc.spec, samples, k_max=args.kmax, l_max=args.lmax)
    print(report.format())
    return 0 if report.passed else 1


def cmd_gamma_filtration(args, config: RunConfig) -> int:
    desc = load_ring_spec(args.spec)
    algebra = description_algebra(desc)
    gamma_filtration(algebra, args.mmax)
    print(f"ring: {desc.name}")
    print(filtration_table(algebra))
    return 0


def cmd_abs_cohomology(args, config: RunConfig) -> int:
    desc = load_ring_spec(args.spec)
    algebra = description_algebra(desc)
    piece = absolute_cohomology({2 * args.j - args.i: algebra}, args.i, args.j)
    print(f"ring: {desc.name}")
    print(f"slot: {piece.slot}")
    print(f"weight: {piece.weight}")
    print(f"dimension: {piece.dimension}")
    for vector in piece.representatives:
        print("representative: " + " ".join(str(c) for c in vector))
    return 0


def cmd_derived_lambda(args, config: RunConfig) -> int:
    with open(args.complex, "r", encoding="utf-8") as handle:
        key = parse_complex(handle.read())
    chi = euler_char(key)
    out = derived_lambda(args.power, key, config.levels)
    got = euler_char(out)
    want = binomial_int(chi, args.power)
    print(f"input: degrees {key.lo}..{key.hi}, chi = {chi}")
    print(f"derived power {args.power}: degrees {out.lo}..{out.hi}, chi = {got}")
    print(f"chi check: C({chi}, {args.power}) = {want}")
    report = homology_report(out)
    if report:
        print(report)
    if got != want:
        print("MISMATCH")
        return 1
    return 0


def cmd_flag_exterior(args, config: RunConfig) -> int:
    dims = tuple(int(p) for p in args.dims.split(","))
    flag = FlaggedModule(dims)
    basis, onto = flag_exterior(flag)
    print("flag: " + " <= ".join(str(d) for d in dims))
    print(f"rank: {len(basis)}")
    print(f"quotient map: {onto.rows} x {onto.cols}, rank {onto.rank()}")
    for wedge in basis:
        print("wedge: " + " ".join(str(i) for i in wedge))
    return 0


def cmd_dk_roundtrip(args, config: RunConfig) -> int:
    from .doldkan import (
        denormalize_h,
        denormalize_v,
        embed_i,
        normalize_h,
        normalize_mixed,
        normalize_v,
        tot,
    )

    with open(args.complex, "r", encoding="utf-8") as handle:
        key = parse_complex(handle.read())
    if key.lo < 0 < key.hi:
        ok = tot(normalize_mixed(embed_i(key))) == key
        route = "two-sided embedding"
    elif key.hi <= 0:
        ok = normalize_h(denormalize_h(key)) == key
        route = "simplicial normalization"
    else:
        ok = normalize_v(denormalize_v(key)) == key
        route = "cosimplicial normalization"
    if not ok:
        print(f"FAIL: {route} does not return the input")
        return 1
    print("OK")
    return 0


def cmd_cone_check(args, config: RunConfig) -> int:
    with open(args.source, "r", encoding="utf-8") as handle:
        src = parse_category(handle.read())
    with open(args.target, "r", encoding="utf-8") as handle:
        dst = parse_category(handle.read())
    truncation = 4 if config.levels is None else config.levels
    for fun in enumerate_functors(src, dst):
        wrapped = constant_simplicial_functor(fun, truncation)
        if not check_cone_nerve(wrapped, truncation):
            images = {x: fun.on_object(x) for x in src.objects}
            print(f"FAIL: functor {images}")
            return 1
    print("OK")
    return 0


def cmd_pi0(args, config: RunConfig) -> int:
    with open(args.category, "r", encoding="utf-8") as handle:
        cat = parse_category(handle.read())
    top = config.levels if config.levels and config.levels >= 1 else 1
    components = pi0(nerve(cat, top))
    for index, members in enumerate(components):
        print(f"component {index}: " + " ".join(str(m) for m in members))
    return 0


def cmd_acceptance(args, config: RunConfig) -> int:
    if args.suite == "all":
        numbers = sorted(acceptance.CRITERIA)
    else:
        try:
            numbers = [int(args.suite)]
        except ValueError:
            raise ValueError(
                f"unknown suite {args.suite!r}; use 'all' or a criterion number")
        if numbers[0] not in acceptance.CRITERIA:
            raise ValueError(
                f"criterion {numbers[0]} does not exist; valid: "
                f"{min(acceptance.CRITERIA)}..{max(acceptance.CRITERIA)}")
    print(f"seed: {config.seed}")
    return acceptance.run_criteria(
        numbers, seed=config.seed, levels=config.levels,
        cache_dir=config.cache_dir, out=print, verbose=config.verbosity)


# ---------------------------------------------------------------------------
# wiring


def _shared_flags(parser: argparse.ArgumentParser, root: bool) -> None:
    # the same flags hang off the root parser and off every subcommand,
    # so they may come before or after the subcommand name; subcommand
    # copies suppress their defaults to keep the root values alive
    def default(value):
        return value if root else argparse.SUPPRESS

    parser.add_argument("--degree", type=int, default=default(8),
                        help="series truncation degree (default 8)")
    parser.add_argument("--seed", type=int,
                        default=default(acceptance.DEFAULT_SEED),
                        help="seed for every randomized check")
    parser.add_argument("--cache-dir", default=default(None),
                        help="universal polynomial cache directory "
                             "(falls back to LAMBDAKIT_CACHE_DIR, then "
                             "~/.cache/lambdakit)")
    parser.add_argument("--levels", type=int, default=default(None),
                        help="level budget / truncation override")
    parser.add_argument("-v", "--verbose", action="count", default=default(0))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambdakit",
        description="Exact checks for operations on rings, complexes, "
                    "and nerves.")
    _shared_flags(parser, root=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        _shared_flags(p, root=False)
        return p

    p = add_parser("upoly", help="print a universal polynomial")
    p.add_argument("kind", choices=("P", "PKL", "Q", "QKL"))
    p.add_argument("indices", type=int, nargs="+")
    p.set_defaults(handler=cmd_upoly)

    p = add_parser("witt", help="truncated Witt series arithmetic")
    p.add_argument("op", choices=("add", "mul", "neg", "lam", "rank"))
    p.add_argument("operands", nargs="+",
                   help="comma-separated integer tails; lam takes the "
                        "index first")
    p.set_defaults(handler=cmd_witt)

    p = add_parser("verify", help="verify the axioms of a ring spec")
    p.add_argument("spec")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--lmax", type=int, default=2)
    p.add_argument("--samples", type=int, default=0,
                   help="extra seeded pseudo-random samples")
    p.set_defaults(handler=cmd_verify)

    p = add_parser("gamma-filtration",
                       help="filtration table of a ring spec")
    p.add_argument("spec")
    p.add_argument("--mmax", type=int, default=4)
    p.set_defaults(handler=cmd_gamma_filtration)

    p = add_parser("abs-cohomology",
                       help="graded piece in a given slot and weight")
    p.add_argument("spec")
    p.add_argument("-i", type=int, required=True)
    p.add_argument("-j", type=int, required=True)
    p.set_defaults(handler=cmd_abs_cohomology)

    p = add_parser("derived-lambda",
                       help="derived exterior power of a complex file")
    p.add_argument("complex")
    p.add_argument("power", type=int)
    p.set_defaults(handler=cmd_derived_lambda)

    p = add_parser("flag-exterior",
                       help="basis of a flagged exterior power")
    p.add_argument("dims", help="comma-separated flag dimensions")
    p.set_defaults(handler=cmd_flag_exterior)

    p = add_parser("dk-roundtrip",
                       help="normalization round trip on a complex file")
    p.add_argument("complex")
    p.set_defaults(handler=cmd_dk_roundtrip)

    p = add_parser("cone-check",
                       help="cone/nerve comparison over all functors "
                            "between two category files")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(handler=cmd_cone_check)

    p = add_parser("pi0", help="path components of a category's nerve")
    p.add_argument("category")
    p.set_defaults(handler=cmd_pi0)

    p = add_parser("acceptance", help="run acceptance criteria")
    p.add_argument("--suite", default="all",
                   help="'all' or a criterion number")
    p.set_defaults(handler=cmd_acceptance)
    return parser


def _blame(exc: BaseException) -> str:
    """Name the package module whose frame raised, for error reports."""
    module = "lambdakit"
    tb = exc.__traceback__
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("lambdakit"):
            module = name
        tb = tb.tb_next
    return module


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code is None else int(exc.code)
    config = RunConfig(degree=args.degree, levels=args.levels,
                       cache_dir=args.cache_dir, verbosity=args.verbose,
                       seed=args.seed)
    try:
        return args.handler(args, config)
    except (ValueError, OSError) as exc:
        print(f"error ({_blame(exc)}): {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
