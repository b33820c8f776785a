from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from enum import IntEnum
from pathlib import Path
from typing import *

from loguru import logger

from .arith import PrimeSet
from .classifier import (
    HallStatus,
    HallVerdict,
    classify_dpi,
    classify_sporadic,
    classify_upi,
    gl_hall_pi_order,
    render_records,
    render_verdict,
)
from .glhall import (
    build_R,
    build_T,
    build_TR,
    build_witness_K,
    hall_context,
    save_certificate,
    verify_dpi_failure_witness,
)
from .oracle import (
    catalog_entries,
    crosscheck,
    crosscheck_table,
    load_catalog,
)
from .orders import (
    GLSpec,
    SimpleGroupSpec,
    field_aut_order,
    gl_order,
    graph_quotient_order,
    out_order,
    outdiag_order,
    psl_spec,
    simple_order,
)
from .utils import (
    CROSSCHECK_SCHEMA_VERSION,
    EnumerationBoundError,
    HallPiException,
    InvalidInputError,
    RegimeError,
)


class ExitCode(IntEnum):
    DPI = 0
    NOT_DPI = 1
    UNDETERMINED = 2
    USAGE = 3
    REJECTED = 4
    DISAGREEMENT = 5


STATUS_EXIT_CODES = {
    HallStatus.DPI: ExitCode.DPI,
    HallStatus.EPI_NOT_DPI: ExitCode.NOT_DPI,
    HallStatus.NOT_EPI: ExitCode.NOT_DPI,
    HallStatus.UNDETERMINED: ExitCode.UNDETERMINED,
}


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")


def _parse_pi(text: str) -> PrimeSet:
    pi = PrimeSet.parse(text)
    if not pi:
        raise InvalidInputError("pi must name at least one prime")
    return pi


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def _gl(args: argparse.Namespace) -> GLSpec:
    _require(args, "gl")
    return GLSpec.parse(args.gl)


def _spec(args: argparse.Namespace) -> SimpleGroupSpec:
    """The simple group named by --gl (as PSL) or by --family/--rank/--q."""
    if args.gl is not None:
        return psl_spec(GLSpec.parse(args.gl))

    _require(args, "family", "q")
    return SimpleGroupSpec.of(args.family, args.q, rank=args.rank)


def cmd_classify(args: argparse.Namespace) -> int:
    _require(args, "pi")
    pi = _parse_pi(args.pi)

    verdict: HallVerdict
    if args.sporadic is not None:
        verdict = classify_sporadic(args.sporadic, pi)
    elif args.upi:
        verdict = classify_upi(_spec(args), pi)
    else:
        verdict = classify_dpi(_spec(args), pi)

    if args.format == "records":
        print(render_records([verdict]), end="")
    else:
        print(render_verdict(verdict, upi=args.upi))

    return STATUS_EXIT_CODES[verdict.status]


def cmd_order(args: argparse.Namespace) -> int:
    if args.gl is not None:
        gl = GLSpec.parse(args.gl)
        print(f"|{gl}| = {gl_order(gl).render()}")
        spec = psl_spec(gl)
    else:
        spec = _spec(args)

    print(f"|{spec}| = {simple_order(spec).render()}")

    if args.out_detail:
        print(f"  outdiag: {outdiag_order(spec)}")
        print(f"  field: {field_aut_order(spec)}")
        print(f"  graph: {graph_quotient_order(spec)}")
        print(f"  |Out|: {out_order(spec)}")

    return ExitCode.DPI


def cmd_hall_order(args: argparse.Namespace) -> int:
    _require(args, "pi")
    gl, pi = _gl(args), _parse_pi(args.pi)

    print(f"|{gl}|_{pi!r} = {gl_hall_pi_order(gl, pi).render()}")

    return ExitCode.DPI


def _report_dict(report: Any) -> dict[str, Any]:
    data = asdict(report)
    data["pi"] = repr(report.pi)
    data["certified"] = report.certified
    data["conclusion"] = report.conclusion
    return data


def cmd_construct(args: argparse.Namespace) -> int:
    """Build T, R, TR and the witnesses K, R1; print the witness report, optionally write certificates."""
    _require(args, "pi")
    gl, pi = _gl(args), _parse_pi(args.pi)

    report = verify_dpi_failure_witness(gl, pi, bound=args.bound)
    if not report.applicable:
        print(f"{gl} {pi!r}: {report.conclusion}")
        return ExitCode.REJECTED

    context = hall_context(gl, pi)
    subgroups = [
        build_T(gl, context.tau, bound=args.bound),
        build_R(gl, context.r, bound=args.bound),
        build_TR(gl, pi, bound=args.bound),
    ]
    for t in context.tau:
        K, R1 = build_witness_K(gl, t, pi=pi, bound=args.bound)
        if len(context.tau) > 1:
            K.name, R1.name = f"K{t}", f"R1_{t}"
        subgroups.extend([K, R1])

    for subgroup in subgroups:
        order = subgroup.order
        print(f"{subgroup.name}: order {order if order is not None else 'unverified'}")

    for check in report.checks:
        print(
            f"t={check.t}: rank(K)={check.witness_rank}, "
            f"max centralizer rank={check.max_centralizer_rank}, |KR1|={check.witness_order}"
        )
    print(f"{gl} {pi!r}: {report.conclusion}")

    if args.out is not None:
        out = Path(args.out)
        for subgroup in subgroups:
            save_certificate(out / f"{subgroup.name}.json", subgroup)
        (out / "report.json").write_text(json.dumps(_report_dict(report), indent=2))
        logger.info(f"certificates written to {out}")

    return ExitCode.DPI


def cmd_crosscheck(args: argparse.Namespace) -> int:
    catalog = load_catalog(args.catalog)
    entries = catalog_entries(catalog)

    if args.group:
        unknown = [name for name in args.group if name not in catalog]
        if unknown:
            raise InvalidInputError(f"unknown catalog groups: {', '.join(unknown)}")
        names = {catalog[name].name for name in args.group}
        entries = [e for e in entries if e.name in names]

    pis = [_parse_pi(text) for text in args.pi] if args.pi is not None else None
    rows = crosscheck(entries, pis, bound=args.bound)

    if args.format == "records":
        print(f"# schema: {CROSSCHECK_SCHEMA_VERSION}")
        for row in rows:
            print(json.dumps(row.to_dict()))
    else:
        print(crosscheck_table(rows).to_string(index=False))

    failures = [row for row in rows if row.agrees is False or not row.theorems_hold]
    for row in failures:
        print(f"disagreement: {json.dumps(row.to_dict())}", file=sys.stderr)

    return ExitCode.DISAGREEMENT if failures else ExitCode.DPI


def cmd_catalog(args: argparse.Namespace) -> int:
    for entry in catalog_entries(load_catalog(args.catalog)):
        described = [spec.descriptor() for spec in entry.lie] or list(entry.factors)
        aliases = f"  (alias {', '.join(entry.aliases)})" if entry.aliases else ""
        print(f"{entry.name}  degree {entry.degree}  {'; '.join(described)}{aliases}")

    return ExitCode.DPI


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "classify": cmd_classify,
    "order": cmd_order,
    "hall-order": cmd_hall_order,
    "construct": cmd_construct,
    "crosscheck": cmd_crosscheck,
    "catalog": cmd_catalog,
}


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", help="log at DEBUG level")
    common.add_argument("--bound", type=int, default=None, help="enumeration bound")
    common.add_argument(
        "--format", choices=("text", "records"), default="text", help="output format"
    )

    group = ArgumentParser(add_help=False)
    group.add_argument("--family", help="Lie-type family, e.g. A, 2A, B, E8")
    group.add_argument("--rank", type=int, help="rank parameter l")
    group.add_argument("--q", type=int, help="field order q = p^m")
    group.add_argument("--gl", nargs=3, metavar=("N", "SIGN", "Q"), help="GL_n(q) (+) or GU_n(q) (-)")
    group.add_argument("--pi", help="comma separated primes, e.g. 3,5")

    parser = ArgumentParser(
        prog="hallpi", description="Hall properties D_pi and U_pi of finite simple groups"
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    classify = subparsers.add_parser("classify", parents=[common, group], help="classify (group, pi)")
    classify.add_argument("--sporadic", help="alternating or sporadic group name")
    classify.add_argument("--upi", action="store_true", help="print the U_pi reading")

    order = subparsers.add_parser("order", parents=[common, group], help="factored group order")
    order.add_argument("--out-detail", action="store_true", help="print the pieces of |Out|")

    subparsers.add_parser("hall-order", parents=[common, group], help="|GL_n(q)|_pi in the regime")

    construct = subparsers.add_parser(
        "construct", parents=[common, group], help="build TR and the D_pi failure witness"
    )
    construct.add_argument("--out", help="directory for certificate files")

    catalog_options = ArgumentParser(add_help=False)
    catalog_options.add_argument("--catalog", help="catalog file (default: shipped catalog)")

    crosscheck_parser = subparsers.add_parser(
        "crosscheck", parents=[common, catalog_options], help="classifier against the oracle"
    )
    crosscheck_parser.add_argument(
        "--pi", action="append", help="prime set to check (repeatable); default: odd pairs up to 13"
    )
    crosscheck_parser.add_argument("--group", action="append", help="catalog group (repeatable)")

    subparsers.add_parser("catalog", parents=[common, catalog_options], help="list catalog groups")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return ExitCode.USAGE

    configure_logging(args.verbose)

    try:
        return int(COMMANDS[args.command](args))
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return ExitCode.USAGE
    except (RegimeError, InvalidInputError, EnumerationBoundError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.REJECTED
    except HallPiException as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.DISAGREEMENT


if __name__ == "__main__":
    sys.exit(main())
