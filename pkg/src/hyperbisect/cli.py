"""Command-line interface for hyperbisect."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any

import orjson
from loguru import logger

from hyperbisect.combinatorics import (
    count_partitions,
    max_measures_cohomological,
    partition_parity,
)
from hyperbisect.core.pipeline import (
    ENUMERATE_MODES,
    SOLVE_MODES,
    BisectionPipeline,
    build_certificate,
)
from hyperbisect.data import (
    EnumerationDocument,
    FamilyDocument,
    arrangement_payload,
    load_arrangement,
    load_family,
    render_svg,
    write_json,
    write_text,
)
from hyperbisect.errors import HyperbisectError, NoBisectingCutError
from hyperbisect.measures import MeasureFamily, sample_oddly_supported
from hyperbisect.settings import get_settings

EXIT_VERIFIED = 0
EXIT_UNVERIFIED = 1
EXIT_USAGE = 2


def configure_logging(level: str) -> None:
    """Single stderr sink; structured extras appended to every message."""

    logger.remove()
    logger.add(
        sys.stderr,
        level=level.upper(),
        format="<level>{level: <8}</level> | {message} | {extra}",
    )


def _emit(payload: Any, out: Path | None) -> None:
    if out is None:
        if hasattr(payload, "model_dump"):
            payload = payload.model_dump(mode="json")
        print(orjson.dumps(payload, option=orjson.OPT_INDENT_2).decode())
    else:
        write_json(payload, out)
        print(f"Wrote {out}")


def command_solve(args: argparse.Namespace) -> int:
    """Construct a bisecting arrangement and write its certificate."""

    settings = get_settings()
    fam = load_family(args.input)
    pipeline = BisectionPipeline(settings)
    outcome = pipeline.solve(
        fam,
        args.hyperplanes,
        mode=args.mode,
        seed=args.seed,
        partition_index=args.partition_index,
        sweep=args.sweep_partitions,
        workers=args.workers,
    )
    _emit(outcome.certificate, args.out)
    certificate = outcome.certificate
    verified = str(certificate.verified).lower()
    print(
        f"mode={certificate.mode} status={certificate.status} verified={verified}",
        file=sys.stderr,
    )
    return EXIT_VERIFIED if outcome.verified else EXIT_UNVERIFIED


def command_verify(args: argparse.Namespace) -> int:
    """Recompute the certificate of a stored arrangement."""

    fam = load_family(args.input)
    arrangement = load_arrangement(args.arrangement)
    certificate = build_certificate(fam, arrangement, mode="verify", seed=args.seed)
    for index, mass in enumerate(certificate.per_measure):
        print(
            f"measure {index}: positive={mass.positive_mass!r} negative={mass.negative_mass!r} "
            f"on_cut={mass.on_cut_mass!r} total={mass.total!r}"
        )
    print(f"verified={str(certificate.verified).lower()}")
    if args.out is not None:
        write_json(certificate, args.out)
    return EXIT_VERIFIED if certificate.verified else EXIT_UNVERIFIED


def command_enumerate(args: argparse.Namespace) -> int:
    """List every canonical bisecting arrangement the chosen mode can certify."""

    fam = load_family(args.input)
    pipeline = BisectionPipeline(get_settings())
    arrangements = pipeline.enumerate(fam, args.hyperplanes, mode=args.mode)
    document = EnumerationDocument(
        dimension=fam.dim,
        hyperplanes=args.hyperplanes,
        mode=args.mode,
        arrangements=[arrangement_payload(arr) for arr in arrangements],
    )
    _emit(document, args.out)
    print(f"arrangements={document.count}")
    return EXIT_VERIFIED


def command_count(args: argparse.Namespace) -> int:
    """Print N(n, D), its parity and the cohomological measure bound."""

    certificate = partition_parity(args.n, args.d)
    print(f"partitions: {count_partitions(args.n, args.d)}")
    print(f"parity: {certificate.parity} (2-adic valuation {certificate.two_adic_valuation})")
    print(f"max_measures: {max_measures_cohomological(args.n)}")
    return EXIT_VERIFIED


def command_sample(args: argparse.Namespace) -> int:
    """Resample every measure onto an odd number of equal-weight points."""

    fam = load_family(args.input)
    sampled = MeasureFamily(
        tuple(
            sample_oddly_supported(measure, args.n_points, args.seed + index)
            for index, measure in enumerate(fam)
        )
    )
    _emit(FamilyDocument.from_family(sampled), args.out)
    return EXIT_VERIFIED


def command_render(args: argparse.Namespace) -> int:
    """Draw a planar family and, optionally, an arrangement as SVG."""

    fam = load_family(args.input)
    arrangement = load_arrangement(args.arrangement) if args.arrangement is not None else None
    write_text(render_svg(fam, arrangement, width=args.width, height=args.height), args.out)
    print(f"Wrote {args.out}")
    return EXIT_VERIFIED


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="hyperbisect", description="Bisect point measures with hyperplane arrangements."
    )
    parser.add_argument(
        "--log-level", type=str, default=None, help="Override HYPERBISECT_LOG_LEVEL."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Find a bisecting arrangement and write its certificate.")
    solve.add_argument("--input", type=Path, required=True, help="Family JSON document.")
    solve.add_argument("--hyperplanes", type=int, required=True, help="Number of hyperplanes D.")
    solve.add_argument("--mode", choices=SOLVE_MODES, default="homotopy", help="Solver to run.")
    solve.add_argument(
        "--seed", type=int, default=settings.default_seed, help="Seed for trajectory jitter."
    )
    solve.add_argument(
        "--out", type=Path, default=None, help="Certificate path (stdout when omitted)."
    )
    solve.add_argument(
        "--partition-index",
        type=int,
        default=None,
        help="Seed partition (canonical order, 0-based).",
    )
    solve.add_argument(
        "--sweep-partitions",
        action="store_true",
        help="Track every partition seed, keep the best.",
    )
    solve.add_argument("--workers", type=int, default=None, help="Threads for --sweep-partitions.")
    solve.set_defaults(func=command_solve)

    verify = sub.add_parser("verify", help="Recompute the certificate of an arrangement.")
    verify.add_argument("--input", type=Path, required=True, help="Family JSON document.")
    verify.add_argument(
        "--arrangement", type=Path, required=True, help="Arrangement or certificate JSON."
    )
    verify.add_argument("--seed", type=int, default=0, help="Seed recorded in the certificate.")
    verify.add_argument(
        "--out", type=Path, default=None, help="Write the recomputed certificate here."
    )
    verify.set_defaults(func=command_verify)

    enumerate_ = sub.add_parser("enumerate", help="List all canonical bisecting arrangements.")
    enumerate_.add_argument("--input", type=Path, required=True, help="Family JSON document.")
    enumerate_.add_argument(
        "--hyperplanes", type=int, required=True, help="Number of hyperplanes D."
    )
    enumerate_.add_argument(
        "--mode", choices=ENUMERATE_MODES, default="separated", help="Enumeration method."
    )
    enumerate_.add_argument(
        "--out", type=Path, default=None, help="Output path (stdout when omitted)."
    )
    enumerate_.set_defaults(func=command_enumerate)

    count = sub.add_parser("count", help="Partition count, parity and measure bound.")
    count.add_argument("--n", type=int, required=True, help="Dimension n.")
    count.add_argument("--d", type=int, required=True, help="Number of hyperplanes D.")
    count.set_defaults(func=command_count)

    sample = sub.add_parser("sample", help="Resample a family onto odd equal-weight supports.")
    sample.add_argument("--input", type=Path, required=True, help="Family JSON document.")
    sample.add_argument(
        "--n-points", type=int, required=True, help="Odd number of points per measure."
    )
    sample.add_argument("--seed", type=int, default=settings.default_seed, help="Sampling seed.")
    sample.add_argument("--out", type=Path, default=None, help="Output path (stdout when omitted).")
    sample.set_defaults(func=command_sample)

    render = sub.add_parser("render", help="Draw a planar family and arrangement as SVG.")
    render.add_argument("--input", type=Path, required=True, help="Family JSON document.")
    render.add_argument(
        "--arrangement", type=Path, default=None, help="Arrangement or certificate JSON."
    )
    render.add_argument("--out", type=Path, required=True, help="SVG output path.")
    render.add_argument("--width", type=int, default=640, help="Figure width in pixels.")
    render.add_argument("--height", type=int, default=640, help="Figure height in pixels.")
    render.set_defaults(func=command_render)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_logging(args.log_level or get_settings().log_level)
    try:
        return args.func(args)
    except NoBisectingCutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNVERIFIED
    except (HyperbisectError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
