"""Command line front end: analyze, polygon, certify and scan."""
import argparse
import asyncio
import logging
import sys
from typing import List, Optional, Sequence

from trinomial_index.certifier_router import CertifierRouter
from trinomial_index.contracts import ScanRow, VerdictStatus
from trinomial_index.fqpoly import factor_mod_p
from trinomial_index.monogenity import analyze
from trinomial_index.newton import render
from trinomial_index.ore import LocalFactorAnalysis, analyze_factor, build_order_two_type, factor_shape, second_order_analysis
from trinomial_index.scan_manager import ScanManager
from trinomial_index.utils.config import EngineSettings
from trinomial_index.utils.error_handling import (
    DomainError, ExitCode, NotApplicableError, describe_error, exit_code_for,
)
from trinomial_index.utils.spec_parsing import load_scan_spec
from trinomial_index.zpoly import IntPoly, Trinomial, default_lift

logger = logging.getLogger(__name__)


def setup_logging(level: int = logging.WARNING) -> None:
    """Configure logging for the application; logs go to stderr."""
    logging.basicConfig(
        level=level,
        format='%(asctime)s %(levelname)s [%(name)s]: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr,
    )


def parse_coefficients(text: str) -> List[int]:
    """'c0,c1,...' lowest degree first."""
    try:
        return [int(c) for c in text.split(",") if c.strip()]
    except ValueError as e:
        raise DomainError(f"malformed coefficient list {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trinomial-index",
        description="Monogenity of number fields defined by trinomials x^n + ax + b.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    p_analyze = sub.add_parser("analyze", parents=[common], help="Decide monogenity of one trinomial")
    p_analyze.add_argument("n", type=int)
    p_analyze.add_argument("a", type=int)
    p_analyze.add_argument("b", type=int)
    p_analyze.add_argument("--prime", type=int, help="Restrict the common index divisor tests to this prime")
    p_analyze.add_argument("--json", action="store_true", help="Emit the versioned JSON report")

    p_polygon = sub.add_parser("polygon", parents=[common], help="Render phi-Newton polygons at a prime")
    p_polygon.add_argument("n", type=int)
    p_polygon.add_argument("a", type=int)
    p_polygon.add_argument("b", type=int)
    p_polygon.add_argument("--prime", type=int, required=True)
    p_polygon.add_argument("--phi", type=str, help="Lift coefficients c0,c1,... lowest degree first")
    p_polygon.add_argument("--second-order", action="store_true", help="Add order-two data where first order is not separable")

    p_certify = sub.add_parser("certify", parents=[common], help="Match a theorem family and cross-check it with the engine")
    p_certify.add_argument("theorem", type=str)
    p_certify.add_argument("n", type=int)
    p_certify.add_argument("a", type=int)
    p_certify.add_argument("b", type=int)
    p_certify.add_argument("--json", action="store_true")

    p_scan = sub.add_parser("scan", parents=[common], help="Scan a family described by a spec file")
    p_scan.add_argument("--spec", type=str, required=True)
    p_scan.add_argument("--workers", type=int, help="Override the worker count")
    return parser


def cmd_analyze(args: argparse.Namespace, settings: EngineSettings) -> ExitCode:
    report = analyze(Trinomial(args.n, args.a, args.b), settings, prime=args.prime)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(report.summary())
        for prime_report in report.per_prime:
            status = prime_report.shape_status
            print(f"  p = {prime_report.p}: shape {prime_report.shape} ({status}), census {prime_report.census}")
        if args.verbose:
            for line in report.transcript:
                print(f"  | {line}")
    if report.status is VerdictStatus.INCONCLUSIVE:
        return ExitCode.INCONCLUSIVE
    return ExitCode.VERDICT


def _print_local(local: LocalFactorAnalysis) -> None:
    print(f"factor {local.factor} (multiplicity {local.multiplicity}), phi = {local.phi}")
    print(f"  valuations: {[str(u) for u in local.development.valuations]}")
    print(f"  vertices: {local.polygon.vertices}")
    for analysis in local.sides:
        side = analysis.side
        factors = ", ".join(f"({psi})^{k}" if k > 1 else f"({psi})" for psi, k in analysis.factors)
        print(f"  side {side}: e = {side.e}, h = {side.h}, degree {side.degree}, R(y) = {analysis.residual} = {factors}")
    print(f"  ind_phi = {local.index}")
    print(render(local.polygon))


def _print_second_order(f: IntPoly, local: LocalFactorAnalysis, p: int, seed: int) -> None:
    for analysis in local.sides:
        for psi, k in analysis.factors:
            if k == 1:
                continue
            try:
                t = build_order_two_type(f, local.phi, analysis.side, psi, k, p)
                result = second_order_analysis(f, t, p, seed)
            except NotApplicableError as e:
                print(f"  order two for ({psi})^{k}: {e}")
                continue
            print(f"  order two for ({psi})^{k}: phi2 = {t.phi2}")
            print(f"    vertices: {result.polygon.vertices}")
            for side, residual in result.residuals:
                print(f"    side {side}: R2(y) = {residual}")
            print(f"    primes: {sorted((q.e, q.f) for q in result.primes)} ({result.status.name.lower()})")
            if result.note:
                print(f"    note: {result.note}")


def cmd_polygon(args: argparse.Namespace, settings: EngineSettings) -> ExitCode:
    t = Trinomial(args.n, args.a, args.b)
    f, p = t.poly, args.prime
    print(f"F = {f}, p = {p}")
    fbar = f.reduce(p)
    if args.phi:
        phi = IntPoly(tuple(parse_coefficients(args.phi)))
        if not phi.is_monic() or phi.degree < 1:
            raise DomainError(f"phi must be monic and nonconstant, got {phi}")
        phibar = phi.reduce(p)
        if not phibar.is_irreducible() or not phibar.divides(fbar):
            print(f"phi mod {p} = {phibar} is not an irreducible factor of {fbar}")
            return ExitCode.INCONCLUSIVE
        lifts = [phi]
    else:
        lifts = [default_lift(g) for g, _ in factor_mod_p(fbar)]
    for phi in lifts:
        local = analyze_factor(f, phi, p, settings.split_seed)
        _print_local(local)
        if args.second_order:
            _print_second_order(f, local, p, settings.split_seed)
    shape = factor_shape(f, p, settings.split_seed)
    print(f"shape: {shape.pairs} ({shape.status.name.lower()}), index >= {shape.index_lower_bound}")
    return ExitCode.VERDICT


def cmd_certify(args: argparse.Namespace, settings: EngineSettings) -> ExitCode:
    certificate = CertifierRouter(settings).certify(Trinomial(args.n, args.a, args.b), args.theorem)
    if args.json:
        print(certificate.model_dump_json(indent=2))
    else:
        for message in [c.message for c in certificate.checks] or [certificate.message]:
            print(f"{certificate.theorem}: {message}")
        if certificate.generator:
            print(f"  generator {certificate.generator}")
    if certificate.fired and not certificate.agreement:
        return ExitCode.INCONCLUSIVE
    return ExitCode.VERDICT


def _format_row(row: ScanRow) -> str:
    witnesses = " ".join(f"{w.p}:P_{w.m}={w.Pm}>{w.Npm}" for w in row.witnesses) or "-"
    agreement = "-" if row.agreement is None else ("agree" if row.agreement else "DISAGREE")
    status = row.status if not row.error else f"{row.status} ({row.error})"
    return f"{row.n}\t{row.a}\t{row.b}\t{status}\t{','.join(row.clauses) or '-'}\t{agreement}\t{witnesses}"


def cmd_scan(args: argparse.Namespace, settings: EngineSettings) -> ExitCode:
    spec, error = load_scan_spec(args.spec)
    if spec is None:
        print(f"error: {error}", file=sys.stderr)
        return ExitCode.INPUT_ERROR
    if args.workers:
        spec = spec.model_copy(update={"workers": args.workers})
    output = open(spec.output, "w") if spec.output else None

    def sink(row: ScanRow) -> None:
        print(_format_row(row))
        if output is not None:
            output.write(row.model_dump_json() + "\n")

    print("n\ta\tb\tstatus\tclauses\tengine\twitnesses")
    try:
        summary = asyncio.run(ScanManager(spec, settings).run(sink))
        if output is not None:
            output.write(summary.model_dump_json() + "\n")
    finally:
        if output is not None:
            output.close()
    print(f"rows: {summary.rows}; status {summary.by_status}; clauses {summary.by_clause}; disagreements {summary.disagreements}")
    return ExitCode.VERDICT


COMMANDS = {
    "analyze": cmd_analyze,
    "polygon": cmd_polygon,
    "certify": cmd_certify,
    "scan": cmd_scan,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else logging.WARNING)
    settings = EngineSettings.from_env()
    try:
        return int(COMMANDS[args.command](args, settings))
    except (DomainError, NotApplicableError) as e:
        print(f"error: {describe_error(e)}", file=sys.stderr)
        return int(exit_code_for(e))


def run() -> None:
    sys.exit(main())
