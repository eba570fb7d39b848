import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger
from pydantic import BaseModel

from cli.claims import SCENARIO_DIR, SCOPE_NOTE, run_suite
from coeffring.field import make_field
from coeffring.presentation import parse_ring
from coeffring.ring import (
    CoefficientRing,
    RingElement,
    filtration_nk,
    graded_piece,
    in_category_C,
    maximal_ideal_power,
    parse_monomial,
)
from cohomology.cocycles import brute_force_h1, h_dims
from cohomology.module import adjoint_module, decompose_adjoint
from defclass.fiber import fiber_enumerate
from defclass.hull import hull_step_check
from defclass.stabilization import failure_probe, stabilization_check
from ledger.scenario import load_scenario, run_scenario
from matrep.equivalence import BackendDisagreement
from matrep.mat2 import Mat2
from matrep.providers.search_backend import DEFORM_SEARCH_BOUND
from matrep.rep import is_trivial_prime, make_tame_rep
from models.api import (
    CohomResponse,
    DeformResponse,
    FiltrationRow,
    LedgerResponse,
    LiftResponse,
    RingResponse,
    RunConfig,
    VerifyResponse,
)
from services.sharding import VERIFY_SHARDS

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deform", description="Exact checks for Galois deformations at trivial primes"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json"], default="human")
    common.add_argument("--mode", choices=["normal-form", "search", "both"], default=None)
    common.add_argument("--bound", type=positive_int, default=None, help="conjugator search bound")
    common.add_argument("--shards", type=positive_int, default=VERIFY_SHARDS)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    ring = sub.add_parser("ring", parents=[common], help="filtration tables of a coefficient ring")
    ring.add_argument("--spec", required=True, help='e.g. "witt(5,1,3); vars U; rel p^3,U^3"')

    cohom = sub.add_parser("cohom", parents=[common], help="cohomology of Ad and Ad0 at a trivial prime")
    cohom.add_argument("--p", type=int, required=True)
    cohom.add_argument("--v", type=int, required=True)
    cohom.add_argument("--f", type=positive_int, default=1)
    cohom.add_argument("--oracle", action="store_true", help="also count cocycles by brute force")

    ledger = sub.add_parser("ledger", parents=[common], help="ledger scenarios")
    ledger.add_argument("action", choices=["run"])
    ledger.add_argument("file", type=Path)

    deform = sub.add_parser("deform", parents=[common], help="stabilization of a deformation class")
    deform.add_argument("--spec", required=True)
    deform.add_argument("--v", type=int, required=True)
    deform.add_argument("--variant", choices=["nr", "ram"], default="nr")
    deform.add_argument("--k", type=positive_int, default=2)
    deform.add_argument("--kappa", type=int, default=None, help="kappa(sigma_v); defaults to v")
    deform.add_argument("--probe-failure", action="store_true", help="also run the k = 1 probe over O/p^2")
    deform.add_argument("--fiber", action="store_true", help="enumerate lifts of the trivial representation")

    lift = sub.add_parser("lift", parents=[common], help="one step of the hull construction")
    lift.add_argument("--spec", required=True)
    lift.add_argument("--v", type=int, required=True)
    lift.add_argument("--k", type=int, default=3)
    lift.add_argument("--G", required=True, help="monomial such as V or p*V")
    lift.add_argument("--H", required=True)
    lift.add_argument("--kappa", type=int, default=None)
    lift.add_argument("--trials", type=positive_int, default=50)

    verify = sub.add_parser("verify-all", parents=[common], help="run the full verification suite")
    verify.add_argument("--scenarios", type=Path, default=SCENARIO_DIR)
    verify.add_argument("--samples", type=positive_int, default=None)
    return parser


def _ring(text: str) -> CoefficientRing:
    try:
        return parse_ring(text)
    except ValueError as e:
        raise UsageError(f"cannot parse ring {text!r}: {e}")


def _monomial(R: CoefficientRing, text: str) -> RingElement:
    try:
        a, alpha = parse_monomial(text, R.variables)
    except ValueError as e:
        raise UsageError(str(e))
    return R.monomial(alpha, 1, a=a)


def _check_prime(p: int, v: int) -> None:
    if not is_trivial_prime(v, p):
        raise UsageError(f"{v} is not a trivial prime for p = {p}")


def _strs(elements) -> List[str]:
    return [str(x) for x in elements]


def cmd_ring(args) -> RingResponse:
    R = _ring(args.spec)
    rows = []
    for k in range(1, R.nilpotency + 1):
        n_k = filtration_nk(R, k)
        piece = graded_piece(R, k)
        rows.append(
            FiltrationRow(
                k=k,
                m_power=_strs(maximal_ideal_power(R, k).basis()),
                n_k=_strs(n_k.basis()),
                graded=_strs(piece.basis),
                graded_dim=piece.dim,
            )
        )
    return RingResponse(
        presentation=R.describe(), order=R.order, length=R.length, in_category_C=in_category_C(R), rows=rows
    )


def cmd_cohom(args) -> CohomResponse:
    _check_prime(args.p, args.v)
    field = make_field(args.p, args.f)
    modules = [adjoint_module(field, args.v), *decompose_adjoint(field, args.v)]
    rows = [h_dims(M) for M in modules]
    oracle = []
    if args.oracle:
        for M in modules:
            try:
                oracle.append(brute_force_h1(M, shards=args.shards))
            except ValueError as e:
                logger.warning(f"{M.name}: {e}")
                oracle.append(None)
    return CohomResponse(p=args.p, v=args.v, f=args.f, rows=rows, oracle_h1=oracle)


def cmd_ledger(args) -> LedgerResponse:
    try:
        scenario = load_scenario(args.file)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot load {args.file}: {e}")
    return run_scenario(scenario)


def cmd_deform(args) -> DeformResponse:
    R = _ring(args.spec)
    _check_prime(R.p, args.v)
    kappa = args.v if args.kappa is None else args.kappa
    report = stabilization_check(R, args.k, args.variant, args.v, kappa, mode=args.mode, bound=args.bound)
    probe = failure_probe(R.p, args.v, kappa, f=R.base.f, mode=args.mode, bound=args.bound) if args.probe_failure else None
    fiber = None
    if args.fiber:
        J = maximal_ideal_power(R, R.nilpotency - 1)
        base_ring = R.quotient(J)
        base = make_tame_rep(base_ring, args.v, Mat2.identity(base_ring), Mat2.identity(base_ring))
        fiber = fiber_enumerate(R, J, base, mode=args.mode, shards=args.shards, bound=args.bound)
    return DeformResponse(report=report, probe=probe, fiber=fiber)


def cmd_lift(args) -> LiftResponse:
    T = _ring(args.spec)
    _check_prime(T.p, args.v)
    kappa = args.v if args.kappa is None else args.kappa
    G, H = _monomial(T, args.G), _monomial(T, args.H)
    report = hull_step_check(T, args.k, G, H, args.v, kappa, trials=args.trials)
    passed = report.agreement and report.roundtrip and report.weights_congruent
    return LiftResponse(report=report, passed=passed)


def cmd_verify_all(args) -> VerifyResponse:
    claims = run_suite(
        shards=args.shards, mode=args.mode, bound=args.bound, samples=args.samples, scenarios=args.scenarios
    )
    return VerifyResponse(claims=claims, passed=all(c.passed for c in claims), notes=[SCOPE_NOTE])


def render_human(response: BaseModel) -> str:
    if isinstance(response, VerifyResponse):
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.claim}  {c.detail}" for c in response.claims]
        lines += [f"note: {note}" for note in response.notes]
        lines.append("ALL CLAIMS PASSED" if response.passed else "VERIFICATION FAILED")
        return "\n".join(lines)
    if isinstance(response, RingResponse):
        lines = [response.presentation, f"order {response.order}, length {response.length}, in C: {response.in_category_C}"]
        for row in response.rows:
            lines.append(f"k={row.k}  m^k: {row.m_power}  n_k: {row.n_k}  n_k/n_k+1 ({row.graded_dim}): {row.graded}")
        return "\n".join(lines)
    if isinstance(response, CohomResponse):
        lines = [f"p={response.p} v={response.v} f={response.f}"]
        for i, row in enumerate(response.rows):
            oracle = f"  oracle h1={response.oracle_h1[i]}" if response.oracle_h1 else ""
            lines.append(f"{row.module}: dim {row.dim}  h0={row.h0} h1={row.h1} h2={row.h2}{oracle}")
        return "\n".join(lines)
    if isinstance(response, LedgerResponse):
        lines = [f"{response.name} ({response.kind}, {response.claim})"]
        lines += [f"  {c.label}: dim_L={c.dim_L} h0={c.h0} -> {c.contribution:+d}" for c in response.contributions]
        lines.append(f"value {response.value}, expected {response.expected}: {'PASS' if response.passed else 'FAIL'}")
        return "\n".join(lines)
    return response.json(indent=2)


def _passed(response: BaseModel) -> bool:
    if isinstance(response, (LedgerResponse, LiftResponse, VerifyResponse)):
        return response.passed
    if isinstance(response, DeformResponse):
        probe_ok = response.probe is None or bool(response.probe.violations)
        fiber_ok = response.fiber is None or response.fiber.empty or bool(response.fiber.simply_transitive)
        return response.report.all_preserved and probe_ok and fiber_ok
    return True


COMMANDS = {
    "ring": cmd_ring,
    "cohom": cmd_cohom,
    "ledger": cmd_ledger,
    "deform": cmd_deform,
    "lift": cmd_lift,
    "verify-all": cmd_verify_all,
}


def run(argv: Optional[List[str]] = None) -> int:
    logger.remove()
    logger.add(sys.stderr, level=os.environ.get("LOG_LEVEL", "WARNING"))

    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            subcommand=args.subcommand,
            spec=getattr(args, "spec", None),
            v=getattr(args, "v", None),
            variant=getattr(args, "variant", None),
            k=getattr(args, "k", None),
            format=args.format,
            search_bound=DEFORM_SEARCH_BOUND if args.bound is None else args.bound,
            shards=args.shards,
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        response = COMMANDS[config.subcommand](args)
    except (UsageError, ValueError) as e:
        logger.error(e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BackendDisagreement as e:
        logger.error(e)
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAIL

    print(response.json(indent=2) if config.format == "json" else render_human(response))
    return EXIT_PASS if _passed(response) else EXIT_FAIL
