"""
Fibers of the reduction map modulo a nearly small ideal J.

Lifts of a base representation over R/J are rho_0 + E with E in Mat2(J)^2
and rho_0 the digitwise lift. Because m_R J = 0, a conjugator A in
Id + Mat2(m_R) that fixes the base modulo J moves every lift by the same
vector A rho_0 A^-1 - rho_0, and the twist by X (x) j moves every lift by
X j rho_0. Both actions are translations, so strict-equivalence classes are
orbits of the translation subgroup and the H^1 (x) J action is read off the
quotient.
"""
import os
from itertools import product
from typing import Dict, List, Optional, Set, Tuple

from loguru import logger

from coeffring.ring import CoefficientRing, SubmoduleIdeal, is_nearly_small
from cohomology.cocycles import cocycle_space, h_dims
from defclass.twist import TwistDatum, residual_module
from matrep.classes import in_deform_class
from matrep.equivalence import search_allowed
from matrep.mat2 import Mat2
from matrep.providers.search_backend import DEFORM_SEARCH_BOUND, enumerate_conjugators
from matrep.rep import TameRep
from models.models import DeformClassSpec, FiberReport
from services.sharding import run_sharded
from services.union_find import find_orbits

FIBER_RING_BOUND = int(os.environ.get("FIBER_RING_BOUND", 3**10))
SPAN_BOUND = 3**12
REPORT_LIMIT = 32

Shift = Tuple[Mat2, Mat2]


def _key(shift: Shift):
    return tuple(x.coeffs for x in shift[0].entries() + shift[1].entries())


def _add(a: Shift, b: Shift) -> Shift:
    return a[0] + b[0], a[1] + b[1]


def lift_base(R: CoefficientRing, base: TameRep) -> Shift:
    return base.sigma.map(R.lift_from), base.tau.map(R.lift_from)


def _span(gens: List[Shift], zero: Shift, p: int, bound: int) -> Optional[Set[Shift]]:
    """The F_p-span of gens, or None once it exceeds the bound."""
    span = {zero}
    for g in gens:
        if g in span:
            continue
        multiples = [zero]
        for _ in range(p - 1):
            multiples.append(_add(multiples[-1], g))
        span = {_add(s, m) for s in span for m in multiples}
        if len(span) > bound:
            return None
    return span


def _basis(vectors: List[Shift], zero: Shift, p: int) -> List[Shift]:
    span = {zero}
    basis = []
    for g in sorted(vectors, key=_key):
        if g in span:
            continue
        basis.append(g)
        multiples = [zero]
        for _ in range(p - 1):
            multiples.append(_add(multiples[-1], g))
        span = {_add(s, m) for s in span for m in multiples}
    return basis


def translation_subgroup(
    R: CoefficientRing, J: SubmoduleIdeal, rho0: Shift, shards: int = 1, bound: Optional[int] = None
) -> Set[Shift]:
    """{A rho_0 A^-1 - rho_0 : A in Id + Mat2(m_R) fixing the base mod J}."""
    if not search_allowed(R, DEFORM_SEARCH_BOUND if bound is None else bound):
        raise ValueError(f"ring of order {R.order} is too large for conjugator enumeration")
    sigma0, tau0 = rho0

    def scan(shard: int, count: int) -> Set[Shift]:
        found = set()
        for _, A in enumerate_conjugators(R, shard, count):
            A_inv = A.inverse()
            delta = (A * sigma0 * A_inv - sigma0, A * tau0 * A_inv - tau0)
            if delta[0].in_ideal(J) and delta[1].in_ideal(J):
                found.add(delta)
        return found

    return set().union(*run_sharded(scan, shards))


def fiber_enumerate(
    R: CoefficientRing,
    J: SubmoduleIdeal,
    base: TameRep,
    spec: Optional[DeformClassSpec] = None,
    mode: Optional[str] = None,
    shards: int = 1,
    bound: Optional[int] = None,
) -> FiberReport:
    """
    Enumerate the lifts of base to R (members of the class when spec is
    given) up to strict equivalence and describe the H^1 (x) J action.

    Raises:
        ValueError: If R exceeds the fiber bound, J is not nearly small, or
            base does not live over R/J (or is outside the class).
    """
    if R.order > FIBER_RING_BOUND:
        raise ValueError(f"ring of order {R.order} exceeds the fiber bound {FIBER_RING_BOUND}")
    if not is_nearly_small(R, J):
        raise ValueError(f"ideal {J.describe()} is not nearly small")
    if base.ring != R.quotient(J):
        raise ValueError("base representation is not defined over R/J")
    if spec is not None and not in_deform_class(base, spec, mode=mode, bound=bound).member:
        raise ValueError("base representation is not in the class")

    v = base.v
    rho0 = lift_base(R, base)
    zero = (Mat2.scalar(R.zero()), Mat2.scalar(R.zero()))
    J_elements = list(J.elements())
    logger.info(f"Enumerating {len(J_elements) ** 8} candidate lifts over {R}")

    fiber: Dict[Shift, TameRep] = {}
    for entries in product(J_elements, repeat=8):
        shift = (Mat2(*entries[:4]), Mat2(*entries[4:]))
        candidate = TameRep(R, v, rho0[0] + shift[0], rho0[1] + shift[1])
        if not candidate.relation_holds():
            continue
        if spec is not None and not in_deform_class(candidate, spec, mode=mode, bound=bound).member:
            continue
        fiber[shift] = candidate

    module = residual_module(base)
    h1 = h_dims(module).h1
    j_basis = J.basis()
    j_dim = len(j_basis) // R.base.f
    deltas = translation_subgroup(R, J, rho0, shards, bound)
    delta_basis = _basis(list(deltas), zero, R.p)

    def translate(g: Shift, x: Shift) -> Optional[Shift]:
        y = _add(x, g)
        return y if y in fiber else None

    classes = find_orbits(delta_basis, fiber, translate)
    reps = sorted(classes.reps(), key=_key)
    index = {rep: i for i, rep in enumerate(reps)}

    twists = []
    for cocycle in cocycle_space(module).basis:
        for j in j_basis:
            s, t = TwistDatum(cocycle=cocycle, scalar=j).matrices()
            twists.append((s * rho0[0], t * rho0[1]))

    report = FiberReport(
        base=base.describe(),
        fiber_size=len(fiber),
        empty=not fiber,
        num_classes=len(reps),
        class_representatives=[fiber[rep].describe() for rep in reps[:REPORT_LIMIT]],
        h1_dim=h1,
        j_dim=j_dim,
        translation_subgroup_order=len(deltas),
    )
    if not fiber:
        logger.info("Fiber is empty")
        return report

    if len(reps) <= REPORT_LIMIT:
        report.action_table = [
            [
                index[classes.find(y)] if (y := translate(g, rep)) is not None else None
                for g in twists
            ]
            for rep in reps
        ]

    if spec is None:
        orbits = find_orbits(delta_basis + twists, fiber, translate)
        transitive = len(orbits) == 1
        report.simply_transitive = transitive and len(reps) == R.field.q ** (h1 * j_dim)
    else:
        report.stabilizer_dim = _stabilizer_dim(fiber, twists, zero, R)
    return report


def _stabilizer_dim(fiber: Dict[Shift, TameRep], twists: List[Shift], zero: Shift, R: CoefficientRing) -> Optional[int]:
    """F_q-dimension of the twists carrying the fiber onto itself, when small enough to count."""
    if len(fiber) ** 2 > 10**7:
        return None
    span = _span(twists, zero, R.p, SPAN_BOUND)
    if span is None:
        return None
    points = list(fiber)
    e0 = points[0]
    stabilizer = 0
    for point in points:
        d = (point[0] - e0[0], point[1] - e0[1])
        if d in span and all(_add(x, d) in fiber for x in points):
            stabilizer += 1
    q = R.field.q
    dim = 0
    while stabilizer > 1 and stabilizer % q == 0:
        stabilizer //= q
        dim += 1
    return dim if stabilizer == 1 else None
