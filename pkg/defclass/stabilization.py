"""
Stabilization of the trivial-prime deformation classes under tangent twists.

Over R_k = R/n_{k+1} every basis cocycle of N_v tensored with every basis
element of n_k/n_{k+1} is applied to a sample of the class and membership is
re-tested. For k >= 2 every twist stays in the class; over O/p^2 with k = 1
the unramified twist by p leaves it.
"""
from typing import List, Optional, Tuple, Union

from loguru import logger

from coeffring.field import make_field
from coeffring.ring import (
    CoefficientRing,
    RingElement,
    filtration_nk,
    graded_piece,
    make_coeffring,
    maximal_ideal_power,
    p_ideal,
)
from coeffring.witt import WittRing
from cohomology.standard import twisted_spaces
from defclass.twist import TwistDatum, exp_twist, graded_scalars
from matrep.classes import in_deform_class
from matrep.equivalence import Membership
from matrep.mat2 import Mat2, conjugator_matrix, lower_unipotent
from matrep.rep import TameRep, conjugate, is_trivial_prime, normal_form_rep, sigma_scalar
from models.models import Conjugator, DeformClassSpec, StabilizationReport, TwistOutcome, Variant

# kind -> (variant, basis conjugator, source space of N_v, cocycle names)
CLASS_KINDS = {
    "nr": (Variant.D_nr, Conjugator.lower_unipotent, "P_nr", ("f1", "f2", "g_nr")),
    "ram": (Variant.D_ram, Conjugator.swap, "P_ram", ("f1", "f2", "g_ram")),
}


def _kind(variant: str) -> Tuple[Variant, Conjugator, str, Tuple[str, ...]]:
    if variant not in CLASS_KINDS:
        raise ValueError(f"Unknown class {variant}. Try one of the following: nr or ram")
    return CLASS_KINDS[variant]


def truncation(R: CoefficientRing, k: int) -> CoefficientRing:
    """R/n_{k+1}."""
    return R.quotient(filtration_nk(R, k + 1))


def class_spec(variant: str, v: int, kappa_sigma: int) -> DeformClassSpec:
    kind, conjugator, _, _ = _kind(variant)
    return DeformClassSpec(variant=kind, v=v, kappa_sigma=kappa_sigma, basis_conjugator=conjugator)


def stabilization_sample(R_k: CoefficientRing, variant: str, v: int, kappa_sigma: int) -> TameRep:
    """
    C N C^-1 with N the normal form x = 0 and y = p^2 (nr) or y = p (ram),
    C the class's basis conjugator.
    """
    _, conjugator, _, _ = _kind(variant)
    y = R_k.from_int(R_k.p**2 if variant == "nr" else R_k.p)
    normal = normal_form_rep(R_k, v, kappa_sigma, R_k.zero(), y)
    return conjugate(normal, conjugator_matrix(R_k, conjugator.value))


def ram_entry(membership: Membership, variant: str, R_k: CoefficientRing) -> Tuple[int, ...]:
    """
    Constant coefficient of the tau entry y of the sample's normal form, which
    fixes g_ram. Strict equivalence scales y by a unit congruent to 1, so its
    class modulo n_2 does not depend on the witness.
    """
    if variant != "ram":
        return R_k.base.from_int(R_k.p)
    return membership.normal_form.tau.b.coeffs[0]


def stabilization_check(
    R: CoefficientRing,
    k: int,
    variant: str,
    v: int,
    kappa_sigma: int,
    sample: Optional[TameRep] = None,
    mode: Optional[str] = None,
    bound: Optional[int] = None,
) -> StabilizationReport:
    """
    Twist a class member over R/n_{k+1} by N_v (x) n_k/n_{k+1} and re-test membership.

    Raises:
        ValueError: If k < 1 or the sample is not in the class.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    _, conjugator, source, names = _kind(variant)
    R_k = truncation(R, k)
    spec = class_spec(variant, v, kappa_sigma)
    sample = sample if sample is not None else stabilization_sample(R_k, variant, v, kappa_sigma)
    if sample.ring != R_k:
        raise ValueError("sample must be defined over R/n_{k+1}")
    membership = in_deform_class(sample, spec, mode=mode, bound=bound)
    if not membership.member:
        raise ValueError(f"sample {sample.describe()} is not in the {variant} class")

    space = twisted_spaces(R.field, v, source, conjugator, y=ram_entry(membership, variant, R_k))
    scalars = graded_scalars(R, graded_piece(R, k).basis, target=R_k)
    logger.info(f"Checking {space.dim} x {len(scalars)} twists over {R_k}")

    outcomes: List[TwistOutcome] = []
    violations: List[str] = []
    for name, cocycle in zip(names, space.basis):
        for scalar in scalars:
            datum = TwistDatum(cocycle=cocycle, scalar=scalar, name=name)
            twisted = exp_twist(sample, datum)
            result = in_deform_class(twisted, spec, mode=mode, bound=bound)
            outcomes.append(
                TwistOutcome(
                    twist=datum.describe(),
                    member_before=True,
                    member_after=result.member,
                    witness=result.conjugator.rows() if result.member else None,
                )
            )
            if not result.member:
                violations.append(datum.describe())
    return StabilizationReport(
        ring=R_k.describe(),
        k=k,
        variant=variant,
        twists=outcomes,
        all_preserved=not violations,
        violations=violations,
    )


def failure_probe(
    p: int, v: int, kappa_sigma: int, f: int = 1, mode: Optional[str] = None, bound: Optional[int] = None
) -> StabilizationReport:
    """
    The k = 1 check over O/p^2 for the unramified class. A report with no
    violation contradicts the expected failure and is logged as a discrepancy.
    """
    R = make_coeffring(WittRing(field=make_field(p, f), N=2), [], [])
    report = stabilization_check(R, 1, "nr", v, kappa_sigma, mode=mode, bound=bound)
    if report.all_preserved:
        logger.warning(f"No twist leaves the class over O/{p}^2; expected at least one")
    return report


def _element(R: CoefficientRing, x: Union[int, RingElement]) -> RingElement:
    return R.from_int(x) if isinstance(x, int) else x


def conjugation_identity_check(
    R: CoefficientRing,
    k: int,
    r: Union[int, RingElement],
    x: Union[int, RingElement],
    y: Union[int, RingElement],
    v: int,
    kappa_sigma: Optional[int] = None,
) -> bool:
    """
    With s = r ((v - 1)/p)^-1 and C = [[1, 0], [s, 1]], check in R/n_{k+1} that

        C^-1 u [[v, x], [p r, 1]] C = u [[v, x], [0, 1]],

    and for tau either C^-1 tau C = tau (y in n_2) or
    C tau C^-1 = [[1 - y s, y], [0, 1 + y s]] (y in pR outside n_2).

    Raises:
        ValueError: If x is not in n_2, r not in m_R, p r not in n_k or y not in pR.
    """
    if not is_trivial_prime(v, R.p):
        raise ValueError(f"{v} is not a trivial prime for p = {R.p}")
    r, x, y = (_element(R, a) for a in (r, x, y))
    if not filtration_nk(R, 2).contains(x):
        raise ValueError("x must lie in n_2")
    if not maximal_ideal_power(R, 1).contains(r):
        raise ValueError("r must lie in the maximal ideal")
    if not filtration_nk(R, k).contains(r * R.p):
        raise ValueError(f"p r must lie in n_{k}")
    if not p_ideal(R).contains(y):
        raise ValueError("y must lie in pR")

    R_k = truncation(R, k)
    r, x, y = (R.reduce_to(a, R_k) for a in (r, x, y))
    u = sigma_scalar(R_k, v, v if kappa_sigma is None else kappa_sigma)
    s = r * R_k.from_int((v - 1) // R.p).inverse()
    C = lower_unipotent(s)
    C_inv = C.inverse()

    twisted_sigma = Mat2.of(R_k, [[v, x], [r * R.p, 1]]) * u
    normal_sigma = Mat2.of(R_k, [[v, x], [0, 1]]) * u
    sigma_ok = C_inv * twisted_sigma * C == normal_sigma

    tau = Mat2.of(R_k, [[1, y], [0, 1]])
    if filtration_nk(R_k, 2).contains(y):
        tau_ok = C_inv * tau * C == tau
    else:
        tau_ok = C * tau * C_inv == Mat2.of(R_k, [[1 - y * s, y], [0, 1 + y * s]])
    logger.info(f"s = {s}: sigma identity {sigma_ok}, tau identity {tau_ok}")
    return sigma_ok and tau_ok
