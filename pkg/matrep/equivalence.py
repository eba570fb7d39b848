from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

from coeffring.ring import (
    CoefficientRing,
    RingElement,
    filtration_nk,
    maximal_ideal_power,
    p_ideal,
)
from matrep.mat2 import Mat2, conjugator_matrix
from matrep.rep import TameRep, sigma_scalar
from models.models import DeformClassSpec, Variant


class BackendDisagreement(Exception):
    """The normal-form and search backends reached different decisions."""


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    witness: Optional[Mat2] = None  # witness * rep1 * witness^-1 == rep2


@dataclass(frozen=True)
class Membership:
    member: bool
    normal_form: Optional[TameRep] = None
    conjugator: Optional[Mat2] = None  # conjugate(normal_form, conjugator) == rep
    z: Optional[RingElement] = None
    reason: str = ""


def y_allowed(variant: Variant, y: RingElement) -> bool:
    """Constraint on the tau entry y of the normal form."""
    R = y.ring
    n2 = filtration_nk(R, 2)
    match variant:
        case Variant.D | Variant.D_tilde:
            return maximal_ideal_power(R, 1).contains(y)
        case Variant.D_nr:
            return n2.contains(y)
        case Variant.D_ram:
            return p_ideal(R).contains(y) and not n2.contains(y)
    raise ValueError(f"Unknown variant {variant}")


def z_allowed(variant: Variant, z: RingElement) -> bool:
    if variant == Variant.D_tilde:
        return p_ideal(z.ring).contains(z - 1)
    return (z - 1).is_zero()


def match_normal_form(
    sigma: Mat2, tau: Mat2, u: RingElement, v: int, variant: Variant
) -> Optional[Membership]:
    """
    Check whether (sigma, tau) is literally a normal form
    z u [[v, x], [0, 1]], [[1, y], [0, 1]] of the given variant.
    """
    R = sigma.ring
    if not (sigma.c.is_zero() and tau.c.is_zero()):
        return None
    if tau.a != R.one() or tau.d != R.one():
        return None
    mu = sigma.d
    if not mu.is_unit() or sigma.a != mu * v:
        return None
    z = mu * u.inverse()
    if not z_allowed(variant, z):
        return None
    x = sigma.b * mu.inverse()
    if not filtration_nk(R, 2).contains(x):
        return None
    if not y_allowed(variant, tau.b):
        return None
    return Membership(member=True, z=z)


class EquivalenceBackend(ABC):
    def strictly_equivalent(self, rep1: TameRep, rep2: TameRep) -> Equivalence:
        """
        Decide whether A rep1 A^-1 = rep2 for some A in Id + Mat2(m_R).
        Returns the decision with a witness A when one exists.
        """
        if rep1.ring != rep2.ring or rep1.v != rep2.v:
            raise ValueError("representations must share the ring and the prime v")
        if rep1.sigma == rep2.sigma and rep1.tau == rep2.tau:
            return Equivalence(equivalent=True, witness=Mat2.identity(rep1.ring))
        return self._strictly_equivalent(rep1, rep2)

    def in_class(self, rep: TameRep, spec: DeformClassSpec) -> Membership:
        """
        Decide whether rep is strictly equivalent to C N C^-1 with N a normal
        form of spec.variant and C the spec's basis conjugator.
        """
        if spec.v != rep.v:
            raise ValueError(f"class is for v = {spec.v}, representation has v = {rep.v}")
        R = rep.ring
        C = conjugator_matrix(R, spec.basis_conjugator.value)
        C_inv = C.inverse()
        sigma = C_inv * rep.sigma * C
        tau = C_inv * rep.tau * C
        u = sigma_scalar(R, spec.v, spec.kappa_sigma)
        result = self._in_class(sigma, tau, u, spec)
        if not result.member:
            return result
        # rep = (C K) N (C K)^-1
        return Membership(
            member=True,
            normal_form=result.normal_form,
            conjugator=C * result.conjugator,
            z=result.z,
            reason=result.reason,
        )

    @abstractmethod
    def _strictly_equivalent(self, rep1: TameRep, rep2: TameRep) -> Equivalence:
        raise NotImplementedError

    @abstractmethod
    def _in_class(
        self, sigma: Mat2, tau: Mat2, u: RingElement, spec: DeformClassSpec
    ) -> Membership:
        """
        Membership test in the basis where the class is a plain normal form.
        A positive answer carries the normal form found (as a TameRep) and a
        conjugator K with K N K^-1 = (sigma, tau).
        """
        raise NotImplementedError


def conjugator_count(R: CoefficientRing) -> int:
    """Size of Id + Mat2(m_R)."""
    return maximal_ideal_power(R, 1).order() ** 4


def search_allowed(R: CoefficientRing, bound: int) -> bool:
    return conjugator_count(R) <= bound
