from dataclasses import dataclass
from typing import Optional

import galois
from loguru import logger

from coeffring.ring import CoefficientRing, RingElement, SubmoduleIdeal, maximal_ideal_power
from coeffring.witt import hensel_sqrt
from matrep.mat2 import Mat2


def is_trivial_prime(v: int, p: int) -> bool:
    """v prime with v = 1 mod p and v != 1 mod p^2."""
    return galois.is_prime(v) and v % p == 1 and v % (p * p) != 1


@dataclass(frozen=True)
class TameRep:
    """Images of the tame generators sigma (Frobenius) and tau (inertia) at v."""

    ring: CoefficientRing
    v: int
    sigma: Mat2
    tau: Mat2

    def relation_holds(self) -> bool:
        return self.sigma * self.tau * self.sigma.inverse() == self.tau**self.v

    def residual(self) -> "TameRep":
        return reduce(self, maximal_ideal_power(self.ring, 1))

    def describe(self) -> str:
        return f"sigma = {self.sigma}, tau = {self.tau}"


def make_tame_rep(R: CoefficientRing, v: int, sigma: Mat2, tau: Mat2) -> TameRep:
    """
    Build a representation of the tame group <sigma, tau | sigma tau sigma^-1 = tau^v>.

    Raises:
        ValueError: If v is not a trivial prime for p, a matrix is not
            invertible, or the relation fails.
    """
    if not is_trivial_prime(v, R.p):
        raise ValueError(f"{v} is not a trivial prime for p = {R.p}")
    if sigma.ring != R or tau.ring != R:
        raise ValueError("matrices are not defined over the given ring")
    if not sigma.is_invertible() or not tau.is_invertible():
        raise ValueError("sigma and tau must be invertible")
    rep = TameRep(ring=R, v=v, sigma=sigma, tau=tau)
    if not rep.relation_holds():
        lhs = sigma * tau * sigma.inverse()
        logger.error(f"Tame relation fails: {lhs} != {tau ** v}")
        raise ValueError("relation sigma tau sigma^-1 = tau^v violated")
    return rep


def reduce(rep: TameRep, J: SubmoduleIdeal) -> TameRep:
    """Entrywise reduction to R/J."""
    if J.ring != rep.ring:
        raise ValueError("ideal does not belong to the representation's ring")
    if all(e == 0 for e in J.exponents):
        raise ValueError("cannot reduce modulo the unit ideal")
    target = rep.ring.quotient(J)
    return make_tame_rep(target, rep.v, rep.sigma.reduce_to(target), rep.tau.reduce_to(target))


def reduce_to_ring(rep: TameRep, target: CoefficientRing) -> TameRep:
    return make_tame_rep(target, rep.v, rep.sigma.reduce_to(target), rep.tau.reduce_to(target))


def conjugate(rep: TameRep, A: Mat2) -> TameRep:
    """Generatorwise A rho A^-1."""
    A_inv = A.inverse()
    return make_tame_rep(rep.ring, rep.v, A * rep.sigma * A_inv, A * rep.tau * A_inv)


def sigma_scalar(R: CoefficientRing, v: int, kappa_sigma: int) -> RingElement:
    """The canonical square root of kappa(sigma_v) v^-1, as an element of R."""
    base = R.base
    target = base.mul(base.from_int(kappa_sigma), base.inverse(base.from_int(v)))
    return R.from_witt(hensel_sqrt(base, target))


def normal_form_rep(
    R: CoefficientRing,
    v: int,
    kappa_sigma: int,
    x: RingElement,
    y: RingElement,
    z: Optional[RingElement] = None,
) -> TameRep:
    """sigma -> z u [[v, x], [0, 1]], tau -> [[1, y], [0, 1]] with u^2 = kappa(sigma_v)/v."""
    u = sigma_scalar(R, v, kappa_sigma)
    scale = u if z is None else u * z
    sigma = Mat2.of(R, [[R.from_int(v), x], [0, 1]]) * scale
    tau = Mat2.of(R, [[1, y], [0, 1]])
    return make_tame_rep(R, v, sigma, tau)
