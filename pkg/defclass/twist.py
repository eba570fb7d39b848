from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from coeffring.ring import CoefficientRing, RingElement, SubmoduleIdeal, is_nearly_small, maximal_ideal_power
from cohomology.cocycles import Cocycle
from cohomology.module import GModule, adjoint_module
from matrep.mat2 import Mat2
from matrep.rep import TameRep, make_tame_rep, reduce


def kills_maximal_ideal(r: RingElement) -> bool:
    """m_R r = 0, i.e. r generates a nearly small ideal."""
    return all((r * g).is_zero() for g in maximal_ideal_power(r.ring, 1).generators())


def lift_field_matrix(R: CoefficientRing, rows) -> Mat2:
    """Entrywise lift of a 2x2 matrix over F_q to R."""
    return Mat2.of(R, [[R.lift_residue(int(x)) for x in row] for row in rows])


@dataclass(eq=False)
class TwistDatum:
    """X tensor r with X a cocycle valued in Ad or Ad0 and m_R r = 0."""

    cocycle: Cocycle
    scalar: RingElement
    name: str = ""

    def __post_init__(self):
        if not kills_maximal_ideal(self.scalar):
            raise ValueError(f"scalar {self.scalar} does not lie in a nearly small ideal")

    def matrices(self):
        R = self.scalar.ring
        sigma = lift_field_matrix(R, self.cocycle.sigma_matrix().view(np.ndarray).tolist())
        tau = lift_field_matrix(R, self.cocycle.tau_matrix().view(np.ndarray).tolist())
        return sigma * self.scalar, tau * self.scalar

    def describe(self) -> str:
        label = self.name or self.cocycle.describe()
        return f"{label} (x) {self.scalar}"


def exp_twist(rep: TameRep, t: TwistDatum) -> TameRep:
    """Generatorwise (Id + X(g) r) rho(g)."""
    return exp_twist_all(rep, [t])


def exp_twist_all(rep: TameRep, data: Sequence[TwistDatum]) -> TameRep:
    """Twist by a sum of tensors; (Id + a)(Id + b) = Id + a + b since the scalars square to zero."""
    R = rep.ring
    X_sigma = Mat2.scalar(R.zero())
    X_tau = Mat2.scalar(R.zero())
    for t in data:
        if t.scalar.ring != R:
            raise ValueError("twist scalar does not live in the representation's ring")
        s, u = t.matrices()
        X_sigma = X_sigma + s
        X_tau = X_tau + u
    identity = Mat2.identity(R)
    return make_tame_rep(R, rep.v, (identity + X_sigma) * rep.sigma, (identity + X_tau) * rep.tau)


def residual_module(rep: TameRep) -> GModule:
    """Ad of the residual representation."""
    R = rep.ring

    def rows(M: Mat2):
        return [[R.residue(M.a), R.residue(M.b)], [R.residue(M.c), R.residue(M.d)]]

    return adjoint_module(R.field, rep.v, rows(rep.sigma), rows(rep.tau))


def ideal_coordinates(x: RingElement, J: SubmoduleIdeal) -> List[int]:
    """
    Coordinates of x in J = sum of p^{e_alpha} O U^alpha, J nearly small, as
    field integers: one per cell.
    """
    R = x.ring
    out = []
    for alpha, e in J.cells():
        c = x.coeffs[R.index[alpha]]
        out.append(R.field.from_digits([(d // R.p**e) % R.p for d in c]))
    return out


def cocycle_difference(sigma_k: TameRep, mu_k: TameRep, J: SubmoduleIdeal) -> List[TwistDatum]:
    """
    Decompose gamma = sigma_k mu_k^-1 - Id over the cells of J.

    Returns:
        One TwistDatum X_alpha (x) p^{e_alpha} U^alpha per cell of J, with
        sigma_k = exp_twist_all(mu_k, result).

    Raises:
        ValueError: If J is not nearly small or the representations differ mod J.
    """
    R = mu_k.ring
    if sigma_k.ring != R or sigma_k.v != mu_k.v:
        raise ValueError("representations must share the ring and v")
    if not is_nearly_small(R, J):
        raise ValueError(f"ideal {J.describe()} is not nearly small")
    gamma_sigma = sigma_k.sigma * mu_k.sigma.inverse() - Mat2.identity(R)
    gamma_tau = sigma_k.tau * mu_k.tau.inverse() - Mat2.identity(R)
    if not (gamma_sigma.in_ideal(J) and gamma_tau.in_ideal(J)):
        logger.error(f"gamma = ({gamma_sigma}, {gamma_tau}) leaves {J.describe()}")
        raise ValueError("representations are not congruent modulo J")

    module = residual_module(mu_k)
    GF = module.gf
    sigma_coords = [ideal_coordinates(x, J) for x in gamma_sigma.entries()]
    tau_coords = [ideal_coordinates(x, J) for x in gamma_tau.entries()]
    data = []
    for index, (alpha, e) in enumerate(J.cells()):
        # entries come in the order a, b, c, d, which is the Ad coordinate order
        cocycle = Cocycle(
            module,
            GF([c[index] for c in sigma_coords]),
            GF([c[index] for c in tau_coords]),
        )
        data.append(TwistDatum(cocycle=cocycle, scalar=R.monomial(alpha, 1, a=e), name=f"gamma[{index}]"))
    return data


def graded_scalars(R: CoefficientRing, basis: Sequence[RingElement], target: Optional[CoefficientRing] = None) -> List[RingElement]:
    """F_q-basis t^j b of a graded piece, optionally pushed to a quotient ring."""
    out = []
    for b in basis:
        for j in range(R.base.f):
            scaled = b * R.lift_residue(R.p**j)
            out.append(R.reduce_to(scaled, target) if target is not None else scaled)
    return out


def reduces_to(rep: TameRep, base: TameRep, J: SubmoduleIdeal) -> bool:
    reduced = reduce(rep, J)
    return reduced.sigma == base.sigma and reduced.tau == base.tau
