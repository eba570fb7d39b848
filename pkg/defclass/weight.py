from coeffring.ring import CoefficientRing, RingElement, filtration_nk
from matrep.rep import TameRep


def weight_point(det_at_gamma: RingElement) -> RingElement:
    """The image of T under the weight map: det rho(gamma) - 1."""
    if not det_at_gamma.is_unit():
        raise ValueError(f"determinant {det_at_gamma} is not a unit")
    return det_at_gamma - 1


def weights_congruent(w1: RingElement, w2: RingElement, R: CoefficientRing) -> bool:
    """w1 = w2 modulo n_2(R), the intersection of pR and m_R^2."""
    if w1.ring != R or w2.ring != R:
        raise ValueError("weights must be elements of R")
    return filtration_nk(R, 2).contains(w1 - w2)


def sigma_weight(rep: TameRep) -> RingElement:
    """Weight point read off the determinant of the sigma image."""
    return weight_point(rep.sigma.det())
