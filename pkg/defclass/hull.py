"""
Ring identities used when the hull is built one step at a time.

The source S = O[[U]]/(p^N, U^e) maps to T/n_k(T) by U -> G and by
U -> G + H, with N and e the least exponents, at least 4, that both maps
send to zero. When G and H lie in m_T and pH lies in n_{k-1}, every term of
p^a ((G + H)^b - G^b) with a >= 1 and a + b >= 3 is a multiple of pH by an
element of m_T, so the two maps agree on n_3(S). The matching step on the
representation side twists by a cocycle tensor [pH] and extracts the class
again as sigma mu^-1 - Id.
"""
import random
from typing import List, Optional, Tuple, Union

from loguru import logger

from coeffring.hom import agree_on, substitution_hom
from coeffring.ring import (
    CoefficientRing,
    RingElement,
    SubmoduleIdeal,
    filtration_nk,
    make_coeffring,
    maximal_ideal_power,
)
from coeffring.witt import WittRing
from cohomology.cocycles import cocycle_space
from cohomology.module import adjoint_module
from cohomology.standard import standard_cocycles
from defclass.twist import TwistDatum, cocycle_difference, exp_twist_all
from defclass.weight import sigma_weight, weights_congruent
from matrep.rep import TameRep, normal_form_rep
from models.models import HullStepReport


def hull_source(T: CoefficientRing, N: int = 4, e: int = 4) -> CoefficientRing:
    """O[[U]]/(p^N, U^e) over the residue field of T."""
    return make_coeffring(WittRing(field=T.field, N=N), ["U"], [f"U^{e}"])


def _vanishing_exponent(x: RingElement) -> int:
    e = 4
    while not (x**e).is_zero():
        e += 1
    return e


def source_exponents(T_k: CoefficientRing, G: RingElement, H: RingElement) -> Tuple[int, int]:
    """(N, e) for the hull source mapping to T_k by U -> G and U -> G + H."""
    return _vanishing_exponent(T_k.p_element()), max(_vanishing_exponent(G), _vanishing_exponent(G + H))


def substitution_agreement(
    T: CoefficientRing, k: int, G: RingElement, H: RingElement
) -> Tuple[int, bool]:
    """
    Compare U -> G and U -> G + H into T/n_k(T) on the layer basis of n_3(S).

    Returns:
        (number of basis elements compared, whether the maps agree on all).

    Raises:
        ValueError: If k < 3, G or H is outside m_T, or pH is outside n_{k-1}.
    """
    if k < 3:
        raise ValueError(f"the hull step needs k >= 3, got {k}")
    m = maximal_ideal_power(T, 1)
    if not (m.contains(G) and m.contains(H)):
        raise ValueError("G and H must lie in the maximal ideal")
    if not filtration_nk(T, k - 1).contains(H * T.p):
        raise ValueError(f"pH must lie in n_{k - 1}")
    T_k = T.quotient(filtration_nk(T, k))
    G_k, H_k = T.reduce_to(G, T_k), T.reduce_to(H, T_k)
    S = hull_source(T, *source_exponents(T_k, G_k, H_k))
    phi = substitution_hom(S, T_k, {"U": G_k})
    psi = substitution_hom(S, T_k, {"U": G_k + H_k})
    return agree_on(phi, psi, filtration_nk(S, 3))


def twist_roundtrip(rep: TameRep, data: List[TwistDatum], J: SubmoduleIdeal) -> bool:
    """exp_twist followed by cocycle_difference recovers the twisted representation."""
    twisted = exp_twist_all(rep, data)
    recovered = exp_twist_all(rep, cocycle_difference(twisted, rep, J))
    return recovered.sigma == twisted.sigma and recovered.tau == twisted.tau


def hull_step_check(
    T: CoefficientRing,
    k: int,
    G: Union[int, RingElement],
    H: Union[int, RingElement],
    v: int,
    kappa_sigma: int,
    trials: int = 50,
    seed: Optional[int] = 0,
) -> HullStepReport:
    """
    Run the substitution agreement and the twist/extract round trips over
    T/n_k(T), starting from the normal form with x = 0 and y = p.
    """
    G = T.from_int(G) if isinstance(G, int) else G
    H = T.from_int(H) if isinstance(H, int) else H
    checked, agreement = substitution_agreement(T, k, G, H)

    T_k = T.quotient(filtration_nk(T, k))
    S = hull_source(T, *source_exponents(T_k, T.reduce_to(G, T_k), T.reduce_to(H, T_k)))
    J = filtration_nk(T_k, k - 1)
    mu = normal_form_rep(T_k, v, kappa_sigma, T_k.zero(), T_k.from_int(T.p))

    pH = T.reduce_to(H * T.p, T_k)
    injected = [TwistDatum(cocycle=standard_cocycles(T.field, v)["g_nr"], scalar=pH, name="g_nr")]
    gamma = cocycle_difference(exp_twist_all(mu, injected), mu, J)
    roundtrip = twist_roundtrip(mu, injected, J)

    rng = random.Random(seed)
    space = cocycle_space(adjoint_module(T.field, v, trace_zero=True))
    q = T.field.q
    congruent = True
    for _ in range(trials):
        cocycle = space.combination([rng.randrange(q) for _ in range(space.dim)])
        datum = TwistDatum(cocycle=cocycle, scalar=T_k.random_element(rng, J))
        roundtrip = roundtrip and twist_roundtrip(mu, [datum], J)
        twisted = exp_twist_all(mu, [datum])
        congruent = congruent and weights_congruent(sigma_weight(twisted), sigma_weight(mu), T_k)
    logger.info(f"Hull step over {T_k}: agreement {agreement}, round trips {roundtrip}")

    return HullStepReport(
        source=S.describe(),
        target=T_k.describe(),
        k=k,
        agreement_checked=checked,
        agreement=agreement,
        gamma_terms=[d.describe() for d in gamma],
        twist_roundtrips=trials + 1,
        roundtrip=roundtrip,
        weights_congruent=congruent,
    )
