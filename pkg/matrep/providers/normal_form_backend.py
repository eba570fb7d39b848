"""
Deterministic equivalence backend.

Every A in Id + Mat2(m_R) factors as [[1, 0], [s, 1]] P with P upper
triangular, and conjugating a normal form by such a P keeps it a normal form
of the same variant (x moves inside n_2, y is scaled by a unit). A
representation is therefore in the class exactly when some s in m_R makes
(1, s) a common eigenvector: of sigma for z u v and of tau for 1. The scalar z
is read off the trace, after which the conditions are linear in s and are
solved exactly over Z/p^N.
"""
from typing import List

from loguru import logger

from coeffring.ring import RingElement, filtration_nk, maximal_ideal_power
from matrep.equivalence import (
    Equivalence,
    EquivalenceBackend,
    Membership,
    match_normal_form,
    y_allowed,
    z_allowed,
)
from matrep.mat2 import Mat2, lower_unipotent
from matrep.rep import TameRep, make_tame_rep
from models.models import DeformClassSpec, Variant
from services.linalg import solve_ring_linear


class NormalFormBackend(EquivalenceBackend):
    def _strictly_equivalent(self, rep1: TameRep, rep2: TameRep) -> Equivalence:
        R = rep1.ring
        S1, T1, S2, T2 = rep1.sigma, rep1.tau, rep2.sigma, rep2.tau

        def linear(E: List[RingElement]) -> List[RingElement]:
            M = Mat2(*E)
            return (M * S1 - S2 * M).entries() + (M * T1 - T2 * M).entries()

        constant = (S1 - S2).entries() + (T1 - T2).entries()
        solution = solve_ring_linear(R, 4, maximal_ideal_power(R, 1), linear, constant)
        if solution is None:
            return Equivalence(equivalent=False)
        witness = Mat2.identity(R) + Mat2(*solution)
        return Equivalence(equivalent=True, witness=witness)

    def _in_class(
        self, sigma: Mat2, tau: Mat2, u: RingElement, spec: DeformClassSpec
    ) -> Membership:
        R = sigma.ring
        v = spec.v

        if not filtration_nk(R, 2).contains(sigma.b):
            return Membership(member=False, reason="upper right entry of sigma not in n_2")
        if not y_allowed(spec.variant, tau.b):
            return Membership(member=False, reason="upper right entry of tau violates the variant")
        if tau.trace() != R.from_int(2):
            return Membership(member=False, reason="trace of tau is not 2")

        if spec.variant == Variant.D_tilde:
            z = sigma.trace() * (u * (v + 1)).inverse()
            if not z_allowed(spec.variant, z):
                return Membership(member=False, reason="central twist is not 1 mod p")
        else:
            z = R.one()
        mu = z * u
        lam = mu * v
        if sigma.trace() != lam + mu or sigma.det() != lam * mu:
            return Membership(member=False, reason="characteristic polynomial of sigma differs")

        # (1, s) is an eigenvector of sigma for lam and of tau for 1
        def linear(args: List[RingElement]) -> List[RingElement]:
            (s,) = args
            return [sigma.b * s, (sigma.d - lam) * s, tau.b * s, (tau.d - 1) * s]

        constant = [sigma.a - lam, sigma.c, tau.a - 1, tau.c]
        solution = solve_ring_linear(R, 1, maximal_ideal_power(R, 1), linear, constant)
        if solution is None:
            return Membership(member=False, reason="no common eigenvector congruent to (1, 0)")

        L = lower_unipotent(solution[0])
        L_inv = L.inverse()
        W_sigma = L_inv * sigma * L
        W_tau = L_inv * tau * L
        found = match_normal_form(W_sigma, W_tau, u, v, spec.variant)
        if found is None:
            logger.error(f"Eigenvector s = {solution[0]} did not produce a normal form")
            raise ValueError("normal form reduction produced an inconsistent result")
        return Membership(
            member=True,
            normal_form=make_tame_rep(R, v, W_sigma, W_tau),
            conjugator=L,
            z=found.z,
        )
