import os
from itertools import product
from typing import Callable, Iterator, List, Optional, Tuple

from loguru import logger

from coeffring.ring import CoefficientRing, RingElement, maximal_ideal_power
from matrep.equivalence import (
    Equivalence,
    EquivalenceBackend,
    Membership,
    conjugator_count,
    match_normal_form,
    search_allowed,
)
from matrep.mat2 import Mat2
from matrep.rep import TameRep, make_tame_rep
from models.models import DeformClassSpec
from services.sharding import owns, run_sharded

DEFORM_SEARCH_BOUND = int(os.environ.get("DEFORM_SEARCH_BOUND", 600000))

Hit = Optional[Tuple[int, Mat2]]


def enumerate_conjugators(
    R: CoefficientRing, shard: int = 0, shards: int = 1
) -> Iterator[Tuple[int, Mat2]]:
    """Indexed elements of Id + Mat2(m_R) owned by one shard."""
    m = list(maximal_ideal_power(R, 1).elements())
    identity = Mat2.identity(R)
    for index, entries in enumerate(product(m, repeat=4)):
        if owns(index, shard, shards):
            yield index, identity + Mat2(*entries)


def first_hit(hits: List[Hit]) -> Hit:
    """Merge shard results by enumeration index so the answer is shard-independent."""
    found = [hit for hit in hits if hit is not None]
    return min(found, key=lambda hit: hit[0]) if found else None


class SearchBackend(EquivalenceBackend):
    """Exhaustive enumeration of Id + Mat2(m_R); an oracle for tiny rings."""

    def __init__(self, bound: Optional[int] = None, shards: int = 1):
        self.bound = bound if bound is not None else DEFORM_SEARCH_BOUND
        self.shards = shards

    def _check_bound(self, R: CoefficientRing) -> None:
        if not search_allowed(R, self.bound):
            logger.error(f"{conjugator_count(R)} conjugators exceed the search bound {self.bound}")
            raise ValueError(
                f"ring of order {R.order} is too large for exhaustive search "
                f"(bound {self.bound} conjugators)"
            )

    def _search(self, R: CoefficientRing, accept: Callable[[Mat2], bool]) -> Hit:
        self._check_bound(R)

        def scan(shard: int, shards: int) -> Hit:
            for index, A in enumerate_conjugators(R, shard, shards):
                if accept(A):
                    return index, A
            return None

        return first_hit(run_sharded(scan, self.shards))

    def _strictly_equivalent(self, rep1: TameRep, rep2: TameRep) -> Equivalence:
        S1, T1, S2, T2 = rep1.sigma, rep1.tau, rep2.sigma, rep2.tau
        hit = self._search(rep1.ring, lambda A: A * S1 == S2 * A and A * T1 == T2 * A)
        if hit is None:
            return Equivalence(equivalent=False)
        return Equivalence(equivalent=True, witness=hit[1])

    def _in_class(
        self, sigma: Mat2, tau: Mat2, u: RingElement, spec: DeformClassSpec
    ) -> Membership:
        R = sigma.ring

        def accept(A: Mat2) -> bool:
            A_inv = A.inverse()
            W_tau = A * tau * A_inv
            if not W_tau.c.is_zero():
                return False
            return match_normal_form(A * sigma * A_inv, W_tau, u, spec.v, spec.variant) is not None

        hit = self._search(R, accept)
        if hit is None:
            return Membership(member=False, reason="no conjugator in Id + Mat2(m) reaches a normal form")
        A = hit[1]
        A_inv = A.inverse()
        W_sigma = A * sigma * A_inv
        W_tau = A * tau * A_inv
        found = match_normal_form(W_sigma, W_tau, u, spec.v, spec.variant)
        return Membership(
            member=True,
            normal_form=make_tame_rep(R, spec.v, W_sigma, W_tau),
            conjugator=A_inv,
            z=found.z,
        )
