from loguru import logger

from coeffring.ring import RingElement
from matrep.equivalence import BackendDisagreement, Equivalence, EquivalenceBackend, Membership
from matrep.mat2 import Mat2
from matrep.providers.normal_form_backend import NormalFormBackend
from matrep.providers.search_backend import SearchBackend
from matrep.rep import TameRep
from models.models import DeformClassSpec


class CrossCheckBackend(EquivalenceBackend):
    """Runs both backends and raises BackendDisagreement if their decisions differ."""

    def __init__(self, search: SearchBackend, normal_form: NormalFormBackend):
        self.search = search
        self.normal_form = normal_form

    def _strictly_equivalent(self, rep1: TameRep, rep2: TameRep) -> Equivalence:
        fast = self.normal_form._strictly_equivalent(rep1, rep2)
        slow = self.search._strictly_equivalent(rep1, rep2)
        if fast.equivalent != slow.equivalent:
            logger.error(f"Backends disagree on {rep1.describe()} vs {rep2.describe()}")
            raise BackendDisagreement(
                f"normal-form says {fast.equivalent}, search says {slow.equivalent}"
            )
        return fast

    def _in_class(
        self, sigma: Mat2, tau: Mat2, u: RingElement, spec: DeformClassSpec
    ) -> Membership:
        fast = self.normal_form._in_class(sigma, tau, u, spec)
        slow = self.search._in_class(sigma, tau, u, spec)
        if fast.member != slow.member:
            logger.error(f"Backends disagree on membership of sigma = {sigma}, tau = {tau}")
            raise BackendDisagreement(
                f"normal-form says {fast.member}, search says {slow.member} for {spec.variant.value}"
            )
        return fast
