"""Module-level entry points for strict equivalence and class membership."""
from typing import Optional

from matrep.equivalence import Equivalence, Membership
from matrep.factory import get_backend
from matrep.rep import TameRep
from models.models import DeformClassSpec


def strictly_equivalent(
    rep1: TameRep, rep2: TameRep, mode: Optional[str] = None, bound: Optional[int] = None
) -> Equivalence:
    return get_backend(mode, bound=bound).strictly_equivalent(rep1, rep2)


def in_deform_class(
    rep: TameRep, spec: DeformClassSpec, mode: Optional[str] = None, bound: Optional[int] = None
) -> Membership:
    return get_backend(mode, bound=bound).in_class(rep, spec)
