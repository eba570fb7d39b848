"""
The explicit Ad0 cocycles at a trivial prime and the subspaces they span.

With trivial residual action the cocycle condition is (1 - v) X_tau = 0, which
holds for every pair of values since v = 1 mod p.
"""
from typing import Dict, Optional, Sequence, Union

import galois
import numpy as np

from coeffring.field import FiniteField
from cohomology.cocycles import Cocycle, CocycleSpace
from cohomology.module import AD, GModule, adjoint_module, coords_to_matrix, matrix_to_coords
from matrep.rep import is_trivial_prime
from models.models import CocycleLabel, Conjugator

STANDARD_NAMES = ("f1", "f2", "g_nr", "g_ram")

_CONJUGATORS = {
    Conjugator.identity: [[1, 0], [0, 1]],
    Conjugator.lower_unipotent: [[1, 0], [1, 1]],
    Conjugator.swap: [[0, 1], [1, 0]],
}


def ram_parameter(p: int, v: int, y: int) -> int:
    """
    y/(v - 1) reduced to F_p: (y/p) ((v - 1)/p)^-1 mod p.

    Raises:
        ValueError: If p does not divide y or v is not a trivial prime.
    """
    if not is_trivial_prime(v, p):
        raise ValueError(f"{v} is not a trivial prime for p = {p}")
    if y % p:
        raise ValueError(f"the ramification parameter must be divisible by p, got {y}")
    return ((y // p) * pow((v - 1) // p, -1, p)) % p


def ram_residue(field: FiniteField, v: int, y: Sequence[int]) -> int:
    """
    The residue of y/(v - 1) in F_q for y in pO, given by its coefficients
    over Z/p^N.

    Raises:
        ValueError: If p does not divide y or v is not a trivial prime.
    """
    p = field.p
    if any(c % p for c in y):
        raise ValueError(f"the ramification parameter must be divisible by p, got {tuple(y)}")
    return field.mul(field.from_digits([c // p for c in y]), ram_parameter(p, v, p))


def standard_cocycles(
    field: FiniteField, v: int, y: Optional[Union[int, Sequence[int]]] = None
) -> Dict[str, Cocycle]:
    """
    f1, f2, g_nr and g_ram in Ad0 with trivial action.

    Args:
        field: Residue field.
        v: A trivial prime.
        y: The tau entry defining g_ram, as an integer or as the coefficients
            of an element of O/p^N; defaults to p.
    """
    p = field.p
    y = p if y is None else y
    digits = (y,) + (0,) * (field.f - 1) if isinstance(y, int) else tuple(y)
    y_bar = ram_residue(field, v, digits)
    M = adjoint_module(field, v, trace_zero=True)
    GF = M.gf
    zero = M.zero()

    def vec(e12: int, e21: int, h: int) -> galois.FieldArray:
        return GF([e12, e21, h])

    return {
        "f1": Cocycle(M, vec(1, 0, 0), zero.copy()),
        "f2": Cocycle(M, zero.copy(), vec(1, 0, 0)),
        "g_nr": Cocycle(M, vec(0, 1, 0), zero.copy()),
        # tau -> diag(-y_bar, y_bar)
        "g_ram": Cocycle(M, vec(0, 1, 0), vec(0, 0, field.neg(y_bar))),
    }


def base_space(
    field: FiniteField, v: int, base: str, y: Optional[Union[int, Sequence[int]]] = None
) -> CocycleSpace:
    """Q_v = <f1, f2>, P_nr = Q_v + <g_nr>, P_ram = Q_v + <g_ram>."""
    cocycles = standard_cocycles(field, v, y)
    M = cocycles["f1"].module
    match base:
        case "Q":
            return CocycleSpace(M, [cocycles["f1"], cocycles["f2"]], CocycleLabel.Q_v)
        case "P_nr":
            return CocycleSpace(M, [cocycles["f1"], cocycles["f2"], cocycles["g_nr"]], CocycleLabel.P_nr)
        case "P_ram":
            return CocycleSpace(M, [cocycles["f1"], cocycles["f2"], cocycles["g_ram"]], CocycleLabel.P_ram)
        case _:
            raise ValueError(f"Unknown base space {base}. Try one of the following: Q, P_nr, or P_ram")


def conjugate_cocycle(cocycle: Cocycle, C: galois.FieldArray, target: Optional[GModule] = None) -> Cocycle:
    """X -> C X C^-1 valuewise, optionally re-expressed in another adjoint module."""
    M = cocycle.module
    target = target or M
    C_inv = np.linalg.inv(C)

    def move(vec: galois.FieldArray) -> galois.FieldArray:
        return matrix_to_coords(target.basis_kind, C @ M.as_matrix(vec) @ C_inv)

    return Cocycle(target, move(cocycle.val_sigma), move(cocycle.val_tau))


def twisted_spaces(
    field: FiniteField,
    v: int,
    base: str,
    conjugator: Conjugator,
    y: Optional[Union[int, Sequence[int]]] = None,
    central: bool = False,
) -> CocycleSpace:
    """
    The conjugated spaces: Q_v gives M_v, P_nr or P_ram gives N_v.

    With central=True the values are moved into Ad and the unramified
    cocycle sigma -> Id, tau -> 0 is added, giving the tilde spaces.
    """
    source = base_space(field, v, base, y)
    GF = field.gf
    C = GF(_CONJUGATORS[conjugator])
    target = adjoint_module(field, v) if central else source.module
    basis = [conjugate_cocycle(c, C, target) for c in source.basis]
    is_q = base == "Q"
    if central:
        identity = matrix_to_coords(AD, GF.Identity(2))
        basis.append(Cocycle(target, identity, target.zero()))
        label = CocycleLabel.M_tilde_v if is_q else CocycleLabel.N_tilde_v
    else:
        label = CocycleLabel.M_v if is_q else CocycleLabel.N_v
    return CocycleSpace(target, basis, label)


def cocycle_matrices(cocycle: Cocycle):
    """Values at sigma and tau as 2x2 matrices of field integers."""
    M = cocycle.module

    def to_rows(vec: galois.FieldArray):
        return coords_to_matrix(M.basis_kind, vec).view(np.ndarray).tolist()

    return to_rows(cocycle.val_sigma), to_rows(cocycle.val_tau)
