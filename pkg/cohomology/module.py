"""
Finite F_q[G_v]-modules for the tame group <sigma, tau | sigma tau sigma^-1 = tau^v>.

Matrices are galois FieldArrays acting on column vectors. Adjoint modules keep
a coordinate convention so cocycle values can be read back as 2x2 matrices:
Ad uses (E11, E12, E21, E22) and Ad0 uses (E12, E21, H) with H = diag(1, -1).
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence

import galois
import numpy as np
from loguru import logger

from coeffring.field import FiniteField

AD = "ad"
AD0 = "ad0"


def stack(GF, arrays: Sequence[galois.FieldArray], axis: int = 0) -> galois.FieldArray:
    """np.stack through plain integer arrays, re-wrapped in the field."""
    return GF(np.stack([a.view(np.ndarray) for a in arrays], axis=axis))


def vstack(GF, arrays: Sequence[galois.FieldArray]) -> galois.FieldArray:
    return GF(np.vstack([a.view(np.ndarray) for a in arrays]))


def hstack(GF, arrays: Sequence[galois.FieldArray]) -> galois.FieldArray:
    return GF(np.hstack([a.view(np.ndarray) for a in arrays]))


def mat_pow(A: galois.FieldArray, n: int) -> galois.FieldArray:
    GF = type(A)
    result = GF.Identity(A.shape[0])
    base = A
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def geometric_sum(A: galois.FieldArray, n: int) -> galois.FieldArray:
    """sum_{i < n} A^i by repeated doubling."""
    GF = type(A)
    d = A.shape[0]
    if n == 0:
        return GF.Zeros((d, d))
    if n % 2:
        return GF.Identity(d) + A @ geometric_sum(A, n - 1)
    half = geometric_sum(A, n // 2)
    return half + mat_pow(A, n // 2) @ half


def matrix_to_coords(kind: str, X: galois.FieldArray) -> galois.FieldArray:
    GF = type(X)
    if kind == AD:
        return GF([int(X[0, 0]), int(X[0, 1]), int(X[1, 0]), int(X[1, 1])])
    if kind == AD0:
        if X[0, 0] + X[1, 1] != 0:
            raise ValueError("matrix is not trace zero")
        return GF([int(X[0, 1]), int(X[1, 0]), int(X[0, 0])])
    raise ValueError(f"Unknown coordinate convention {kind}")


def coords_to_matrix(kind: str, vec: galois.FieldArray) -> galois.FieldArray:
    GF = type(vec)
    if kind == AD:
        return GF([[int(vec[0]), int(vec[1])], [int(vec[2]), int(vec[3])]])
    if kind == AD0:
        return GF([[int(vec[2]), int(vec[0])], [int(vec[1]), int(-vec[2])]])
    raise ValueError(f"Unknown coordinate convention {kind}")


@dataclass(eq=False)
class GModule:
    field: FiniteField
    v: int
    action_sigma: galois.FieldArray
    action_tau: galois.FieldArray
    name: str = "M"
    basis_kind: Optional[str] = None

    def __post_init__(self):
        d = self.action_sigma.shape[0]
        if d < 1 or self.action_sigma.shape != (d, d) or self.action_tau.shape != (d, d):
            raise ValueError("action matrices must be square of the module dimension")
        if np.linalg.matrix_rank(self.action_sigma) != d or np.linalg.matrix_rank(self.action_tau) != d:
            raise ValueError("action matrices must be invertible")
        lhs = self.action_sigma @ self.action_tau @ np.linalg.inv(self.action_sigma)
        if not np.array_equal(lhs, mat_pow(self.action_tau, self.v)):
            logger.error(f"Module {self.name} violates the tame relation for v = {self.v}")
            raise ValueError("action matrices do not satisfy sigma tau sigma^-1 = tau^v")

    @property
    def dim(self) -> int:
        return self.action_sigma.shape[0]

    @property
    def gf(self):
        return self.field.gf

    def zero(self) -> galois.FieldArray:
        return self.gf.Zeros(self.dim)

    def vector(self, values: Sequence[int]) -> galois.FieldArray:
        if len(values) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(values)}")
        if self.field.f == 1:
            return self.gf([int(x) % self.field.p for x in values])
        if any(not 0 <= int(x) < self.field.q for x in values):
            raise ValueError("coordinates must be field integers in [0, q)")
        return self.gf([int(x) for x in values])

    def as_matrix(self, vec: galois.FieldArray) -> galois.FieldArray:
        if self.basis_kind is None:
            raise ValueError(f"module {self.name} has no matrix coordinates")
        return coords_to_matrix(self.basis_kind, vec)

    def describe(self) -> str:
        return f"{self.name} (dim {self.dim} over {self.field})"


def _residual(field: FiniteField, rows: Optional[Sequence[Sequence[int]]]) -> galois.FieldArray:
    GF = field.gf
    if rows is None:
        return GF.Identity(2)
    return GF([[int(x) for x in row] for row in rows])


def adjoint_module(
    field: FiniteField,
    v: int,
    rho_sigma: Optional[Sequence[Sequence[int]]] = None,
    rho_tau: Optional[Sequence[Sequence[int]]] = None,
    trace_zero: bool = False,
) -> GModule:
    """
    Ad or Ad0 of a residual representation, acting by conjugation.

    Args:
        field: The residue field F_q.
        v: The relation exponent.
        rho_sigma: Residual image of sigma as a 2x2 matrix of field integers;
            the identity when omitted.
        rho_tau: Residual image of tau, likewise.
        trace_zero: Build Ad0 instead of Ad.
    """
    if trace_zero and field.p == 2:
        raise ValueError("Ad0 is not a direct summand of Ad in characteristic 2")
    GF = field.gf
    kind = AD0 if trace_zero else AD
    dim = 3 if trace_zero else 4

    def action(g: galois.FieldArray) -> galois.FieldArray:
        g_inv = np.linalg.inv(g)
        columns = []
        for i in range(dim):
            e = GF.Zeros(dim)
            e[i] = 1
            columns.append(matrix_to_coords(kind, g @ coords_to_matrix(kind, e) @ g_inv))
        return stack(GF, columns, axis=1)

    return GModule(
        field=field,
        v=v,
        action_sigma=action(_residual(field, rho_sigma)),
        action_tau=action(_residual(field, rho_tau)),
        name="Ad0" if trace_zero else "Ad",
        basis_kind=kind,
    )


def trivial_module(field: FiniteField, v: int, dim: int = 1) -> GModule:
    GF = field.gf
    return GModule(
        field=field, v=v, action_sigma=GF.Identity(dim), action_tau=GF.Identity(dim), name=f"F_q^{dim}"
    )


def character_module(field: FiniteField, v: int, sigma_value: int, tau_value: int = 1) -> GModule:
    """The one-dimensional module F_q(phi) with phi(sigma), phi(tau) given."""
    GF = field.gf
    return GModule(
        field=field,
        v=v,
        action_sigma=GF([[sigma_value]]),
        action_tau=GF([[tau_value]]),
        name=f"F_q({sigma_value}, {tau_value})",
    )


def scalar_submodule(field: FiniteField, v: int) -> GModule:
    """The line F_q Id inside Ad, on which conjugation is trivial."""
    module = trivial_module(field, v, 1)
    module.name = "F_q Id"
    return module


def dual(M: GModule) -> GModule:
    """
    Hom(M, mu_p): g acts by chi(g) (A_g^-1)^T with chi the mod p cyclotomic
    character, chi(sigma) = v mod p and chi(tau) = 1.
    """
    GF = M.gf
    chi = GF(M.v % M.field.p)
    return GModule(
        field=M.field,
        v=M.v,
        action_sigma=chi * np.linalg.inv(M.action_sigma).T,
        action_tau=np.linalg.inv(M.action_tau).T,
        name=f"{M.name}*",
    )


def fixed_vectors(M: GModule) -> galois.FieldArray:
    """Basis (as rows) of M^{G_v}."""
    GF = M.gf
    stacked = vstack(GF, [M.action_sigma - GF.Identity(M.dim), M.action_tau - GF.Identity(M.dim)])
    return stacked.null_space()


def decompose_adjoint(field: FiniteField, v: int) -> List[GModule]:
    """Ad = Ad0 + F_q Id for p odd, as modules for the trivial residual representation."""
    if field.p == 2:
        raise ValueError("Ad does not split off Ad0 in characteristic 2")
    return [adjoint_module(field, v, trace_zero=True), scalar_submodule(field, v)]
