"""
Cocycles of the tame group on a finite module.

A 1-cocycle is fixed by its values X_sigma, X_tau. Expanding X on both sides
of sigma tau sigma^-1 = tau^v with X(gh) = X(g) + g X(h) gives the single
linear condition

    (I - A_tau^v) X_sigma + (A_sigma - sum_{i<v} A_tau^i) X_tau = 0,

so Z^1 is the null space of a d x 2d matrix over F_q.
"""
from dataclasses import dataclass
from typing import Iterator, List, Sequence

import galois
import numpy as np
from loguru import logger

from cohomology.module import GModule, dual, geometric_sum, hstack, mat_pow, vstack
from models.models import CocycleLabel, CohomologyDims
from services.sharding import owns, run_sharded

BRUTE_FORCE_BOUND = 3**12
CHUNK = 1 << 14


def fox_matrix(M: GModule) -> galois.FieldArray:
    GF = M.gf
    identity = GF.Identity(M.dim)
    left = identity - mat_pow(M.action_tau, M.v)
    right = M.action_sigma - geometric_sum(M.action_tau, M.v)
    return hstack(GF, [left, right])


def coboundary_matrix(M: GModule) -> galois.FieldArray:
    """m -> ((A_sigma - 1) m, (A_tau - 1) m) as a 2d x d matrix."""
    GF = M.gf
    identity = GF.Identity(M.dim)
    return vstack(GF, [M.action_sigma - identity, M.action_tau - identity])


@dataclass(eq=False)
class Cocycle:
    module: GModule
    val_sigma: galois.FieldArray
    val_tau: galois.FieldArray

    def __post_init__(self):
        if np.any(self.relator_value()):
            logger.error(f"Relator evaluates to {self.relator_value()} on {self.describe()}")
            raise ValueError("values do not satisfy the cocycle condition")

    def relator_value(self) -> galois.FieldArray:
        return fox_matrix(self.module) @ self.vector()

    def vector(self) -> galois.FieldArray:
        GF = self.module.gf
        return GF(np.concatenate([self.val_sigma.view(np.ndarray), self.val_tau.view(np.ndarray)]))

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.module, self.val_sigma + other.val_sigma, self.val_tau + other.val_tau)

    def scale(self, c: int) -> "Cocycle":
        c = self.module.gf(c)
        return Cocycle(self.module, c * self.val_sigma, c * self.val_tau)

    def sigma_matrix(self) -> galois.FieldArray:
        return self.module.as_matrix(self.val_sigma)

    def tau_matrix(self) -> galois.FieldArray:
        return self.module.as_matrix(self.val_tau)

    def describe(self) -> str:
        return f"sigma -> {self.val_sigma.tolist()}, tau -> {self.val_tau.tolist()}"


def cocycle_from_vector(M: GModule, vec: galois.FieldArray) -> Cocycle:
    return Cocycle(M, vec[: M.dim].copy(), vec[M.dim:].copy())


@dataclass(eq=False)
class CocycleSpace:
    module: GModule
    basis: List[Cocycle]
    label: CocycleLabel = CocycleLabel.custom

    def __post_init__(self):
        if self.basis and np.linalg.matrix_rank(self.vectors()) != len(self.basis):
            raise ValueError(f"basis of {self.label.value} is not linearly independent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> galois.FieldArray:
        GF = self.module.gf
        if not self.basis:
            return GF.Zeros((0, 2 * self.module.dim))
        return GF(np.stack([c.vector().view(np.ndarray) for c in self.basis]))

    def contains(self, cocycle: Cocycle) -> bool:
        if not self.basis:
            return not np.any(cocycle.vector())
        GF = self.module.gf
        stacked = vstack(GF, [self.vectors(), cocycle.vector().reshape(1, -1)])
        return np.linalg.matrix_rank(stacked) == self.dim

    def combination(self, coefficients: Sequence[int]) -> Cocycle:
        result = cocycle_from_vector(self.module, self.module.gf.Zeros(2 * self.module.dim))
        for c, b in zip(coefficients, self.basis):
            result = result + b.scale(c)
        return result

    def elements(self) -> Iterator[Cocycle]:
        q = self.module.field.q
        for n in range(q**self.dim):
            yield self.combination([(n // q**i) % q for i in range(self.dim)])


def cocycle_space(M: GModule) -> CocycleSpace:
    """Z^1(G_v, M)."""
    kernel = fox_matrix(M).null_space()
    return CocycleSpace(M, [cocycle_from_vector(M, row) for row in kernel], CocycleLabel.Z1)


def coboundary_space(M: GModule) -> CocycleSpace:
    """B^1(G_v, M)."""
    image = coboundary_matrix(M).column_space()
    return CocycleSpace(M, [cocycle_from_vector(M, row) for row in image], CocycleLabel.B1)


def h0(M: GModule) -> int:
    return M.dim - int(np.linalg.matrix_rank(coboundary_matrix(M)))


def h_dims(M: GModule, at_p: bool = False) -> CohomologyDims:
    """
    (h0, h1, h2) at a trivial prime, with h2 = h0(M*) by local duality.

    Raises:
        NotImplementedError: For the decomposition group at p, whose
            dimensions are handled by the ledger.
        ValueError: If the Euler identity h0 - h1 + h2 = 0 fails.
    """
    if at_p:
        raise NotImplementedError("cohomology of G_p is not computed from a presentation")
    zero = h0(M)
    one = cocycle_space(M).dim - coboundary_space(M).dim
    two = h0(dual(M))
    if zero - one + two != 0:
        logger.error(f"Euler identity fails for {M.describe()}: ({zero}, {one}, {two})")
        raise ValueError("local Euler characteristic is not zero")
    return CohomologyDims(module=M.name, dim=M.dim, h0=zero, h1=one, h2=two)


def _digits(start: int, stop: int, q: int, width: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    return (idx[:, None] // (q ** np.arange(width, dtype=np.int64))) % q


def _count_kernel(A: galois.FieldArray, width: int, shard: int, shards: int) -> int:
    GF = type(A)
    q = GF.order
    total = q**width
    count = 0
    for chunk, start in enumerate(range(0, total, CHUNK)):
        if not owns(chunk, shard, shards):
            continue
        X = GF(_digits(start, min(start + CHUNK, total), q, width))
        values = (A @ X.T).view(np.ndarray)
        count += int(np.count_nonzero(np.all(values == 0, axis=0)))
    return count


def _count_image(A: galois.FieldArray, width: int) -> int:
    GF = type(A)
    q = GF.order
    X = GF(_digits(0, q**width, q, width))
    values = (A @ X.T).view(np.ndarray).T
    return int(np.unique(values, axis=0).shape[0])


def _exact_log(count: int, q: int) -> int:
    e = 0
    while count > 1 and count % q == 0:
        count //= q
        e += 1
    if count != 1:
        raise ValueError("count is not a power of q")
    return e


def brute_force_h1(M: GModule, shards: int = 1) -> int:
    """
    h1 as log_q(#Z^1 / #B^1) by enumerating every pair (X_sigma, X_tau).
    """
    q = M.field.q
    if q ** (2 * M.dim) > BRUTE_FORCE_BOUND:
        raise ValueError(f"{q}^{2 * M.dim} candidate pairs exceed the oracle bound {BRUTE_FORCE_BOUND}")
    F = fox_matrix(M)
    cocycles = sum(run_sharded(lambda shard, count: _count_kernel(F, 2 * M.dim, shard, count), shards))
    coboundaries = _count_image(coboundary_matrix(M), M.dim)
    logger.info(f"{M.name}: {cocycles} cocycles, {coboundaries} coboundaries")
    return _exact_log(cocycles, q) - _exact_log(coboundaries, q)
