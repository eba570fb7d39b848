import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Type

import galois
from loguru import logger

# galois builds field classes and reads its polynomial database lazily
_GALOIS_LOCK = threading.RLock()


@lru_cache(maxsize=None)
def _galois_field(p: int, f: int, modulus: Tuple[int, ...]) -> Type[galois.FieldArray]:
    if f == 1:
        return galois.GF(p)
    prime_field = galois.GF(p)
    return galois.GF(p**f, irreducible_poly=galois.Poly(list(modulus), field=prime_field))


@dataclass(frozen=True)
class FiniteField:
    """
    The residue field F_q, q = p^f, presented as F_p[t]/(modulus).

    Elements are handled as integers in [0, q) using the galois integer
    representation: the coefficient of t^i is the i-th base-p digit.
    """

    p: int
    f: int
    modulus: Tuple[int, ...]  # monic, highest degree first

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def gf(self) -> Type[galois.FieldArray]:
        with _GALOIS_LOCK:
            return _galois_field(self.p, self.f, self.modulus)

    def digits(self, element: int) -> Tuple[int, ...]:
        """Coefficients of t^0, ..., t^{f-1}."""
        return tuple((element // self.p**i) % self.p for i in range(self.f))

    def from_digits(self, digits: Sequence[int]) -> int:
        return sum((d % self.p) * self.p**i for i, d in enumerate(digits))

    def add(self, a: int, b: int) -> int:
        return int(self.gf(a) + self.gf(b))

    def mul(self, a: int, b: int) -> int:
        return int(self.gf(a) * self.gf(b))

    def neg(self, a: int) -> int:
        return int(-self.gf(a))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero is not invertible")
        return int(self.gf(a) ** -1)

    def elements(self) -> range:
        return range(self.q)

    def __str__(self) -> str:
        if self.f == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.f})"


def make_field(p: int, f: int = 1, modulus: Optional[Sequence[int]] = None) -> FiniteField:
    """
    Build F_q for an odd prime p.

    Args:
        p: The characteristic, an odd prime.
        f: The extension degree.
        modulus: Coefficients of a monic degree-f polynomial over F_p, highest
            degree first. When omitted for f > 1 the default irreducible
            polynomial of galois is used.

    Returns:
        A FiniteField whose modulus has been verified to be irreducible.
    """
    with _GALOIS_LOCK:
        return _build_field(p, f, modulus)


def _build_field(p: int, f: int, modulus: Optional[Sequence[int]]) -> FiniteField:
    if not galois.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        raise ValueError("the characteristic must be odd")
    if f < 1:
        raise ValueError(f"extension degree must be at least 1, got {f}")

    if modulus is None:
        if f == 1:
            return FiniteField(p=p, f=1, modulus=(1, 0))
        default = galois.GF(p**f).irreducible_poly
        logger.info(f"Using default modulus {default} for GF({p}^{f})")
        return FiniteField(p=p, f=f, modulus=tuple(int(c) for c in default.coeffs))

    coeffs = [c % p for c in modulus]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    poly = galois.Poly(coeffs, field=galois.GF(p))
    if poly.degree != f:
        raise ValueError(f"modulus {poly} does not have degree {f}")
    if f == 1:
        return FiniteField(p=p, f=1, modulus=(1, 0))
    lead_inverse = pow(coeffs[0], -1, p)
    monic = tuple((c * lead_inverse) % p for c in coeffs)
    if not galois.Poly(list(monic), field=galois.GF(p)).is_irreducible():
        raise ValueError(f"modulus {poly} is reducible over GF({p})")
    return FiniteField(p=p, f=f, modulus=monic)
