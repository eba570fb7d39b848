from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence, Tuple

from loguru import logger

from coeffring.field import FiniteField

WittElement = Tuple[int, ...]


@dataclass(frozen=True)
class WittRing:
    """
    The truncated unramified ring O/p^N with residue field F_q.

    An element is the tuple of coefficients of 1, t, ..., t^{f-1} over Z/p^N,
    multiplied modulo the monic integer lift of the field modulus.
    """

    field: FiniteField
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"truncation level must be at least 1, got {self.N}")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def f(self) -> int:
        return self.field.f

    @property
    def modulus_pN(self) -> int:
        return self.p**self.N

    def zero(self) -> WittElement:
        return (0,) * self.f

    def one(self) -> WittElement:
        return (1,) + (0,) * (self.f - 1)

    def from_int(self, n: int) -> WittElement:
        return ((n % self.modulus_pN),) + (0,) * (self.f - 1)

    def lift_residue(self, element: int) -> WittElement:
        return self.field.digits(element)

    def residue(self, x: WittElement) -> int:
        return self.field.from_digits(x)

    def truncate(self, x: Sequence[int], level: int) -> WittElement:
        mod = self.p**level
        return tuple(c % mod for c in x)

    def add(self, x: WittElement, y: WittElement) -> WittElement:
        mod = self.modulus_pN
        return tuple((a + b) % mod for a, b in zip(x, y))

    def sub(self, x: WittElement, y: WittElement) -> WittElement:
        mod = self.modulus_pN
        return tuple((a - b) % mod for a, b in zip(x, y))

    def neg(self, x: WittElement) -> WittElement:
        mod = self.modulus_pN
        return tuple((-a) % mod for a in x)

    def scale(self, x: WittElement, n: int) -> WittElement:
        mod = self.modulus_pN
        return tuple((a * n) % mod for a in x)

    def mul(self, x: WittElement, y: WittElement) -> WittElement:
        mod = self.modulus_pN
        if self.f == 1:
            return ((x[0] * y[0]) % mod,)
        f = self.f
        prod = [0] * (2 * f - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        # t^f = -(a_{f-1} t^{f-1} + ... + a_0)
        tail = self.field.modulus[1:]
        for degree in range(2 * f - 2, f - 1, -1):
            c = prod[degree]
            if c:
                prod[degree] = 0
                for offset, a in enumerate(tail):
                    prod[degree - 1 - offset] -= c * a
        return tuple(c % mod for c in prod[:f])

    def pow(self, x: WittElement, n: int) -> WittElement:
        if n < 0:
            return self.pow(self.inverse(x), -n)
        result = self.one()
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def residue_square(self, element: int) -> int:
        x = self.lift_residue(element)
        return self.residue(self.mul(x, x))

    def is_unit(self, x: WittElement) -> bool:
        return self.residue(x) != 0

    def inverse(self, x: WittElement) -> WittElement:
        if not self.is_unit(x):
            raise ValueError(f"{x} is not a unit in O/p^{self.N}")
        q = self.field.q
        return self.pow(x, (q - 1) * q ** (self.N - 1) - 1)

    def valuation(self, x: Sequence[int]) -> int:
        """p-adic valuation of x, or N when x = 0."""
        best = self.N
        for c in x:
            c %= self.modulus_pN
            if c == 0:
                continue
            v = 0
            while c % self.p == 0:
                c //= self.p
                v += 1
            best = min(best, v)
        return best

    def elements(self, level: int = None) -> Iterator[WittElement]:
        level = self.N if level is None else level
        return product(range(self.p**level), repeat=self.f)


def hensel_sqrt(ring: WittRing, u: WittElement) -> WittElement:
    """
    Square root of a unit u of O/p^N lifting the canonical root mod p.

    The canonical root mod p is the one whose digits, read from the highest
    power of t down, are lexicographically smallest. It is lifted by Newton
    iteration r -> (r + u/r)/2, which needs p odd.
    """
    if not ring.is_unit(u):
        raise ValueError(f"{u} is not a unit")
    residue = ring.residue(u)
    canonical = next((r for r in ring.field.elements() if ring.residue_square(r) == residue), None)
    if canonical is None:
        raise ValueError(f"{u} is not a square modulo {ring.p}")

    r = ring.lift_residue(canonical)
    half = ring.inverse(ring.from_int(2))
    for _ in range(ring.N + 1):
        if ring.mul(r, r) == tuple(c % ring.modulus_pN for c in u):
            break
        r = ring.mul(ring.add(r, ring.mul(u, ring.inverse(r))), half)
    if ring.mul(r, r) != tuple(c % ring.modulus_pN for c in u):
        logger.error(f"Newton iteration did not converge for {u}")
        raise ValueError(f"no square root of {u} in O/p^{ring.N}")
    return r
