from dataclasses import dataclass
from typing import Callable, List, Sequence

from coeffring.ring import CoefficientRing, RingElement, SubmoduleIdeal


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix [[a, b], [c, d]] over a coefficient ring."""

    a: RingElement
    b: RingElement
    c: RingElement
    d: RingElement

    @classmethod
    def of(cls, ring: CoefficientRing, rows: Sequence[Sequence]) -> "Mat2":
        def coerce(x):
            return x if isinstance(x, RingElement) else ring.from_int(int(x))

        (a, b), (c, d) = rows
        return cls(coerce(a), coerce(b), coerce(c), coerce(d))

    @classmethod
    def identity(cls, ring: CoefficientRing) -> "Mat2":
        return cls.of(ring, [[1, 0], [0, 1]])

    @classmethod
    def scalar(cls, x: RingElement) -> "Mat2":
        zero = x.ring.zero()
        return cls(x, zero, zero, x)

    @property
    def ring(self) -> CoefficientRing:
        return self.a.ring

    def entries(self) -> List[RingElement]:
        return [self.a, self.b, self.c, self.d]

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other) -> "Mat2":
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        return Mat2(self.a * other, self.b * other, self.c * other, self.d * other)

    def __rmul__(self, other) -> "Mat2":
        return Mat2(other * self.a, other * self.b, other * self.c, other * self.d)

    def det(self) -> RingElement:
        return self.a * self.d - self.b * self.c

    def trace(self) -> RingElement:
        return self.a + self.d

    def is_invertible(self) -> bool:
        return self.det().is_unit()

    def inverse(self) -> "Mat2":
        det = self.det()
        if not det.is_unit():
            raise ValueError(f"matrix with determinant {det} is not invertible")
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def __pow__(self, n: int) -> "Mat2":
        if n < 0:
            return self.inverse() ** (-n)
        result = Mat2.identity(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def map(self, fn: Callable[[RingElement], RingElement]) -> "Mat2":
        return Mat2(fn(self.a), fn(self.b), fn(self.c), fn(self.d))

    def reduce_to(self, target: CoefficientRing) -> "Mat2":
        return self.map(lambda x: self.ring.reduce_to(x, target))

    def in_ideal(self, ideal: SubmoduleIdeal) -> bool:
        return all(ideal.contains(x) for x in self.entries())

    def rows(self) -> List[List[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def lower_unipotent(s: RingElement) -> Mat2:
    """[[1, 0], [s, 1]]."""
    ring = s.ring
    return Mat2(ring.one(), ring.zero(), s, ring.one())


def conjugator_matrix(ring: CoefficientRing, name: str) -> Mat2:
    matrices = {
        "identity": [[1, 0], [0, 1]],
        "lower_unipotent": [[1, 0], [1, 1]],
        "swap": [[0, 1], [1, 0]],
    }
    if name not in matrices:
        raise ValueError(f"Unknown basis conjugator {name}")
    return Mat2.of(ring, matrices[name])
