"""
Finite-length local O-algebras R = O[[U_1..U_s]]/I with I a monomial ideal in
p and the variables.

As an O-module R is the direct sum over the standard monomials U^alpha of
O/p^{N_alpha}, where N_alpha is the least a with p^a U^alpha in I. Every ideal
used by the deformation code (m_R^k, pR, n_k and the nearly small kernels) is
again monomial, so it is stored as one exponent e_alpha per standard monomial:
the ideal is the sum of p^{e_alpha} O U^alpha.
"""
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from loguru import logger

from coeffring.witt import WittElement, WittRing

Exponent = Tuple[int, ...]
Relation = Tuple[int, Exponent]

_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_monomial(text: str, variables: Sequence[str]) -> Relation:
    """Parse `p^a*U^b*V^c` (factors in any order, `*` optional) into (a, exponents)."""
    a = 0
    exponents = [0] * len(variables)
    factors = [f for f in re.split(r"[*\s]+", text.strip()) if f]
    if not factors:
        raise ValueError(f"empty monomial in {text!r}")
    for factor in factors:
        match = _FACTOR.match(factor)
        if not match:
            raise ValueError(f"cannot parse monomial factor {factor!r}")
        name, power = match.group(1), int(match.group(2) or 1)
        if name == "p":
            a += power
        elif name in variables:
            exponents[variables.index(name)] += power
        else:
            raise ValueError(f"unknown variable {name!r} in {text!r}")
    return a, tuple(exponents)


def format_monomial(a: int, alpha: Exponent, variables: Sequence[str]) -> str:
    factors = []
    if a:
        factors.append("p" if a == 1 else f"p^{a}")
    for name, e in zip(variables, alpha):
        if e:
            factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class CoefficientRing:
    base: WittRing
    variables: Tuple[str, ...]
    relations: Tuple[Relation, ...]  # minimal monomial generators, p^N included

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def field(self):
        return self.base.field

    @cached_property
    def bounds(self) -> Tuple[int, ...]:
        return tuple(
            min(
                alpha[i]
                for a, alpha in self.relations
                if a == 0 and all(e == 0 for j, e in enumerate(alpha) if j != i)
            )
            for i in range(len(self.variables))
        )

    def _cap(self, alpha: Exponent) -> int:
        caps = [
            a
            for a, beta in self.relations
            if all(b <= e for b, e in zip(beta, alpha))
        ]
        return min(caps)

    @cached_property
    def monomials(self) -> Tuple[Exponent, ...]:
        found = []
        for alpha in product(*[range(d) for d in self.bounds]):
            if self._cap(alpha) > 0:
                found.append(tuple(alpha))
        found.sort(key=lambda alpha: (sum(alpha), tuple(-e for e in alpha)))
        return tuple(found)

    @cached_property
    def index(self) -> Dict[Exponent, int]:
        return {alpha: i for i, alpha in enumerate(self.monomials)}

    @cached_property
    def caps(self) -> Tuple[int, ...]:
        return tuple(self._cap(alpha) for alpha in self.monomials)

    @cached_property
    def mul_table(self) -> Tuple[Tuple[int, ...], ...]:
        table = []
        for alpha in self.monomials:
            row = []
            for beta in self.monomials:
                gamma = tuple(a + b for a, b in zip(alpha, beta))
                row.append(self.index.get(gamma, -1))
            table.append(tuple(row))
        return tuple(table)

    @property
    def order(self) -> int:
        return self.p ** (self.base.f * sum(self.caps))

    @property
    def length(self) -> int:
        """Length as an O-module."""
        return sum(self.caps)

    @property
    def nilpotency(self) -> int:
        """Least L with m_R^L = 0."""
        return max(sum(alpha) + cap for alpha, cap in zip(self.monomials, self.caps))

    # -- elements -------------------------------------------------------------

    def _normalize(self, coeffs: Sequence[Sequence[int]]) -> "RingElement":
        return RingElement(
            ring=self,
            coeffs=tuple(
                self.base.truncate(c, cap) for c, cap in zip(coeffs, self.caps)
            ),
        )

    def zero(self) -> "RingElement":
        return RingElement(ring=self, coeffs=tuple(self.base.zero() for _ in self.monomials))

    def one(self) -> "RingElement":
        return self.from_int(1)

    def from_int(self, n: int) -> "RingElement":
        return self.monomial((0,) * len(self.variables), self.base.from_int(n))

    def from_witt(self, w: WittElement) -> "RingElement":
        return self.monomial((0,) * len(self.variables), w)

    def monomial(self, alpha: Exponent, coefficient: Union[int, WittElement] = 1, a: int = 0) -> "RingElement":
        if isinstance(coefficient, int):
            coefficient = self.base.from_int(coefficient)
        coefficient = self.base.scale(coefficient, self.p**a)
        coeffs = [self.base.zero() for _ in self.monomials]
        if alpha in self.index:
            coeffs[self.index[alpha]] = coefficient
        return self._normalize(coeffs)

    def p_element(self) -> "RingElement":
        return self.from_int(self.p)

    def var(self, name: str) -> "RingElement":
        i = self.variables.index(name)
        alpha = tuple(1 if j == i else 0 for j in range(len(self.variables)))
        return self.monomial(alpha)

    def lift_residue(self, element: int) -> "RingElement":
        return self.from_witt(self.base.lift_residue(element))

    def residue(self, x: "RingElement") -> int:
        return self.base.residue(self.base.truncate(x.coeffs[0], 1))

    def elements(self) -> Iterator["RingElement"]:
        ranges = [
            list(self.base.elements(cap)) for cap in self.caps
        ]
        for coeffs in product(*ranges):
            yield RingElement(ring=self, coeffs=tuple(coeffs))

    def random_element(self, rng: random.Random, ideal: Optional["SubmoduleIdeal"] = None) -> "RingElement":
        exps = ideal.exponents if ideal is not None else (0,) * len(self.monomials)
        coeffs = []
        for e, cap in zip(exps, self.caps):
            if e >= cap:
                coeffs.append(self.base.zero())
                continue
            coeffs.append(
                tuple(
                    rng.randrange(self.p ** (cap - e)) * self.p**e
                    for _ in range(self.base.f)
                )
            )
        return self._normalize(coeffs)

    # -- quotients ------------------------------------------------------------

    def quotient(self, ideal: "SubmoduleIdeal") -> "CoefficientRing":
        extra = [
            (e, alpha)
            for alpha, e, cap in zip(self.monomials, ideal.exponents, self.caps)
            if e < cap
        ]
        return make_coeffring(self.base, self.variables, list(self.relations) + extra)

    def reduce_to(self, x: "RingElement", target: "CoefficientRing") -> "RingElement":
        """Image of x under the projection onto a monomial quotient of this ring."""
        coeffs = [target.base.zero() for _ in target.monomials]
        for alpha, c in zip(self.monomials, x.coeffs):
            if alpha in target.index:
                coeffs[target.index[alpha]] = tuple(c)
        return target._normalize(coeffs)

    def lift_from(self, x: "RingElement") -> "RingElement":
        """Digit-wise lift of an element of a quotient ring of this ring."""
        coeffs = [self.base.zero() for _ in self.monomials]
        for alpha, c in zip(x.ring.monomials, x.coeffs):
            coeffs[self.index[alpha]] = tuple(c)
        return self._normalize(coeffs)

    def describe(self) -> str:
        rels = ", ".join(format_monomial(a, alpha, self.variables) for a, alpha in self.relations)
        vars_ = ", ".join(self.variables)
        return f"witt({self.p}, {self.base.f}, {self.base.N}); vars = [{vars_}]; rel = [{rels}]"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class RingElement:
    ring: CoefficientRing = field(compare=False, repr=False)
    coeffs: Tuple[WittElement, ...]

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        raise TypeError(f"cannot combine a ring element with {type(other).__name__}")

    def __add__(self, other) -> "RingElement":
        other = self._coerce(other)
        base = self.ring.base
        return self.ring._normalize([base.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        base = self.ring.base
        return self.ring._normalize([base.neg(a) for a in self.coeffs])

    def __sub__(self, other) -> "RingElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RingElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, int):
            base = self.ring.base
            return self.ring._normalize([base.scale(a, other) for a in self.coeffs])
        other = self._coerce(other)
        ring = self.ring
        base = ring.base
        table = ring.mul_table
        acc = [base.zero() for _ in ring.monomials]
        for i, a in enumerate(self.coeffs):
            if not any(a):
                continue
            row = table[i]
            for j, b in enumerate(other.coeffs):
                k = row[j]
                if k < 0 or not any(b):
                    continue
                acc[k] = base.add(acc[k], base.mul(a, b))
        return ring._normalize(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RingElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(any(c) for c in self.coeffs)

    def is_unit(self) -> bool:
        return self.ring.residue(self) != 0

    def inverse(self) -> "RingElement":
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        ring = self.ring
        c0 = ring.from_witt(ring.base.inverse(self.coeffs[0]))
        # self = c (1 + n) with n nilpotent
        n = self * c0 - 1
        total = ring.one()
        term = ring.one()
        for _ in range(ring.nilpotency + 1):
            term = -(term * n)
            if term.is_zero():
                break
            total = total + term
        return total * c0

    def valuation_at(self, alpha: Exponent) -> int:
        i = self.ring.index[alpha]
        return min(self.ring.base.valuation(self.coeffs[i]), self.ring.caps[i])

    def __str__(self) -> str:
        ring = self.ring
        terms = []
        for alpha, c in zip(ring.monomials, self.coeffs):
            if not any(c):
                continue
            if ring.base.f == 1:
                coeff = str(c[0])
            else:
                coeff = "(" + " + ".join(
                    f"{d}*t^{i}" if i else str(d) for i, d in enumerate(c) if d
                ) + ")"
            mono = format_monomial(0, alpha, ring.variables)
            terms.append(coeff if mono == "1" else f"{coeff}*{mono}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class SubmoduleIdeal:
    """
    A monomial ideal of R: the sum over standard monomials of p^{e_alpha} O U^alpha.

    exponents[i] ranges over 0..caps[i]; the value caps[i] means the component
    at that monomial is zero.
    """

    ring: CoefficientRing = field(compare=False, repr=False)
    exponents: Tuple[int, ...]

    def __post_init__(self):
        ring = self.ring
        if len(self.exponents) != len(ring.monomials):
            raise ValueError("exponent vector does not match the monomial basis")
        object.__setattr__(
            self,
            "exponents",
            tuple(min(e, cap) for e, cap in zip(self.exponents, ring.caps)),
        )
        for alpha, e in zip(ring.monomials, self.exponents):
            if e < 0:
                raise ValueError("ideal exponents must be nonnegative")
            for i in range(len(ring.variables)):
                shifted = tuple(a + (1 if j == i else 0) for j, a in enumerate(alpha))
                if shifted in ring.index and self.exponent(shifted) > e:
                    raise ValueError(
                        f"not an ideal: {ring.variables[i]} times p^{e}*U^{alpha} leaves it"
                    )

    def exponent(self, alpha: Exponent) -> int:
        i = self.ring.index[alpha]
        return min(self.exponents[i], self.ring.caps[i])

    def cells(self) -> List[Tuple[Exponent, int]]:
        return [
            (alpha, e)
            for alpha, e, cap in zip(self.ring.monomials, self.exponents, self.ring.caps)
            if e < cap
        ]

    def contains(self, x: RingElement) -> bool:
        return all(
            x.valuation_at(alpha) >= min(e, cap)
            for alpha, e, cap in zip(self.ring.monomials, self.exponents, self.ring.caps)
        )

    def __contains__(self, x: RingElement) -> bool:
        return self.contains(x)

    def is_zero(self) -> bool:
        return not self.cells()

    def issubset(self, other: "SubmoduleIdeal") -> bool:
        return all(
            min(a, cap) >= min(b, cap)
            for a, b, cap in zip(self.exponents, other.exponents, self.ring.caps)
        )

    def intersect(self, other: "SubmoduleIdeal") -> "SubmoduleIdeal":
        return SubmoduleIdeal(
            ring=self.ring,
            exponents=tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)),
        )

    def __add__(self, other: "SubmoduleIdeal") -> "SubmoduleIdeal":
        return SubmoduleIdeal(
            ring=self.ring,
            exponents=tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)),
        )

    def __mul__(self, other: "SubmoduleIdeal") -> "SubmoduleIdeal":
        ring = self.ring
        exps = list(ring.caps)
        for alpha, e in self.cells():
            for beta, e2 in other.cells():
                gamma = tuple(a + b for a, b in zip(alpha, beta))
                if gamma in ring.index:
                    k = ring.index[gamma]
                    exps[k] = min(exps[k], e + e2)
        # close upward so the result is stored in normal form
        for k, gamma in enumerate(ring.monomials):
            for j, alpha in enumerate(ring.monomials):
                if all(a <= g for a, g in zip(alpha, gamma)):
                    exps[k] = min(exps[k], exps[j])
        return SubmoduleIdeal(ring=ring, exponents=tuple(exps))

    def generators(self) -> List[RingElement]:
        """One generator p^{e_alpha} U^alpha per nonzero cell."""
        return [self.ring.monomial(alpha, 1, a=e) for alpha, e in self.cells()]

    def basis(self) -> List[RingElement]:
        """Additive layer basis p^a t^j U^alpha, e_alpha <= a < N_alpha."""
        ring = self.ring
        out = []
        for alpha, e in self.cells():
            cap = ring.caps[ring.index[alpha]]
            for a in range(e, cap):
                for j in range(ring.base.f):
                    w = tuple(1 if i == j else 0 for i in range(ring.base.f))
                    out.append(ring.monomial(alpha, w, a=a))
        return out

    def order(self) -> int:
        return self.ring.p ** (
            self.ring.base.f
            * sum(cap - min(e, cap) for e, cap in zip(self.exponents, self.ring.caps))
        )

    def elements(self) -> Iterator[RingElement]:
        ring = self.ring
        ranges = []
        for e, cap in zip(self.exponents, ring.caps):
            e = min(e, cap)
            step = ring.p**e
            ranges.append(
                [tuple(c * step for c in w) for w in ring.base.elements(cap - e)]
            )
        for coeffs in product(*ranges):
            yield ring._normalize(coeffs)

    def describe(self) -> str:
        ring = self.ring
        gens = [format_monomial(e, alpha, ring.variables) for alpha, e in self.cells()]
        return "(" + ", ".join(gens) + ")" if gens else "(0)"


def make_coeffring(
    base: WittRing,
    variables: Sequence[str],
    relations: Sequence[Union[str, Relation]],
) -> CoefficientRing:
    """
    Build O[[U_1..U_s]]/I for a monomial ideal I.

    Args:
        base: The truncated Witt ring O/p^N; p^N is added to the relations.
        variables: Names of the variables.
        relations: Monomials p^a U^alpha generating I, as strings or (a, alpha) pairs.

    Returns:
        The ring with its standard monomial basis enumerated.
    """
    variables = tuple(variables)
    if len(set(variables)) != len(variables) or "p" in variables or "t" in variables:
        raise ValueError(f"invalid variable names {variables}")
    parsed: List[Relation] = [(base.N, (0,) * len(variables))]
    for rel in relations:
        if isinstance(rel, str):
            parsed.append(parse_monomial(rel, variables))
        else:
            a, alpha = rel
            parsed.append((int(a), tuple(int(e) for e in alpha)))
    for i, name in enumerate(variables):
        pure = [
            alpha for a, alpha in parsed
            if a == 0 and all(e == 0 for j, e in enumerate(alpha) if j != i) and alpha[i] > 0
        ]
        if not pure:
            logger.error(f"No pure power of {name} among the relations")
            raise ValueError(
                f"missing truncation relation: a power of {name} must be in the ideal"
            )
    minimal = []
    for a, alpha in sorted(set(parsed), key=lambda r: (r[0] + sum(r[1]), r)):
        dominated = any(
            b <= a and all(x <= y for x, y in zip(beta, alpha)) for b, beta in minimal
        )
        if not dominated:
            minimal.append((a, alpha))
    minimal.sort(key=lambda r: (sum(r[1]), r[1], r[0]))
    return CoefficientRing(base=base, variables=variables, relations=tuple(minimal))


def whole_ring(R: CoefficientRing) -> SubmoduleIdeal:
    return SubmoduleIdeal(ring=R, exponents=(0,) * len(R.monomials))


def zero_ideal(R: CoefficientRing) -> SubmoduleIdeal:
    return SubmoduleIdeal(ring=R, exponents=R.caps)


def maximal_ideal_power(R: CoefficientRing, k: int) -> SubmoduleIdeal:
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return SubmoduleIdeal(
        ring=R,
        exponents=tuple(
            min(max(0, k - sum(alpha)), cap) for alpha, cap in zip(R.monomials, R.caps)
        ),
    )


def p_ideal(R: CoefficientRing) -> SubmoduleIdeal:
    return SubmoduleIdeal(ring=R, exponents=tuple(min(1, cap) for cap in R.caps))


def filtration_nk(R: CoefficientRing, k: int) -> SubmoduleIdeal:
    """n_k = pR intersected with m_R^k."""
    if k < 1:
        raise ValueError(f"n_k is defined for k >= 1, got {k}")
    return p_ideal(R).intersect(maximal_ideal_power(R, k))


@dataclass(frozen=True)
class GradedPiece:
    k: int
    basis: Tuple[RingElement, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def graded_piece(R: CoefficientRing, k: int) -> GradedPiece:
    """Coset representatives p^a U^alpha of an F_q-basis of n_k/n_{k+1}."""
    upper = filtration_nk(R, k)
    lower = filtration_nk(R, k + 1)
    basis = []
    for alpha, e_k, e_next, cap in zip(R.monomials, upper.exponents, lower.exponents, R.caps):
        for a in range(e_k, min(e_next, cap)):
            basis.append(R.monomial(alpha, 1, a=a))
    return GradedPiece(k=k, basis=tuple(basis))


def ideal_generated(R: CoefficientRing, elements: Sequence[RingElement]) -> SubmoduleIdeal:
    """Ideal generated by single-term elements c U^alpha."""
    exps = list(R.caps)
    for x in elements:
        support = [i for i, c in enumerate(x.coeffs) if any(c)]
        if len(support) > 1:
            raise ValueError(f"{x} is not a monomial; only monomial ideals are supported")
        if not support:
            continue
        alpha = R.monomials[support[0]]
        v = x.valuation_at(alpha)
        for k, gamma in enumerate(R.monomials):
            if all(a <= g for a, g in zip(alpha, gamma)):
                exps[k] = min(exps[k], v)
    return SubmoduleIdeal(ring=R, exponents=tuple(exps))


def in_category_C(R: CoefficientRing) -> bool:
    """True iff p is not in m_R^2 (finite length holds for every monomial ring)."""
    return not maximal_ideal_power(R, 2).contains(R.p_element())


def is_nearly_small(R: CoefficientRing, J: SubmoduleIdeal) -> bool:
    if J.ring != R:
        raise ValueError("J is not an ideal of R")
    return (maximal_ideal_power(R, 1) * J).is_zero()


def is_small(R: CoefficientRing, J: SubmoduleIdeal) -> bool:
    """Nearly small with J principal, i.e. dim J/m_R J = 1."""
    return is_nearly_small(R, J) and len(J.cells()) == 1


def check_ring_axioms(R: CoefficientRing, trials: int = 50, seed: int = 0) -> bool:
    """Spot-check associativity, commutativity and distributivity on random triples."""
    rng = random.Random(seed)
    for _ in range(trials):
        x, y, z = (R.random_element(rng) for _ in range(3))
        if (x * y) * z != x * (y * z):
            logger.error(f"associativity fails for {x}, {y}, {z}")
            return False
        if x * y != y * x or x * (y + z) != x * y + x * z:
            logger.error(f"commutativity or distributivity fails for {x}, {y}, {z}")
            return False
    return True
