from dataclasses import dataclass
from typing import Dict, List, Tuple

from loguru import logger

from coeffring.ring import (
    CoefficientRing,
    RingElement,
    SubmoduleIdeal,
    format_monomial,
    maximal_ideal_power,
)


@dataclass(frozen=True)
class RingHom:
    """An O-algebra map determined by the images of the variables."""

    source: CoefficientRing
    target: CoefficientRing
    images: Tuple[RingElement, ...]

    def _monomial_image(self, alpha) -> RingElement:
        value = self.target.one()
        for image, e in zip(self.images, alpha):
            if e:
                value = value * image**e
        return value

    def __call__(self, x: RingElement) -> RingElement:
        if x.ring != self.source:
            raise ValueError("element does not belong to the source ring")
        result = self.target.zero()
        for alpha, c in zip(self.source.monomials, x.coeffs):
            if any(c):
                result = result + self.target.from_witt(c) * self._monomial_image(alpha)
        return result

    def then(self, other: "RingHom") -> "RingHom":
        """The composite other after self."""
        if other.source != self.target:
            raise ValueError("maps are not composable")
        return RingHom(
            source=self.source,
            target=other.target,
            images=tuple(other(image) for image in self.images),
        )

    def image_of_ideal(self, ideal: SubmoduleIdeal) -> List[RingElement]:
        return [self(g) for g in ideal.generators()]


def substitution_hom(
    source: CoefficientRing,
    target: CoefficientRing,
    images: Dict[str, RingElement],
) -> RingHom:
    """
    The O-algebra map source -> target sending each variable U_i to images[U_i].

    Args:
        source: Ring whose variables are substituted.
        target: Ring receiving the images; must share the residue field.
        images: Image of every source variable, each in the maximal ideal of target.

    Returns:
        The induced RingHom after checking that every relation maps to zero.
    """
    if source.base.field != target.base.field:
        raise ValueError("source and target have different residue fields")
    missing = set(source.variables) - set(images)
    if missing:
        raise ValueError(f"no image given for {sorted(missing)}")
    m_target = maximal_ideal_power(target, 1)
    ordered = []
    for name in source.variables:
        image = images[name]
        if image.ring != target:
            raise ValueError(f"image of {name} is not an element of the target")
        if not m_target.contains(image):
            raise ValueError(f"image of {name} is not in the maximal ideal of the target")
        ordered.append(image)
    if not target.from_int(source.base.modulus_pN).is_zero():
        raise ValueError(f"p^{source.base.N} is zero in the source but not in the target")
    hom = RingHom(source=source, target=target, images=tuple(ordered))

    for a, alpha in source.relations:
        value = hom._monomial_image(alpha) * (source.p**a)
        if not value.is_zero():
            relation = format_monomial(a, alpha, source.variables)
            logger.error(f"Relation {relation} maps to {value}")
            raise ValueError(f"relation {relation} does not map to zero")
    return hom


def identity_hom(R: CoefficientRing) -> RingHom:
    return RingHom(source=R, target=R, images=tuple(R.var(name) for name in R.variables))


def projection(R: CoefficientRing, quotient: CoefficientRing) -> RingHom:
    return substitution_hom(
        R, quotient, {name: quotient.var(name) for name in R.variables}
    )


def agree_on(phi: RingHom, psi: RingHom, ideal: SubmoduleIdeal) -> Tuple[int, bool]:
    """Compare two maps on the additive layer basis of an ideal of their source."""
    basis = ideal.basis()
    for x in basis:
        if phi(x) != psi(x):
            logger.info(f"Maps differ on {x}: {phi(x)} vs {psi(x)}")
            return len(basis), False
    return len(basis), True
