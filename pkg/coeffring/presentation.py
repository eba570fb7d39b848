"""
Text form of ring presentations.

    base = witt(5, 1, 3); vars = [U]; rel = [p^3, U^3]

The keywords and brackets are optional (`witt(5,1,3); vars U; rel p^3,U^3`
parses to the same presentation). A fourth witt argument gives the field
modulus, highest degree first: `witt(3, 2, 2, [1, 0, 1])`. Relations are
monomials in p and the variables; a relation `p - M` with M a monomial in the
variables is accepted as experimental and rewritten before the ring is built.
"""
import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from loguru import logger

from coeffring.field import make_field
from coeffring.ring import (
    CoefficientRing,
    format_monomial,
    in_category_C,
    make_coeffring,
    parse_monomial,
)
from coeffring.witt import WittRing
from models.models import RingPresentation

_WITT = re.compile(
    r"^witt\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*(?:,\s*\[([^\]]*)\]\s*)?\)$"
)
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _split_list(body: str) -> List[str]:
    body = body.strip()
    if body.startswith("["):
        if not body.endswith("]"):
            raise ValueError(f"unbalanced brackets in {body!r}")
        body = body[1:-1]
    return [item.strip() for item in body.split(",") if item.strip()]


def _strip_keyword(stmt: str, keyword: str) -> Optional[str]:
    match = re.match(rf"^{keyword}\b\s*(=)?\s*(.*)$", stmt)
    if not match:
        return None
    return match.group(2)


def _canonical_relation(text: str, variables: List[str]) -> str:
    if "-" in text:
        left, _, right = text.partition("-")
        if left.strip() != "p":
            raise ValueError(f"only relations of the form p - M are supported, got {text!r}")
        a, alpha = parse_monomial(right, variables)
        if a or not any(alpha):
            raise ValueError(f"{text!r}: M must be a nonconstant monomial in the variables")
        return f"p - {format_monomial(0, alpha, variables)}"
    a, alpha = parse_monomial(text, variables)
    return format_monomial(a, alpha, variables)


def parse_presentation(text: str) -> RingPresentation:
    """
    Parse the text form into a RingPresentation.

    Raises:
        ValueError: On any malformed statement.
    """
    witt = None
    variables: List[str] = []
    raw_relations: List[str] = []
    for stmt in [s.strip() for s in text.split(";") if s.strip()]:
        body = _strip_keyword(stmt, "base")
        if body is not None:
            stmt = body
        if stmt.startswith("witt"):
            match = _WITT.match(stmt)
            if not match:
                raise ValueError(f"cannot parse base {stmt!r}")
            modulus = None
            if match.group(4) is not None:
                modulus = [int(c) for c in _split_list(match.group(4))]
            witt = (int(match.group(1)), int(match.group(2)), int(match.group(3)), modulus)
            continue
        body = _strip_keyword(stmt, "vars")
        if body is not None:
            variables = _split_list(body) if "," in body or "[" in body else body.split()
            for name in variables:
                if not _NAME.match(name) or name in ("p", "t"):
                    raise ValueError(f"invalid variable name {name!r}")
            continue
        body = _strip_keyword(stmt, "rel")
        if body is not None:
            raw_relations = _split_list(body)
            continue
        raise ValueError(f"unrecognized statement {stmt!r}")

    if witt is None:
        raise ValueError("presentation has no witt(p, f, N) base")
    p, f, N, modulus = witt
    if N < 1 or f < 1:
        raise ValueError("witt(p, f, N) needs f >= 1 and N >= 1")
    relations = [_canonical_relation(r, variables) for r in raw_relations]
    return RingPresentation(
        p=p, f=f, N=N, modulus=modulus, variables=variables, relations=relations
    )


def format_presentation(presentation: RingPresentation) -> str:
    args = [str(presentation.p), str(presentation.f), str(presentation.N)]
    if presentation.modulus is not None:
        args.append("[" + ", ".join(str(c) for c in presentation.modulus) + "]")
    return (
        f"base = witt({', '.join(args)}); "
        f"vars = [{', '.join(presentation.variables)}]; "
        f"rel = [{', '.join(presentation.relations)}]"
    )


@dataclass
class RewriteResult:
    presentation: Optional[RingPresentation]
    p_in_m_squared: bool = False
    eliminated: List[str] = field(default_factory=list)


def rewrite_relations(presentation: RingPresentation) -> RewriteResult:
    """
    Remove relations p - M. A linear M = U_i eliminates U_i by U_i -> p; a
    monomial of degree at least 2 puts p in m^2 and has no monomial form.
    """
    variables = list(presentation.variables)
    monomial_relations: List[Tuple[int, Tuple[int, ...]]] = []
    substitutions = []
    for rel in presentation.relations:
        if rel.startswith("p - "):
            substitutions.append(parse_monomial(rel[4:], variables)[1])
        else:
            monomial_relations.append(parse_monomial(rel, variables))
    if not substitutions:
        return RewriteResult(presentation=presentation)

    logger.warning(f"Rewriting experimental relations in {format_presentation(presentation)}")
    if any(sum(alpha) >= 2 for alpha in substitutions):
        return RewriteResult(presentation=None, p_in_m_squared=True)

    eliminated = sorted({alpha.index(1) for alpha in substitutions})
    keep = [i for i in range(len(variables)) if i not in eliminated]
    new_vars = [variables[i] for i in keep]
    rewritten = []
    for a, alpha in monomial_relations:
        a += sum(alpha[i] for i in eliminated)
        reduced = tuple(alpha[i] for i in keep)
        if a == 0 and not any(reduced):
            raise ValueError("rewritten presentation collapses to the zero ring")
        rewritten.append(format_monomial(a, reduced, new_vars))
    return RewriteResult(
        presentation=RingPresentation(
            p=presentation.p,
            f=presentation.f,
            N=presentation.N,
            modulus=presentation.modulus,
            variables=new_vars,
            relations=rewritten,
        ),
        eliminated=[variables[i] for i in eliminated],
    )


def make_witt_ring(presentation: RingPresentation) -> WittRing:
    field_ = make_field(presentation.p, presentation.f, presentation.modulus)
    return WittRing(field=field_, N=presentation.N)


def build_ring(presentation: RingPresentation) -> CoefficientRing:
    result = rewrite_relations(presentation)
    if result.presentation is None:
        raise ValueError(
            "presentation is not monomial after rewriting: p lies in m^2"
        )
    pres = result.presentation
    return make_coeffring(make_witt_ring(pres), pres.variables, pres.relations)


def parse_ring(text: str) -> CoefficientRing:
    return build_ring(parse_presentation(text))


def presentation_in_category_C(presentation: RingPresentation) -> bool:
    result = rewrite_relations(presentation)
    if result.p_in_m_squared:
        logger.warning("p lies in m^2 after rewriting; the ring is outside the category")
        return False
    return in_category_C(build_ring(result.presentation))
