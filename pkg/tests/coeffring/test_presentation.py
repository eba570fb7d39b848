import pytest

from coeffring.presentation import (
    build_ring,
    format_presentation,
    parse_presentation,
    parse_ring,
    presentation_in_category_C,
    rewrite_relations,
)

MALFORMED = [
    "witt(5,1)",
    "vars U; rel U^2",
    "witt(5,1,3); foo U",
    "witt(5,1,3); vars p; rel p^2",
    "witt(5,1,3); vars U; rel W^2",
    "witt(5,1,3); vars U; rel [U^2",
    "witt(5,1,0)",
    "witt(5,1,3); vars U; rel U - p",
]


def test_parse_short_form():
    pres = parse_presentation("witt(5,1,3); vars U; rel p^3,U^3")
    assert (5, 1, 3) == (pres.p, pres.f, pres.N)
    assert ["U"] == pres.variables
    assert ["p^3", "U^3"] == pres.relations


def test_format_then_parse():
    pres = parse_presentation("witt(3, 2, 2, [1, 0, 1]); vars U, V; rel U^2, V^2, U*V")
    text = format_presentation(pres)
    assert "base = witt(3, 2, 2, [1, 0, 1]); vars = [U, V]; rel = [U^2, V^2, U*V]" == text
    assert pres == parse_presentation(text)


@pytest.mark.parametrize("text", MALFORMED)
def test_malformed_presentations(text):
    with pytest.raises(ValueError):
        build_ring(parse_presentation(text))


def test_reducible_modulus_is_rejected():
    with pytest.raises(ValueError):
        parse_ring("witt(5, 2, 2, [1, 0, 1])")


def test_linear_substitution_eliminates_variable():
    pres = parse_presentation("witt(3,1,3); vars U; rel U^2, p - U")
    result = rewrite_relations(pres)
    assert ["U"] == result.eliminated
    assert [] == result.presentation.variables
    assert ["p^2"] == result.presentation.relations
    R = build_ring(pres)
    assert 9 == R.order
    assert presentation_in_category_C(pres)


def test_quadratic_substitution_leaves_the_category():
    pres = parse_presentation("witt(3,1,3); vars U; rel U^3, p - U^2")
    assert rewrite_relations(pres).p_in_m_squared
    assert not presentation_in_category_C(pres)
    with pytest.raises(ValueError):
        build_ring(pres)


def test_monomial_presentations_are_untouched():
    pres = parse_presentation("witt(5,1,3); vars U; rel U^3")
    result = rewrite_relations(pres)
    assert pres == result.presentation
    assert [] == result.eliminated
