import random

import pytest

from coeffring.presentation import parse_ring
from coeffring.ring import (
    check_ring_axioms,
    filtration_nk,
    graded_piece,
    ideal_generated,
    in_category_C,
    is_nearly_small,
    is_small,
    make_coeffring,
    maximal_ideal_power,
    p_ideal,
    zero_ideal,
)
from coeffring.witt import WittRing
from coeffring.field import make_field

EXAMPLE_RING = "witt(5,1,3); vars U; rel p^3,U^3"


@pytest.fixture
def ring():
    return parse_ring(EXAMPLE_RING)


@pytest.fixture
def z27():
    return parse_ring("witt(3,1,3)")


def test_order_and_length(ring):
    assert 5**9 == ring.order
    assert 9 == ring.length
    assert 5 == ring.nilpotency
    assert in_category_C(ring)


def test_graded_piece_of_example(ring):
    piece = graded_piece(ring, 2)
    assert 2 == piece.dim
    assert ["25", "5*U"] == [str(x) for x in piece.basis]


def test_filtration_differs_from_powers_of_m(ring):
    U = ring.var("U")
    assert maximal_ideal_power(ring, 2).contains(U * U)
    assert not filtration_nk(ring, 2).contains(U * U)
    assert filtration_nk(ring, 2).contains(U * 5)
    assert filtration_nk(ring, 2).issubset(p_ideal(ring))


def test_filtration_of_truncated_witt_vectors():
    R = parse_ring("witt(5,1,4)")
    for k in range(1, 4):
        assert filtration_nk(R, k).contains(R.from_int(5**k))
        assert not filtration_nk(R, k).contains(R.from_int(5 ** (k - 1)))
    with pytest.raises(ValueError):
        filtration_nk(R, 0)


def test_nearly_small_kernels(ring, z27):
    assert is_nearly_small(z27, maximal_ideal_power(z27, 2))
    assert is_small(z27, maximal_ideal_power(z27, 2))
    assert not is_nearly_small(z27, maximal_ideal_power(z27, 1))

    top = maximal_ideal_power(ring, ring.nilpotency - 1)
    assert is_nearly_small(ring, top)
    assert "(p^2*U^2)" == top.describe()
    assert not is_nearly_small(ring, maximal_ideal_power(ring, 3))


def test_nilpotency_kills_m(ring):
    assert maximal_ideal_power(ring, ring.nilpotency).is_zero()
    assert not maximal_ideal_power(ring, ring.nilpotency - 1).is_zero()


def test_inverse(ring):
    x = ring.from_int(2) + ring.var("U")
    assert ring.one() == x * x.inverse()
    assert ring.one() == x**3 * x ** (-3)
    with pytest.raises(ValueError):
        (ring.var("U") * 5).inverse()


def test_int_arithmetic(ring):
    U = ring.var("U")
    assert U + U == 2 * U
    assert 1 - U == -(U - 1)
    assert (U + 1) * (U - 1) == U * U - 1
    assert ring.zero() == 125 * ring.one()


def test_ring_axioms():
    R = parse_ring("witt(3, 2, 2, [1, 0, 1]); vars U, V; rel U^2, V^2, p*U*V")
    assert check_ring_axioms(R)
    assert 3 ** (2 * R.length) == R.order


def test_missing_truncation_relation():
    with pytest.raises(ValueError):
        make_coeffring(WittRing(field=make_field(3), N=2), ["U"], [])
    with pytest.raises(ValueError):
        make_coeffring(WittRing(field=make_field(3), N=2), ["p"], ["p^2"])


def test_quotient_and_reduction(z27):
    J = maximal_ideal_power(z27, 2)
    z9 = z27.quotient(J)
    assert 9 == z9.order
    assert 9 == maximal_ideal_power(z27, 1).order()
    assert z9.from_int(2) == z27.reduce_to(z27.from_int(20), z9)
    assert z27.from_int(2) == z27.lift_from(z9.from_int(2))


def test_ideal_elements_and_random_members(ring):
    rng = random.Random(7)
    J = filtration_nk(ring, 2)
    assert J.order() == len(list(J.elements()))
    for _ in range(20):
        assert J.contains(ring.random_element(rng, J))
    assert zero_ideal(ring).is_zero()


def test_ideal_generated(ring):
    U = ring.var("U")
    J = ideal_generated(ring, [U * 5])
    assert J.contains(U * U * 5)
    assert not J.contains(U)
    with pytest.raises(ValueError):
        ideal_generated(ring, [U + 5])


def test_ideal_product(ring):
    m = maximal_ideal_power(ring, 1)
    assert maximal_ideal_power(ring, 3) == m * maximal_ideal_power(ring, 2)
