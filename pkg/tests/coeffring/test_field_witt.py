import pytest
from sympy import isprime
from sympy.ntheory import sqrt_mod

from coeffring.field import make_field
from coeffring.witt import WittRing, hensel_sqrt

F9_MODULUS = [1, 0, 1]  # t^2 + 1, irreducible over F_3


@pytest.fixture
def z125():
    return WittRing(field=make_field(5), N=3)


@pytest.fixture
def w9():
    return WittRing(field=make_field(3, 2, F9_MODULUS), N=2)


@pytest.mark.parametrize("p", [1, 2, 4, 9, 15])
def test_make_field_rejects_bad_characteristic(p):
    with pytest.raises(ValueError):
        make_field(p)


def test_make_field_checks_the_modulus():
    F9 = make_field(3, 2, F9_MODULUS)
    assert 9 == F9.q
    assert (1, 0, 1) == F9.modulus
    # t^2 + 1 = (t - 2)(t + 2) over F_5
    with pytest.raises(ValueError):
        make_field(5, 2, [1, 0, 1])
    with pytest.raises(ValueError):
        make_field(3, 2, [1, 1])


def test_make_field_default_modulus_is_irreducible():
    F = make_field(5, 3)
    assert 125 == F.q
    assert 4 == len(F.modulus)


def test_field_arithmetic():
    F5 = make_field(5)
    assert 1 == F5.mul(2, 3)
    assert 3 == F5.inv(2)
    assert 0 == F5.add(2, 3)
    assert 3 == F5.neg(2)
    with pytest.raises(ValueError):
        F5.inv(0)


def test_field_digits():
    F9 = make_field(3, 2, F9_MODULUS)
    assert (2, 1) == F9.digits(5)
    assert 5 == F9.from_digits((2, 1))
    # t * t = -1
    assert 2 == F9.mul(3, 3)


def test_witt_units_and_valuation(z125):
    assert 3 == z125.valuation((0,))
    assert 2 == z125.valuation((25,))
    assert 0 == z125.valuation((7,))
    assert z125.one() == z125.mul((7,), z125.inverse((7,)))
    with pytest.raises(ValueError):
        z125.inverse((5,))


def test_witt_extension_inverse(w9):
    x = (1, 1)
    assert w9.one() == w9.mul(x, w9.inverse(x))
    # t^2 = -1 in O/9 with O unramified of degree 2
    assert (8, 0) == w9.mul((0, 1), (0, 1))


def test_hensel_sqrt_of_six(z125):
    assert (16,) == hensel_sqrt(z125, (6,))


def test_hensel_sqrt_against_sympy(z125):
    for u in range(1, 125):
        if u % 5 not in (1, 4):
            continue
        (r,) = hensel_sqrt(z125, (u,))
        assert u == r * r % 125
        assert r in sqrt_mod(u, 125, all_roots=True)
        assert (1 if u % 5 == 1 else 2) == r % 5


def test_hensel_sqrt_rejects_non_squares(z125):
    with pytest.raises(ValueError):
        hensel_sqrt(z125, (2,))
    with pytest.raises(ValueError):
        hensel_sqrt(z125, (5,))


def test_hensel_sqrt_in_extension(w9):
    u = w9.mul((2, 1), (2, 1))
    r = hensel_sqrt(w9, u)
    assert u == w9.mul(r, r)


def test_is_prime_helper_agrees_with_sympy():
    for p in range(3, 60):
        if isprime(p):
            assert p == make_field(p).q
        else:
            with pytest.raises(ValueError):
                make_field(p)


def test_hensel_sqrt_of_a_residue_square(z125):
    assert (2,) == hensel_sqrt(z125, (4,))
    assert (1,) == hensel_sqrt(z125, (1,))


def test_hensel_sqrt_canonical_root_in_extension(w9):
    # (2 + t)^2 = 3 + 4t; the residue roots of t are 2 + t (5) and 1 + 2t (7)
    assert (2, 1) == hensel_sqrt(w9, (3, 4))


def test_hensel_sqrt_over_all_extension_squares(w9):
    squares = {w9.mul(x, x) for x in w9.elements() if w9.is_unit(x)}
    for u in squares:
        r = hensel_sqrt(w9, u)
        assert u == w9.mul(r, r)
