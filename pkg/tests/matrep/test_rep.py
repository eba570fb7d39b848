import pytest
from sympy import isprime

from coeffring.presentation import parse_ring
from coeffring.ring import maximal_ideal_power
from matrep.mat2 import Mat2, conjugator_matrix, lower_unipotent
from matrep.rep import (
    conjugate,
    is_trivial_prime,
    make_tame_rep,
    normal_form_rep,
    reduce,
    sigma_scalar,
)


@pytest.fixture
def z625():
    return parse_ring("witt(5,1,4)")


def test_trivial_primes_against_sympy():
    for p in (3, 5, 7):
        for v in range(2, 400):
            assert (isprime(v) and v % p == 1 and v % (p * p) != 1) == is_trivial_prime(v, p)
    assert is_trivial_prime(11, 5)
    assert is_trivial_prime(13, 3)
    assert not is_trivial_prime(19, 3)


def test_mat2_inverse_and_power(z625):
    A = Mat2.of(z625, [[1, 5], [25, 2]])
    assert Mat2.identity(z625) == A * A.inverse()
    assert A**3 == A * A * A
    assert Mat2.identity(z625) == A**2 * A ** (-2)
    with pytest.raises(ValueError):
        Mat2.of(z625, [[5, 0], [0, 1]]).inverse()


def test_conjugator_matrix(z625):
    assert lower_unipotent(z625.one()) == conjugator_matrix(z625, "lower_unipotent")
    with pytest.raises(ValueError):
        conjugator_matrix(z625, "rotation")


def test_normal_form_satisfies_relation(z625):
    rep = normal_form_rep(z625, 11, 11, z625.from_int(25), z625.from_int(5))
    assert rep.relation_holds()
    assert z625.one() == sigma_scalar(z625, 11, 11)
    assert z625.from_int(11) == rep.sigma.a


def test_relation_violation_is_rejected(z625):
    sigma = Mat2.of(z625, [[2, 0], [0, 1]])
    tau = Mat2.of(z625, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        make_tame_rep(z625, 11, sigma, tau)


@pytest.mark.parametrize("v", [4, 3, 101, 7])
def test_non_trivial_prime_is_rejected(z625, v):
    identity = Mat2.identity(z625)
    with pytest.raises(ValueError):
        make_tame_rep(z625, v, identity, identity)


def test_non_invertible_matrix_is_rejected(z625):
    with pytest.raises(ValueError):
        make_tame_rep(z625, 11, Mat2.of(z625, [[5, 0], [0, 1]]), Mat2.identity(z625))


def test_reduce_and_conjugate(z625):
    rep = normal_form_rep(z625, 11, 11, z625.from_int(25), z625.from_int(5))
    A = Mat2.of(z625, [[6, 5], [10, 1]])
    moved = conjugate(rep, A)
    assert moved.relation_holds()
    assert conjugate(moved, A.inverse()).sigma == rep.sigma

    small = reduce(rep, maximal_ideal_power(z625, 2))
    assert 25 == small.ring.order
    assert small.ring.from_int(5) == small.tau.b
    residual = rep.residual()
    assert Mat2.identity(residual.ring) == residual.sigma
    with pytest.raises(ValueError):
        reduce(rep, maximal_ideal_power(z625, 0))
