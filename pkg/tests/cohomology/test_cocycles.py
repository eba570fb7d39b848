import numpy as np
import pytest

from coeffring.field import make_field
from cohomology.cocycles import (
    Cocycle,
    brute_force_h1,
    coboundary_space,
    cocycle_space,
    h0,
    h_dims,
)
from cohomology.module import (
    GModule,
    adjoint_module,
    character_module,
    decompose_adjoint,
    dual,
    trivial_module,
)


@pytest.fixture
def F3():
    return make_field(3)


@pytest.fixture
def F5():
    return make_field(5)


@pytest.mark.parametrize("p, v", [(5, 11), (3, 13)])
def test_trivial_prime_table(p, v):
    F = make_field(p)
    ad = h_dims(adjoint_module(F, v))
    ad0 = h_dims(adjoint_module(F, v, trace_zero=True))
    assert (4, 4, 8, 4) == (ad.dim, ad.h0, ad.h1, ad.h2)
    assert (3, 3, 6, 3) == (ad0.dim, ad0.h0, ad0.h1, ad0.h2)


def test_trivial_prime_table_over_extension():
    F9 = make_field(3, 2, [1, 0, 1])
    ad = h_dims(adjoint_module(F9, 13))
    assert (4, 8, 4) == (ad.h0, ad.h1, ad.h2)


def test_nontrivial_residual_action(F5):
    sigma = [[2, 0], [0, 1]]
    ad = h_dims(adjoint_module(F5, 11, rho_sigma=sigma))
    ad0 = h_dims(adjoint_module(F5, 11, rho_sigma=sigma, trace_zero=True))
    assert (2, 4, 2) == (ad.h0, ad.h1, ad.h2)
    assert (1, 2, 1) == (ad0.h0, ad0.h1, ad0.h2)


def test_one_dimensional_modules(F5):
    character = h_dims(character_module(F5, 11, 2))
    assert (0, 0, 0) == (character.h0, character.h1, character.h2)
    trivial = h_dims(trivial_module(F5, 11))
    assert (1, 2, 1) == (trivial.h0, trivial.h1, trivial.h2)


def test_dual_of_trivial_module(F5):
    M = trivial_module(F5, 11, 2)
    assert np.array_equal(M.action_sigma, dual(M).action_sigma)
    # chi(sigma) = 2 for v = 7 and p = 5, which is not a trivial prime
    twisted = dual(trivial_module(F5, 7))
    assert 2 == int(twisted.action_sigma[0, 0])


def test_decomposition(F3):
    parts = [h_dims(M) for M in decompose_adjoint(F3, 13)]
    assert [6, 2] == [d.h1 for d in parts]
    assert 8 == sum(d.h1 for d in parts)


def test_brute_force_oracle(F3):
    assert 8 == brute_force_h1(adjoint_module(F3, 13))
    assert 6 == brute_force_h1(adjoint_module(F3, 13, trace_zero=True))
    assert 8 == brute_force_h1(adjoint_module(F3, 13), shards=3)


def test_brute_force_bound():
    with pytest.raises(ValueError):
        brute_force_h1(adjoint_module(make_field(7), 29))


def test_coboundaries_vanish_for_trivial_action(F5):
    M = adjoint_module(F5, 11)
    assert 0 == coboundary_space(M).dim
    assert 8 == cocycle_space(M).dim
    assert 4 == h0(M)


def test_coboundaries_for_nontrivial_action(F5):
    M = adjoint_module(F5, 11, rho_sigma=[[2, 0], [0, 1]])
    B = coboundary_space(M)
    assert 2 == B.dim
    assert all(cocycle_space(M).contains(b) for b in B.basis)


def test_cocycle_condition_is_enforced(F5):
    M = character_module(F5, 11, 2)
    GF = M.gf
    with pytest.raises(ValueError):
        Cocycle(M, GF([0]), GF([1]))
    Cocycle(M, GF([1]), GF([0]))


def test_module_relation_is_enforced(F5):
    GF = F5.gf
    with pytest.raises(ValueError):
        GModule(field=F5, v=11, action_sigma=GF([[2]]), action_tau=GF([[2]]))
    with pytest.raises(ValueError):
        GModule(field=F5, v=11, action_sigma=GF([[0]]), action_tau=GF([[1]]))


def test_local_cohomology_at_p_is_not_computed(F5):
    with pytest.raises(NotImplementedError):
        h_dims(adjoint_module(F5, 11), at_p=True)
