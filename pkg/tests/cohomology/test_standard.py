import numpy as np
import pytest

from coeffring.field import make_field
from cohomology.cocycles import cocycle_space
from cohomology.standard import (
    STANDARD_NAMES,
    base_space,
    cocycle_matrices,
    ram_parameter,
    ram_residue,
    standard_cocycles,
    twisted_spaces,
)
from models.models import CocycleLabel, Conjugator

P = 5
V = 11


@pytest.fixture
def F5():
    return make_field(P)


def test_ram_parameter():
    assert 3 == ram_parameter(P, V, 5)
    assert 1 == ram_parameter(P, V, 10)
    with pytest.raises(ValueError):
        ram_parameter(P, V, 7)
    with pytest.raises(ValueError):
        ram_parameter(P, 101, 5)


def test_ram_residue_reads_the_tau_entry(F5):
    assert 3 == ram_residue(F5, V, (5,))
    assert 1 == ram_residue(F5, V, (10,))
    assert 4 == ram_residue(F5, V, (15,))
    with pytest.raises(ValueError):
        ram_residue(F5, V, (6,))


def test_ram_cocycle_over_an_extension():
    F9 = make_field(3, 2, [1, 0, 1])
    # y = 3 + 6t, so y/p = 1 + 2t and (v - 1)/p = 4 = 1 mod 3
    assert 7 == ram_residue(F9, 13, (3, 6))
    g_ram = standard_cocycles(F9, 13, (3, 6))["g_ram"]
    assert ([[0, 0], [1, 0]], [[5, 0], [0, 7]]) == cocycle_matrices(g_ram)


def test_standard_cocycles_are_cocycles(F5):
    cocycles = standard_cocycles(F5, V)
    assert set(STANDARD_NAMES) == set(cocycles)
    Z1 = cocycle_space(cocycles["f1"].module)
    assert all(Z1.contains(c) for c in cocycles.values())


def test_standard_cocycle_values(F5):
    cocycles = standard_cocycles(F5, V)
    assert ([[0, 1], [0, 0]], [[0, 0], [0, 0]]) == cocycle_matrices(cocycles["f1"])
    assert ([[0, 0], [0, 0]], [[0, 1], [0, 0]]) == cocycle_matrices(cocycles["f2"])
    assert ([[0, 0], [1, 0]], [[0, 0], [0, 0]]) == cocycle_matrices(cocycles["g_nr"])
    # y = p gives y_bar = 3 and tau -> diag(-3, 3)
    assert ([[0, 0], [1, 0]], [[2, 0], [0, 3]]) == cocycle_matrices(cocycles["g_ram"])


@pytest.mark.parametrize(
    "base, dim, label",
    [("Q", 2, CocycleLabel.Q_v), ("P_nr", 3, CocycleLabel.P_nr), ("P_ram", 3, CocycleLabel.P_ram)],
)
def test_base_spaces(F5, base, dim, label):
    space = base_space(F5, V, base)
    assert dim == space.dim
    assert label == space.label


def test_unknown_base_space(F5):
    with pytest.raises(ValueError):
        base_space(F5, V, "P")


def test_twisted_spaces(F5):
    N = twisted_spaces(F5, V, "P_nr", Conjugator.lower_unipotent)
    assert 3 == N.dim
    assert CocycleLabel.N_v == N.label

    N_tilde = twisted_spaces(F5, V, "P_nr", Conjugator.lower_unipotent, central=True)
    assert 4 == N_tilde.dim
    assert CocycleLabel.N_tilde_v == N_tilde.label
    assert "Ad" == N_tilde.module.name
    Z1 = cocycle_space(N_tilde.module)
    assert all(Z1.contains(c) for c in N_tilde.basis)

    M_tilde = twisted_spaces(F5, V, "Q", Conjugator.identity, central=True)
    assert CocycleLabel.M_tilde_v == M_tilde.label
    assert 3 == M_tilde.dim


def test_swap_conjugates_g_ram(F5):
    N = twisted_spaces(F5, V, "P_ram", Conjugator.swap)
    sigma, tau = cocycle_matrices(N.basis[2])
    # swap moves E21 to E12 and flips H
    assert [[0, 1], [0, 0]] == sigma
    assert [[3, 0], [0, 2]] == tau
    assert np.array_equal(N.vectors()[0], twisted_spaces(F5, V, "Q", Conjugator.swap).vectors()[0])
