import pytest

from coeffring.presentation import parse_ring
from defclass.stabilization import (
    class_spec,
    conjugation_identity_check,
    failure_probe,
    ram_entry,
    stabilization_check,
    stabilization_sample,
    truncation,
)
from matrep.classes import in_deform_class
from matrep.mat2 import conjugator_matrix
from matrep.rep import conjugate, normal_form_rep
from models.models import Conjugator, Variant

P = 5
V = 11
RINGS = ["witt(5,1,4)", "witt(5,1,3); vars U; rel U^3"]


@pytest.fixture
def z625():
    return parse_ring("witt(5,1,4)")


def test_class_spec():
    nr = class_spec("nr", V, V)
    assert (Variant.D_nr, Conjugator.lower_unipotent) == (nr.variant, nr.basis_conjugator)
    ram = class_spec("ram", V, V)
    assert (Variant.D_ram, Conjugator.swap) == (ram.variant, ram.basis_conjugator)
    with pytest.raises(ValueError):
        class_spec("tilde", V, V)


@pytest.mark.parametrize("text", RINGS)
@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("variant", ["nr", "ram"])
def test_classes_are_stable_for_k_at_least_two(text, k, variant):
    report = stabilization_check(parse_ring(text), k, variant, V, V)
    assert report.twists
    assert report.all_preserved
    assert [] == report.violations
    assert all(t.witness is not None for t in report.twists)


def test_unramified_class_is_not_stable_over_o_mod_p_squared():
    report = failure_probe(P, V, V)
    assert not report.all_preserved
    assert any(t.startswith("g_nr") for t in report.violations)


def test_stabilization_arguments(z625):
    with pytest.raises(ValueError):
        stabilization_check(z625, 0, "nr", V, V)
    with pytest.raises(ValueError):
        stabilization_check(z625, 2, "tilde", V, V)
    wrong = stabilization_sample(truncation(z625, 2), "ram", V, V)
    with pytest.raises(ValueError):
        stabilization_check(z625, 2, "nr", V, V, sample=wrong)


def test_truncation(z625):
    assert 5**3 == truncation(z625, 2).order
    assert 5**2 == truncation(z625, 1).order


@pytest.mark.parametrize("r", [0, 25, 50, 100])
@pytest.mark.parametrize("y", [5, 10, 25, 125])
def test_conjugation_identity(z625, r, y):
    assert conjugation_identity_check(z625, 3, r, 25, y, v=V)


def test_conjugation_identity_preconditions(z625):
    with pytest.raises(ValueError):
        conjugation_identity_check(z625, 3, 25, 5, 5, v=V)
    with pytest.raises(ValueError):
        conjugation_identity_check(z625, 3, 25, 25, 1, v=V)
    with pytest.raises(ValueError):
        conjugation_identity_check(z625, 3, 1, 25, 5, v=V)
    with pytest.raises(ValueError):
        conjugation_identity_check(z625, 3, 25, 25, 5, v=7)


@pytest.mark.parametrize("y", [10, 15, 20])
def test_ramified_class_is_stable_for_every_tau_entry(z625, y):
    R_k = truncation(z625, 2)
    normal = normal_form_rep(R_k, V, V, R_k.zero(), R_k.from_int(y))
    sample = conjugate(normal, conjugator_matrix(R_k, Conjugator.swap.value))
    report = stabilization_check(z625, 2, "ram", V, V, sample=sample)
    assert 3 == len(report.twists)
    assert report.all_preserved
    assert [] == report.violations


def test_ramified_twist_uses_the_sample_entry(z625):
    # y = 10 gives g_ram: tau -> diag(-1, 1); the default y = p gives diag(-3, 3)
    R_k = truncation(z625, 2)
    normal = normal_form_rep(R_k, V, V, R_k.zero(), R_k.from_int(10))
    sample = conjugate(normal, conjugator_matrix(R_k, Conjugator.swap.value))
    spec = class_spec("ram", V, V)
    membership = in_deform_class(sample, spec)
    assert (10,) == ram_entry(membership, "ram", R_k)
    assert (5,) == ram_entry(membership, "nr", R_k)
