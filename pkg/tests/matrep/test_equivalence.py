import pytest

from cli.claims import membership_samples
from coeffring.presentation import parse_ring
from matrep.classes import in_deform_class, strictly_equivalent
from matrep.factory import get_backend
from matrep.mat2 import Mat2
from matrep.providers.crosscheck_backend import CrossCheckBackend
from matrep.providers.normal_form_backend import NormalFormBackend
from matrep.providers.search_backend import SearchBackend
from matrep.rep import conjugate, normal_form_rep
from models.models import Conjugator, DeformClassSpec, Variant

V = 13


@pytest.fixture
def z27():
    return parse_ring("witt(3,1,3)")


@pytest.fixture
def z625():
    return parse_ring("witt(5,1,4)")


def spec(variant, v=V, conjugator=Conjugator.identity):
    return DeformClassSpec(variant=variant, v=v, kappa_sigma=v, basis_conjugator=conjugator)


def test_get_backend():
    assert isinstance(get_backend("normal-form"), NormalFormBackend)
    assert isinstance(get_backend("search"), SearchBackend)
    assert isinstance(get_backend("both"), CrossCheckBackend)
    assert 10 == get_backend("search", bound=10).bound
    with pytest.raises(ValueError):
        get_backend("random")


def test_spec_conjugator_pairing():
    with pytest.raises(ValueError):
        DeformClassSpec(variant=Variant.D_ram, v=11, kappa_sigma=11, basis_conjugator=Conjugator.lower_unipotent)
    with pytest.raises(ValueError):
        DeformClassSpec(variant=Variant.D_nr, v=11, kappa_sigma=11, basis_conjugator=Conjugator.swap)


@pytest.mark.parametrize("mode", ["normal-form", "search", "both"])
def test_conjugates_are_strictly_equivalent(z27, mode):
    rep = normal_form_rep(z27, V, V, z27.from_int(9), z27.from_int(3))
    A = Mat2.of(z27, [[4, 3], [0, 1]])
    moved = conjugate(rep, A)
    result = strictly_equivalent(rep, moved, mode=mode)
    assert result.equivalent
    W = result.witness
    assert moved.sigma == W * rep.sigma * W.inverse()
    assert moved.tau == W * rep.tau * W.inverse()


@pytest.mark.parametrize("mode", ["normal-form", "search", "both"])
def test_tau_entry_is_an_invariant(z27, mode):
    # y' = a y d^-1 with a, d = 1 mod 3, so 3 and 6 are not equivalent
    rep3 = normal_form_rep(z27, V, V, z27.zero(), z27.from_int(3))
    rep6 = normal_form_rep(z27, V, V, z27.zero(), z27.from_int(6))
    assert not strictly_equivalent(rep3, rep6, mode=mode).equivalent


@pytest.mark.parametrize("mode", ["normal-form", "search", "both"])
def test_membership_of_conjugated_normal_forms(z27, mode):
    A = Mat2.of(z27, [[4, 6], [3, 1]])
    nr = conjugate(normal_form_rep(z27, V, V, z27.from_int(9), z27.from_int(9)), A)
    ram = conjugate(normal_form_rep(z27, V, V, z27.zero(), z27.from_int(3)), A)

    assert in_deform_class(nr, spec(Variant.D_nr), mode=mode).member
    assert not in_deform_class(nr, spec(Variant.D_ram), mode=mode).member
    assert in_deform_class(ram, spec(Variant.D_ram), mode=mode).member
    assert not in_deform_class(ram, spec(Variant.D_nr), mode=mode).member
    assert in_deform_class(ram, spec(Variant.D), mode=mode).member


@pytest.mark.parametrize("mode", ["normal-form", "search"])
def test_membership_witness_rebuilds_the_representation(z27, mode):
    A = Mat2.of(z27, [[4, 6], [3, 1]])
    rep = conjugate(normal_form_rep(z27, V, V, z27.from_int(18), z27.from_int(3)), A)
    result = in_deform_class(rep, spec(Variant.D), mode=mode)
    assert result.member
    rebuilt = conjugate(result.normal_form, result.conjugator)
    assert rep.sigma == rebuilt.sigma
    assert rep.tau == rebuilt.tau
    assert z27.one() == result.z


def test_upper_right_entry_outside_n2(z27):
    rep = normal_form_rep(z27, V, V, z27.from_int(3), z27.zero())
    result = in_deform_class(rep, spec(Variant.D), mode="both")
    assert not result.member


def test_central_twist(z27):
    rep = normal_form_rep(z27, V, V, z27.zero(), z27.from_int(3), z=z27.from_int(4))
    assert not in_deform_class(rep, spec(Variant.D), mode="both").member
    result = in_deform_class(rep, spec(Variant.D_tilde), mode="both")
    assert result.member
    assert z27.from_int(4) == result.z


@pytest.mark.parametrize("mode", ["normal-form", "search", "both"])
def test_central_twist_of_a_conjugated_member(z27, mode):
    A = Mat2.of(z27, [[4, 6], [3, 1]])
    twisted = conjugate(normal_form_rep(z27, V, V, z27.from_int(9), z27.from_int(3), z=z27.from_int(4)), A)
    assert not in_deform_class(twisted, spec(Variant.D), mode=mode).member
    result = in_deform_class(twisted, spec(Variant.D_tilde), mode=mode)
    assert result.member
    assert z27.from_int(4) == result.z

    # z = 2 is not 1 mod p
    scaled = conjugate(normal_form_rep(z27, V, V, z27.from_int(9), z27.from_int(3), z=z27.from_int(2)), A)
    assert not in_deform_class(scaled, spec(Variant.D_tilde), mode=mode).member


def test_class_prime_must_match(z625):
    rep = normal_form_rep(z625, 11, 11, z625.zero(), z625.zero())
    with pytest.raises(ValueError):
        in_deform_class(rep, spec(Variant.D, v=31))


def test_search_bound(z625):
    rep = normal_form_rep(z625, 11, 11, z625.zero(), z625.from_int(5))
    with pytest.raises(ValueError):
        in_deform_class(rep, spec(Variant.D_ram, v=11), mode="search", bound=1000)
    assert in_deform_class(rep, spec(Variant.D_ram, v=11)).member


def test_sharded_search_is_deterministic(z27):
    rep = normal_form_rep(z27, V, V, z27.from_int(9), z27.from_int(3))
    moved = conjugate(rep, Mat2.of(z27, [[1, 3], [3, 1]]))
    one = SearchBackend(shards=1).strictly_equivalent(rep, moved)
    three = SearchBackend(shards=3).strictly_equivalent(rep, moved)
    assert one.equivalent and three.equivalent
    assert one.witness == three.witness


def test_backends_agree_on_samples():
    R = parse_ring("witt(3,1,2)")
    for rep, class_spec in membership_samples(R, V, 30, seed=11):
        in_deform_class(rep, class_spec, mode="both")
