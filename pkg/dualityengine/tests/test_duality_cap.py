import pytest

from dualityengine.chain_algebra import Chain, Cochain, DegreeMismatch, RingMismatch, homology
from dualityengine.complex_core import NotClosed, NotOrientable, Ring, build_complex, fundamental_class, validate_closed_manifold
from dualityengine.duality_cap import (
    CAP_CONVENTION,
    cap_chain,
    cap_chain_map_sign,
    cap_matrix,
    duality_map,
    leibniz_check,
    two_route_agreement,
    verify_duality,
)
from dualityengine.matrices import exact_det

from .conftest import NON_ORIENTABLE, ORIENTABLE, ZOO, load, load_subdivided, punctured_torus, zoo_rings


class TestCapChain:
    def setup_method(self):
        self.K = build_complex([(0, 1, 2, 3)])

    def test_unit_zero_cochain_is_the_identity(self):
        sigma = Chain.from_simplices(self.K, 3, {(0, 1, 2, 3): 1})
        ones = Cochain(0, Ring.INTEGERS, (1,) * self.K.count(0))
        assert cap_chain(self.K, sigma, ones) == sigma

    def test_front_face_evaluated_back_face_kept(self):
        sigma = Chain.from_simplices(self.K, 3, {(0, 1, 2, 3): 1})
        phi = Cochain.from_simplices(self.K, 1, {(0, 1): 5, (2, 3): 7})
        assert cap_chain(self.K, sigma, phi).on_simplices(self.K) == {(1, 2, 3): 5}

    def test_top_degree_leaves_the_last_vertex(self):
        sigma = Chain.from_simplices(self.K, 3, {(0, 1, 2, 3): 2})
        phi = Cochain.from_simplices(self.K, 3, {(0, 1, 2, 3): 3})
        assert cap_chain(self.K, sigma, phi).on_simplices(self.K) == {(3,): 6}

    def test_degree_too_high(self):
        sigma = Chain.from_simplices(self.K, 1, {(0, 1): 1})
        with pytest.raises(DegreeMismatch):
            cap_chain(self.K, sigma, Cochain.from_simplices(self.K, 2, {(0, 1, 2): 1}))

    def test_rings_must_agree(self):
        sigma = Chain.from_simplices(self.K, 1, {(0, 1): 1})
        with pytest.raises(RingMismatch):
            cap_chain(self.K, sigma, Cochain.from_simplices(self.K, 0, {(0,): 1}, "Z2"))

    def test_convention_is_published(self):
        assert "front" in CAP_CONVENTION


@pytest.mark.parametrize("name", ZOO)
def test_leibniz_identity(name):
    K, _ = load(name)
    for ring in ("Z", "Z2"):
        result = leibniz_check(K, ring, trials=1000, seed=7)
        assert result["ok"], result["first_failure"]
        assert result["failures"] == 0


@pytest.mark.parametrize("name", ORIENTABLE)
def test_cap_with_the_fundamental_class_is_a_chain_map(name):
    K, cert = load(name)
    fc = fundamental_class(K, cert)
    signs = [cap_chain_map_sign(K, fc, k) for k in range(K.n + 1)]
    assert all(s in (1, -1) for s in signs)
    assert cap_matrix(K, fc, 0).shape == (K.count(K.n), K.count(0))


class TestDualityVerdicts:
    @pytest.mark.parametrize("name", ORIENTABLE)
    def test_integral_duality_holds(self, name):
        K, cert = load(name)
        report = verify_duality(K, cert, "Z")
        assert report["passed"]
        assert [d["verdict"] for d in report["degrees"]] == ["iso"] * (K.n + 1)

    @pytest.mark.parametrize("name", ZOO)
    def test_mod_two_duality_holds(self, name):
        K, cert = load(name)
        assert verify_duality(K, cert, "Z2")["passed"]

    def test_torus_degree_one_is_unimodular(self):
        K, cert = load("torus7")
        d = duality_map(K, cert, "Z", 1)
        assert d.induced_matrix.shape == (2, 2)
        assert abs(exact_det(d.induced_matrix)) == 1
        assert d.snf.diagonal == (1, 1)

    def test_projective_space_torsion_is_matched(self):
        K, cert = load("projective_space11")
        d = duality_map(K, cert, "Z", 2)
        assert d.source.torsion == d.target.torsion == (2,)
        assert d.iso

    def test_sphere3_degrees(self):
        K, cert = load("sphere3")
        report = verify_duality(K, cert)
        assert [(d["source"]["betti"], d["target"]["betti"]) for d in report["degrees"]] == [(1, 1), (0, 0), (0, 0), (1, 1)]

    @pytest.mark.parametrize("name", NON_ORIENTABLE)
    def test_integral_duality_on_non_orientable(self, name):
        K, cert = load(name)
        with pytest.raises(NotOrientable):
            verify_duality(K, cert, "Z")

    def test_punctured_torus(self):
        K = punctured_torus()
        with pytest.raises(NotClosed):
            verify_duality(K, validate_closed_manifold(K), "Z2")

    def test_degrees_outside_the_range_are_vacuous(self):
        K, cert = load("torus7")
        assert duality_map(K, cert, "Z", -1).iso
        assert duality_map(K, cert, "Z", 3).iso

    def test_steps_show_bases_and_verdict(self):
        K, cert = load("sphere2")
        report = verify_duality(K, cert)
        assert report["steps"][-1] == {"step": "Verdict", "data": {"passed": True}}
        assert report["convention"]["cap"] == CAP_CONVENTION


@pytest.mark.parametrize("name,ring", zoo_rings(integral=ORIENTABLE))
def test_two_routes_agree(name, ring):
    K, cert = load(name)
    result = two_route_agreement(K, cert, ring)
    assert result["ring"] == ring
    assert result["agree"]
    assert all(r["iso"] for r in result["cap_route"])


def test_duality_image_of_the_unit_is_the_fundamental_class():
    K, cert = load("torus7")
    d = duality_map(K, cert, "Z", 0)
    assert d.induced_matrix.to_dense() in ([[1]], [[-1]])
    assert homology(K, 2, "Z").coordinates(cap_matrix(K, fundamental_class(K, cert), 0).apply({v: 1 for v in range(7)})) in ((1,), (-1,))


@pytest.mark.slow
@pytest.mark.parametrize("name", ["sphere2", "torus7", "projective_plane6", "klein_bottle8", "genus2_surface", "sphere3"])
def test_verdicts_survive_subdivision(name):
    K, cert = load(name)
    sd, sd_cert = load_subdivided(name)
    for ring in ("Z", "Z2") if cert.orientable else ("Z2",):
        before = verify_duality(K, cert, ring)
        after = verify_duality(sd, sd_cert, ring)
        assert before["passed"] and after["passed"]
        assert [d["source"] for d in before["degrees"]] == [d["source"] for d in after["degrees"]]


@pytest.mark.slow
def test_projective_space_subdivision():
    sd, sd_cert = load_subdivided("projective_space11")
    report = verify_duality(sd, sd_cert, "Z")
    assert report["passed"]
    assert report["degrees"][2]["source"]["torsion"] == [2]
