import pytest

from dualityengine.complex_core import (
    ComplexCoreError,
    DegenerateSimplex,
    MixedDimension,
    NotClosed,
    NotOrientable,
    Ring,
    boundary_chain,
    barycentric_subdivision,
    build_complex,
    check_face_closure,
    cofaces,
    complex_summary,
    connected_components,
    euler_characteristic,
    f_vector,
    fundamental_class,
    link,
    permutation_sign,
    require_closed,
    subdivide_chain,
    validate_closed_manifold,
)
from dualityengine.complex_zoo import zoo_entry

from .conftest import NON_ORIENTABLE, ORIENTABLE, SURFACES, ZOO, load, punctured_torus


class TestBuildComplex:
    def test_face_closure_of_a_tetrahedron(self):
        K = build_complex([(0, 1, 2, 3)])
        assert K.n == 3
        assert f_vector(K) == (4, 6, 4, 1)
        assert check_face_closure(K)

    def test_labels_are_reindexed_densely(self):
        K = build_complex([(10, 30, 20), (20, 30, 40)])
        assert K.labels == (10, 20, 30, 40)
        assert K.vertex_count == 4
        assert K.top == ((0, 1, 2), (1, 2, 3))

    def test_canonical_order_ignores_input_order(self):
        a = build_complex([(2, 1, 0), (3, 2, 1)])
        b = build_complex([(1, 2, 3), (0, 1, 2)])
        assert a.simplices == b.simplices

    def test_mixed_arity(self):
        with pytest.raises(MixedDimension):
            build_complex([(0, 1, 2), (2, 3)])

    def test_repeated_vertex(self):
        with pytest.raises(DegenerateSimplex):
            build_complex([(0, 1, 1)])

    @pytest.mark.parametrize("tops", [[], [()], [(0, -1)]])
    def test_rejected_inputs(self, tops):
        with pytest.raises(ComplexCoreError):
            build_complex(tops)

    def test_index_and_contains(self):
        K, _ = load("sphere2")
        assert K.index((0, 1, 2)) == 0
        assert K.contains((1, 3))
        assert not K.contains((0, 1, 2, 3))
        assert K.count(5) == 0


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((2, 0, 1)) == 1


@pytest.mark.parametrize("name", ZOO)
def test_zoo_f_vectors_and_euler(name):
    K, _ = load(name)
    expected = zoo_entry(name).expected
    assert f_vector(K) == expected.f_vector
    assert euler_characteristic(K) == sum((-1) ** k * b for k, b in enumerate(expected.betti["Z2"]))


@pytest.mark.parametrize("name", ZOO)
def test_certificates(name):
    K, cert = load(name)
    assert cert.is_closed_pseudomanifold
    assert cert.is_connected
    assert cert.orientable == (name in ORIENTABLE)
    assert (cert.orientation is not None) == cert.orientable
    assert not cert.failures if cert.orientable else cert.failures


def test_single_edge_is_not_closed():
    cert = validate_closed_manifold(build_complex([(0, 1)]))
    assert not cert.is_closed_pseudomanifold
    with pytest.raises(NotClosed):
        require_closed(cert)


def test_punctured_torus_reports_boundary_edges():
    cert = validate_closed_manifold(punctured_torus())
    assert not cert.is_closed_pseudomanifold
    assert len([f for f in cert.failures if "expected 2" in f.reason]) == 3


def test_two_disjoint_spheres_are_not_connected():
    K = build_complex(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (4, 5, 6), (4, 5, 7), (4, 6, 7), (5, 6, 7)]
    )
    cert = validate_closed_manifold(K)
    assert cert.is_closed_pseudomanifold
    assert not cert.is_connected
    assert connected_components(K) == ((0, 1, 2, 3), (4, 5, 6, 7))
    with pytest.raises(NotClosed):
        require_closed(cert)
    require_closed(cert, need_connected=False)


@pytest.mark.parametrize("name", SURFACES)
def test_edges_of_closed_surfaces_have_two_cofaces(name):
    K, _ = load(name)
    assert all(len(tops) == 2 for tops in cofaces(K, 1).values())


def test_vertex_links_of_the_torus_are_hexagons():
    K, _ = load("torus7")
    for v in range(7):
        assert len(link(K, (v,))) == 6


class TestFundamentalClass:
    @pytest.mark.parametrize("name", ORIENTABLE)
    def test_integral_class_is_a_cycle(self, name):
        K, cert = load(name)
        fc = fundamental_class(K, cert, Ring.INTEGERS)
        assert set(fc.chain) <= {1, -1}
        assert not boundary_chain(fc.as_sparse(K))

    @pytest.mark.parametrize("name", NON_ORIENTABLE)
    def test_integral_class_needs_orientation(self, name):
        K, cert = load(name)
        with pytest.raises(NotOrientable):
            fundamental_class(K, cert, Ring.INTEGERS)

    @pytest.mark.parametrize("name", NON_ORIENTABLE)
    def test_mod_two_class_exists(self, name):
        K, cert = load(name)
        fc = fundamental_class(K, cert, "Z2")
        assert not boundary_chain(fc.as_sparse(K), Ring.MOD2)

    def test_not_closed(self):
        K = punctured_torus()
        with pytest.raises(NotClosed):
            fundamental_class(K, validate_closed_manifold(K), Ring.MOD2)


class TestSubdivision:
    def test_sphere_counts(self):
        K, _ = load("sphere2")
        sub = barycentric_subdivision(K)
        assert f_vector(sub.complex) == (14, 36, 24)
        assert sub.provenance[:4] == ((0,), (1,), (2,), (3,))
        assert sub.vertex_of((0, 1, 2)) == 4 + 6

    @pytest.mark.parametrize("name", ZOO)
    def test_euler_and_orientability_survive(self, name):
        K, cert = load(name)
        sd = barycentric_subdivision(K).complex
        sd_cert = validate_closed_manifold(sd)
        assert euler_characteristic(sd) == euler_characteristic(K)
        assert sd_cert.is_closed_pseudomanifold
        assert sd_cert.orientable == cert.orientable

    @pytest.mark.parametrize("name", ["sphere2", "torus7", "sphere3"])
    def test_fundamental_class_subdivides_to_a_fundamental_class(self, name):
        K, cert = load(name)
        sub = barycentric_subdivision(K)
        image = subdivide_chain(sub, fundamental_class(K, cert).as_sparse(K))
        assert len(image) == sub.complex.count(K.n)
        assert set(image.values()) <= {1, -1}
        assert not boundary_chain(image)


def test_summary_lists_failures():
    K = build_complex([(0, 1)])
    summary = complex_summary(K, validate_closed_manifold(K))
    assert summary["f_vector"] == [2, 1]
    assert summary["closed_pseudomanifold"] is False
    assert summary["failures"]
