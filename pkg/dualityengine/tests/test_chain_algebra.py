import pytest

from dualityengine import config
from dualityengine.chain_algebra import (
    Chain,
    ChainAlgebraError,
    Cochain,
    DegreeMismatch,
    DegreeOutOfRange,
    HomologyGroup,
    NotACycle,
    RingMismatch,
    betti_numbers,
    boundary_matrix,
    chain_complex,
    coboundary_matrix,
    cohomology,
    euler_from_betti,
    evaluate,
    homology,
    homology_class,
    homology_report,
    induced_matrix,
    is_boundary,
    is_cocycle,
    is_cycle,
    is_isomorphism,
    rational_betti,
)
from dualityengine.complex_core import Ring, build_complex, euler_characteristic
from dualityengine.complex_zoo import zoo_entry
from dualityengine.config import Settings
from dualityengine.matrices import IntegerMatrix, rational_rank
from dualityengine.snf import snf_invariants

from .conftest import NON_ORIENTABLE, ZOO, load, load_subdivided, zoo_rings


class TestBoundaryMatrices:
    def test_single_edge(self):
        K = build_complex([(0, 1)])
        assert boundary_matrix(K, 1).to_dense() == [[-1], [1]]

    def test_triangle_boundary_of_sphere(self):
        K, _ = load("sphere2")
        d1 = boundary_matrix(K, 1)
        assert d1.shape == (4, 6)
        assert rational_rank(d1) == 3

    @pytest.mark.parametrize("k", [0, 3])
    def test_degree_out_of_range(self, k):
        K, _ = load("torus7")
        with pytest.raises(DegreeOutOfRange):
            boundary_matrix(K, k)

    def test_coboundary_is_transpose(self):
        K, _ = load("torus7")
        assert coboundary_matrix(K, 1) == boundary_matrix(K, 2).transpose()
        with pytest.raises(DegreeOutOfRange):
            coboundary_matrix(K, 2)

    @pytest.mark.parametrize("name", ZOO)
    @pytest.mark.parametrize("ring", ["Z", "Z2"])
    def test_squares_vanish(self, name, ring):
        K, _ = load(name)
        data = chain_complex(K, ring)
        assert data.squares_vanish()
        assert data.cosquares_vanish()
        assert len(data.boundaries) == len(data.certificates) == K.n + 2
        assert all(record["ok"] for record in data.verify())


@pytest.mark.parametrize("name", ZOO)
def test_homology_golden_table(name):
    K, _ = load(name)
    expected = zoo_entry(name).expected
    for ring in ("Z", "Z2"):
        groups = [homology(K, k, ring) for k in range(K.n + 1)]
        assert tuple(g.betti for g in groups) == expected.betti[ring]
    for k in range(K.n + 1):
        assert homology(K, k, "Z").torsion == expected.torsion_in(k)
        assert homology(K, k, "Z2").torsion == ()


@pytest.mark.parametrize("name", ZOO)
def test_integral_betti_numbers_match_rational_ranks(name):
    K, _ = load(name)
    assert betti_numbers(K, Ring.INTEGERS) == rational_betti(K)


@pytest.mark.parametrize("name", ZOO)
def test_mod_two_betti_numbers_match_field_ranks(name):
    K, _ = load(name)
    ranks = [rational_rank(boundary_matrix(K, k, "Z2")) for k in range(1, K.n + 1)]
    ranks = [0] + ranks + [0]
    expected = tuple(K.count(k) - ranks[k] - ranks[k + 1] for k in range(K.n + 1))
    assert betti_numbers(K, Ring.MOD2) == expected


@pytest.mark.parametrize("name", ZOO)
def test_universal_coefficients(name):
    K, _ = load(name)
    for k in range(K.n + 1):
        H = homology(K, k, "Z")
        below = homology(K, k - 1, "Z").torsion if k > 0 else ()
        even = sum(1 for d in H.torsion if d % 2 == 0) + sum(1 for d in below if d % 2 == 0)
        assert homology(K, k, "Z2").betti == H.betti + even


@pytest.mark.parametrize("name", ZOO)
def test_cohomology_torsion_shifts_up(name):
    K, _ = load(name)
    for k in range(K.n + 1):
        H_up = cohomology(K, k, "Z")
        assert H_up.betti == homology(K, k, "Z").betti
        assert H_up.torsion == (homology(K, k - 1, "Z").torsion if k > 0 else ())


@pytest.mark.parametrize("name", ZOO)
def test_euler_characteristic_from_betti(name):
    K, _ = load(name)
    for ring in ("Z", "Z2"):
        groups = [homology(K, k, ring) for k in range(K.n + 1)]
        assert euler_from_betti(groups) == euler_characteristic(K)


def test_projective_plane_has_a_two_in_its_boundary():
    K, _ = load("projective_plane6")
    assert snf_invariants(boundary_matrix(K, 2))[-1] == 2


class TestGenerators:
    @pytest.mark.parametrize("name", ["torus7", "projective_plane6", "klein_bottle8", "genus2_surface"])
    def test_generators_are_cycles_with_unit_coordinates(self, name):
        K, _ = load(name)
        for ring in ("Z", "Z2"):
            H = homology(K, 1, ring)
            for i in range(H.rank):
                z = H.generator_chain(i)
                assert is_cycle(K, z)
                assert not H.is_boundary(z)
                assert H.coordinates(z) == tuple(int(j == i) for j in range(H.rank))

    @pytest.mark.parametrize("name", ["torus7", "projective_plane6", "klein_bottle8"])
    def test_cocycle_generators(self, name):
        K, _ = load(name)
        for ring in ("Z", "Z2"):
            H = cohomology(K, 1, ring)
            for i in range(H.rank):
                phi = H.generator_cochain(i)
                assert is_cocycle(K, phi)
                assert H.coordinates(phi) == tuple(int(j == i) for j in range(H.rank))

    def test_torsion_generator_has_order_two(self):
        K, _ = load("klein_bottle8")
        H = homology(K, 1, "Z")
        assert H.orders == (2, 0)
        twice = Chain(1, Ring.INTEGERS, tuple(2 * v for v in H.generators[0]))
        assert H.is_boundary(twice)

    def test_class_is_unchanged_by_a_boundary(self):
        K, _ = load("torus7")
        H = homology(K, 1, "Z")
        z = H.generators[1]
        bd = boundary_matrix(K, 2).column(K.index((0, 1, 3)))
        shifted = [v + bd.get(i, 0) for i, v in enumerate(z)]
        assert H.coordinates(shifted) == H.coordinates(z)

    def test_boundary_of_a_triangle_is_a_boundary(self):
        K, _ = load("torus7")
        c = Chain.from_simplices(K, 1, {(0, 1): 1, (1, 3): 1, (3, 0): 1})
        assert is_cycle(K, c)
        assert is_boundary(K, c)
        assert homology_class(K, c) == (0, 0)

    def test_single_edge_is_not_a_cycle(self):
        K, _ = load("torus7")
        c = Chain.from_simplices(K, 1, {(0, 1): 1})
        assert not is_cycle(K, c)
        with pytest.raises(NotACycle):
            homology_class(K, c)

    def test_sphere_top_class(self):
        K, cert = load("sphere2")
        H = homology(K, 2, "Z")
        assert H.betti == 1
        assert H.coordinates(cert.orientation) in ((1,), (-1,))


class TestEvaluate:
    def test_zero_cochain(self):
        K, _ = load("torus7")
        z = homology(K, 1, "Z").generator_chain(0)
        assert evaluate(Cochain(1, Ring.INTEGERS, (0,) * K.count(1)), z) == 0

    def test_coboundary_vanishes_on_cycles(self):
        K, _ = load("torus7")
        g = Cochain.from_simplices(K, 0, {(0,): 3, (4,): -2})
        dg = Cochain.coboundary_of(K, g)
        H = homology(K, 1, "Z")
        for i in range(H.rank):
            assert evaluate(dg, H.generator_chain(i)) == 0

    def test_indicator_on_its_simplex(self):
        K, _ = load("sphere2")
        phi = Cochain.from_simplices(K, 1, {(1, 2): 1})
        c = Chain.from_simplices(K, 1, {(1, 2): 1})
        assert evaluate(phi, c) == 1
        assert evaluate(phi, Chain.from_simplices(K, 1, {(2, 1): 1})) == -1

    def test_degree_mismatch(self):
        K, _ = load("sphere2")
        with pytest.raises(DegreeMismatch):
            evaluate(Cochain.from_simplices(K, 0, {(0,): 1}), Chain.from_simplices(K, 1, {(0, 1): 1}))

    def test_ring_mismatch(self):
        K, _ = load("sphere2")
        with pytest.raises(RingMismatch):
            evaluate(Cochain.from_simplices(K, 1, {(0, 1): 1}, "Z2"), Chain.from_simplices(K, 1, {(0, 1): 1}))

    def test_mod_two_values(self):
        K, _ = load("sphere2")
        phi = Cochain.from_simplices(K, 1, {(0, 1): 3}, "Z2")
        assert phi.value_on(K, (0, 1)) == 1
        assert evaluate(phi, Chain.from_simplices(K, 1, {(0, 1): 1}, "Z2")) == 1


@pytest.mark.parametrize("name", NON_ORIENTABLE)
def test_cohomology_pairing_over_z2_is_nondegenerate(name):
    K, _ = load(name)
    up, down = cohomology(K, 1, "Z2"), homology(K, 1, "Z2")
    pairing = [[evaluate(up.generator_cochain(i), down.generator_chain(j)) for j in range(down.rank)] for i in range(up.rank)]
    assert rational_rank(IntegerMatrix.from_dense(pairing, modulus=2)) == up.rank == down.rank


class TestIsomorphism:
    def test_identity_on_homology(self):
        K, _ = load("torus7")
        H = homology(K, 1, "Z")
        M = induced_matrix(H, H.generators)
        assert M == IntegerMatrix.identity(2)
        assert is_isomorphism(H, H, M)[0]

    def test_doubling_is_not_onto(self):
        K, _ = load("torus7")
        H = homology(K, 1, "Z")
        doubled = [[2 * v for v in g] for g in H.generators]
        assert not is_isomorphism(H, H, induced_matrix(H, doubled))[0]

    def test_mismatched_groups(self):
        K, _ = load("klein_bottle8")
        H1, H0 = homology(K, 1, "Z"), homology(K, 0, "Z")
        assert not is_isomorphism(H1, H0, IntegerMatrix.zeros(1, 2))[0]


def test_report_records_groups_and_steps():
    K, _ = load("projective_plane6")
    report = homology_report(K, "Z")
    assert report["groups"][1] == {"degree": 1, "ring": "Z", "betti": 0, "torsion": [2]}
    assert report["euler_characteristic"] == 1
    assert [s["step"] for s in report["steps"]] == [
        "Smith form of boundary 1",
        "Smith form of boundary 2",
        "Certificate checks",
    ]
    assert report["certified"]


@pytest.mark.parametrize("limit,checked", [(0, False), (60, True)])
def test_report_certificate_checks_follow_the_det_limit(monkeypatch, limit, checked):
    monkeypatch.setattr(config, "_settings", Settings(det_check_limit=limit))
    K, _ = load("torus7")
    report = homology_report(K, "Z")
    checks = report["steps"][-1]["data"]["degrees"]
    assert [c["degree"] for c in checks] == [0, 1, 2, 3]
    assert all(c["ok"] for c in checks)
    assert all(c["det_checked"] is checked for c in checks)


def test_homology_degree_out_of_range():
    K, _ = load("sphere2")
    with pytest.raises(DegreeOutOfRange):
        homology(K, 3)
    with pytest.raises(ChainAlgebraError):
        cohomology(K, -1)


@pytest.mark.parametrize("name,ring", zoo_rings(slow=["projective_space11"]))
def test_squares_vanish_after_subdivision(name, ring):
    sd, _ = load_subdivided(name)
    for k in range(1, sd.n):
        assert (boundary_matrix(sd, k, ring) @ boundary_matrix(sd, k + 1, ring)).is_zero()


@pytest.mark.parametrize("name,ring", zoo_rings(slow=["genus2_surface", "projective_space11"]))
def test_homology_survives_subdivision(name, ring):
    K, _ = load(name)
    sd, _ = load_subdivided(name)
    expected = zoo_entry(name).expected
    before = [homology(K, k, ring) for k in range(K.n + 1)]
    after = [homology(sd, k, ring) for k in range(K.n + 1)]
    assert [(g.betti, g.torsion) for g in after] == [(g.betti, g.torsion) for g in before]
    assert tuple(g.betti for g in after) == expected.betti[ring]
    if ring == "Z":
        assert tuple(g.torsion for g in after) == tuple(expected.torsion_in(k) for k in range(K.n + 1))


def test_coordinates_need_the_basis_transforms():
    bare = HomologyGroup(degree=1, ring=Ring.INTEGERS, betti=0, torsion=(), generators=())
    with pytest.raises(ChainAlgebraError):
        bare.coordinates([0, 0, 0])
