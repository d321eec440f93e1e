import pytest

from dualityengine.chain_algebra import cohomology
from dualityengine.complex_zoo import TORUS7_LOOP
from dualityengine.engine import DualityEngine
from dualityengine.level_sets import dual_cocycle

from .conftest import load


def test_torus_runs_every_stage():
    K, _ = load("torus7")
    result = DualityEngine.analyze(K)
    assert result["ring"] == "Z"
    assert not [key for key in result if key.endswith("_error")]
    assert result["duality"]["passed"]
    assert result["leibniz"]["ok"]
    assert result["two_route"]["agree"]
    assert result["summary"]["euler_characteristic"] == 0


def test_non_orientable_defaults_to_mod_two():
    K, _ = load("klein_bottle8")
    result = DualityEngine.analyze(K)
    assert result["ring"] == "Z2"
    assert result["duality"]["passed"]


def test_integral_request_on_projective_plane_records_stage_errors():
    K, _ = load("projective_plane6")
    result = DualityEngine.analyze(K, ring="Z")
    assert [g["torsion"] for g in result["homology"]["groups"]] == [[], [2], []]
    assert "orientable" in result["duality_error"]
    assert "dual_error" in result
    assert "two_route_error" in result


@pytest.mark.parametrize("name", ["torus7", "projective_space11"])
def test_level_set_stage(name):
    K, _ = load(name)
    ring = "Z" if name == "torus7" else "Z2"
    phi = cohomology(K, 1, ring).generator_cochain(0)
    result = DualityEngine.analyze(K, ring=ring, cocycle=phi)
    assert "level_set" in result
    assert "level_set_error" not in result


@pytest.mark.parametrize("normalize,crossings", [(True, 18), (False, 14)])
def test_level_set_stage_normalizes_unless_asked(normalize, crossings):
    K, cert = load("torus7")
    phi = dual_cocycle(K, TORUS7_LOOP, cert)
    result = DualityEngine.analyze(K, cocycle=phi, normalize=normalize)
    assert result["level_set"]["normalized"] is normalize
    assert result["level_set"]["crossings"] == crossings
