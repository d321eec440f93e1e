import functools
import logging

import pytest
from sympy import Matrix, ZZ, factorint
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form

from dualityengine.complex_core import barycentric_subdivision, build_complex, validate_closed_manifold
from dualityengine.complex_zoo import get_complex

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

SURFACES = ["sphere2", "torus7", "projective_plane6", "klein_bottle8", "genus2_surface"]
THREE_MANIFOLDS = ["sphere3", "projective_space11"]
ORIENTABLE = ["sphere2", "sphere3", "torus7", "genus2_surface", "projective_space11"]
NON_ORIENTABLE = ["projective_plane6", "klein_bottle8"]
ZOO = SURFACES + THREE_MANIFOLDS
RINGS = ["Z", "Z2"]


def zoo_rings(integral=ZOO, slow=()):
    """(name, ring) cases: Z2 for every zoo complex, Z for those in integral; names in slow carry the slow mark."""
    return [
        pytest.param(name, ring, marks=pytest.mark.slow) if name in slow else (name, ring)
        for name in ZOO
        for ring in RINGS
        if ring == "Z2" or name in integral
    ]


@functools.lru_cache(maxsize=None)
def load(name):
    """Zoo complex and its certificate, built once per session."""
    K = get_complex(name)
    return K, validate_closed_manifold(K)


@functools.lru_cache(maxsize=None)
def load_subdivided(name):
    K, _ = load(name)
    sd = barycentric_subdivision(K).complex
    return sd, validate_closed_manifold(sd)


def punctured_torus():
    K, _ = load("torus7")
    return build_complex(K.top[1:])


def _canonical(diagonal):
    """Invariant factors of any diagonal form, regrouped prime by prime."""
    exponents = {}
    for d in diagonal:
        for p, e in factorint(d).items():
            exponents.setdefault(p, []).append(e)
    factors = [1] * len(diagonal)
    for p, es in exponents.items():
        for slot, e in zip(range(len(diagonal) - 1, -1, -1), sorted(es, reverse=True)):
            factors[slot] *= p**e
    return tuple(factors)


def sympy_invariants(M):
    """Nonzero invariant factors of an IntegerMatrix, computed by sympy."""
    if M.rows == 0 or M.cols == 0:
        return ()
    S = sympy_smith_normal_form(Matrix(M.to_dense()), domain=ZZ)
    return _canonical([abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0])


@pytest.fixture
def zoo():
    return load


@pytest.fixture
def subdivided():
    return load_subdivided
