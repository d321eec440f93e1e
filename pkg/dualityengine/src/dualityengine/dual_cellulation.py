# dual_cellulation.py
"""Dual block decomposition of a closed pseudomanifold.

The dual k-cell of an (n-k)-simplex σ is the union of the subdivision
simplices spanned by barycenters of flags σ < σ_1 < ... < σ_k ending in a top
simplex. Each cell is kept as a signed chain of those flags in the barycentric
subdivision; incidences are read off the boundary of that chain, so every
sign in this module is measured rather than assumed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Any, Dict, List, Optional, Tuple

from .chain_algebra import (
    HomologyGroup,
    _boundary,
    _homology_of,
    cohomology,
    induced_matrix,
    is_isomorphism,
)
from .complex_core import (
    ManifoldCertificate,
    NotOrientable,
    Ring,
    Simplex,
    SimplicialComplex,
    SparseChain,
    Subdivision,
    barycentric_subdivision,
    boundary_chain,
    permutation_sign,
    require_closed,
    require_ring,
)
from .matrices import IntegerMatrix

logger = logging.getLogger(__name__)


class DualCellulationError(Exception):
    pass


@dataclass(frozen=True)
class DualComplex:
    n: int
    ring: Ring
    subdivision: Subdivision
    centers: Tuple[Tuple[Simplex, ...], ...]  # centers[k]: the (n-k)-simplices, canonical order
    cells: Tuple[Tuple[SparseChain, ...], ...]  # cells[k][i]: signed flag chain of dual cell i
    incidence: Tuple[IntegerMatrix, ...]  # incidence[k]: dual k-cells -> dual (k-1)-cells, k = 0..n+1

    def cell_counts(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.centers)

    def boundary(self, k: int) -> IntegerMatrix:
        return self.incidence[k]

    def squares_vanish(self) -> bool:
        return all(
            (self.incidence[k] @ self.incidence[k + 1]).is_zero() for k in range(len(self.incidence) - 1)
        )


def dual_euler_characteristic(dual: DualComplex) -> int:
    return sum((-1) ** k * c for k, c in enumerate(dual.cell_counts()))


def _flag_chains(
    K: SimplicialComplex,
    sub: Subdivision,
    orientation: Optional[Tuple[int, ...]],
    ring: Ring,
) -> List[Dict[Simplex, SparseChain]]:
    """chains[q][σ] for every q-simplex σ: the signed flags starting at σ.

    A flag from top τ is written as a full vertex ordering p of τ that starts
    with σ's vertices in increasing order; its coefficient is o(τ)·sgn(p).
    """
    n = K.n
    chains: List[Dict[Simplex, SparseChain]] = [{s: {} for s in K.simplices[q]} for q in range(n + 1)]
    for t, tau in enumerate(K.top):
        o = orientation[t] if orientation is not None else 1
        for q in range(n + 1):
            for sigma in combinations(tau, q + 1):
                rest = [v for v in tau if v not in sigma]
                for tail in permutations(rest):
                    p = sigma + tail
                    flag = tuple(sub.ids[tuple(sorted(p[: i + 1]))] for i in range(q, n + 1))
                    value = ring.reduce(o * permutation_sign(p))
                    chains[q][sigma][flag] = value
    return chains


def _decompose(
    bd: SparseChain,
    sub: Subdivision,
    targets: Dict[Simplex, SparseChain],
    index: Dict[Simplex, int],
    ring: Ring,
    sigma: Simplex,
) -> Dict[int, int]:
    """Write a boundary chain as a combination of the cells in targets."""
    coeffs: Dict[int, int] = {}
    for face, value in bd.items():
        tau = sub.provenance[face[0]]
        if tau not in targets:
            raise DualCellulationError(f"boundary of the dual cell of {sigma} leaves the dual skeleton at {tau}")
        if index[tau] in coeffs:
            continue
        coeffs[index[tau]] = ring.reduce(value * targets[tau][face])
    rebuilt: SparseChain = {}
    for tau, i in index.items():
        c = coeffs.get(i, 0)
        if not c:
            continue
        for face, value in targets[tau].items():
            v = ring.reduce(rebuilt.get(face, 0) + c * value)
            if v:
                rebuilt[face] = v
            else:
                rebuilt.pop(face, None)
    if rebuilt != bd:
        logger.error("dual cell of %s: boundary is not a combination of dual cells", sigma)
        raise DualCellulationError(f"boundary of the dual cell of {sigma} does not decompose into dual cells")
    return {i: c for i, c in coeffs.items() if c}


def dual_complex(
    K: SimplicialComplex,
    cert: ManifoldCertificate,
    ring: "Ring | str | None" = None,
) -> DualComplex:
    """Dual cells as signed flag chains in the barycentric subdivision.

    Signs come from the orientation when the certificate has one; otherwise,
    and whenever ring is Z2, everything is taken mod 2.

    Raises:
        NotClosed: not a closed pseudomanifold.
        NotOrientable: Z requested on a non-orientable complex.
    """
    require_closed(cert, need_connected=False)
    if ring is None:
        ring = Ring.INTEGERS if cert.orientable else Ring.MOD2
    ring = Ring.parse(ring)
    require_ring(cert, ring)
    n = K.n
    sub = barycentric_subdivision(K)
    orientation = cert.orientation if ring is Ring.INTEGERS else None
    chains = _flag_chains(K, sub, orientation, ring)

    centers = tuple(K.simplices[n - k] for k in range(n + 1))
    cells = tuple(tuple(chains[n - k][s] for s in centers[k]) for k in range(n + 1))

    incidence: List[IntegerMatrix] = [IntegerMatrix.zeros(0, K.count(n), ring.modulus)]
    for k in range(1, n + 1):
        q = n - k
        targets = chains[q + 1]
        index = {s: i for i, s in enumerate(K.simplices[q + 1])}
        entries = []
        for j, sigma in enumerate(K.simplices[q]):
            bd = boundary_chain(chains[q][sigma], ring)
            for i, c in _decompose(bd, sub, targets, index, ring, sigma).items():
                entries.append((i, j, c))
        incidence.append(IntegerMatrix.from_entries(K.count(q + 1), K.count(q), entries, ring.modulus))
    incidence.append(IntegerMatrix.zeros(K.count(0), 0, ring.modulus))

    dual = DualComplex(n, ring, sub, centers, cells, tuple(incidence))
    if not dual.squares_vanish():
        raise DualCellulationError("dual incidences do not compose to zero")
    logger.debug("dual complex over %s with cell counts %s", ring.value, dual.cell_counts())
    return dual


def dual_homology(dual: DualComplex, k: int) -> HomologyGroup:
    """Homology of the dual block complex in degree k."""
    if not 0 <= k <= dual.n:
        raise DualCellulationError(f"dual degree {k} outside 0..{dual.n}")
    return _homology_of(dual.incidence[k], dual.incidence[k + 1], k, dual.ring, "dual homology")


# ----- cochains of K versus chains of the dual -----

@dataclass(frozen=True)
class DualCorrespondence:
    """T_k: C^k(K) -> C_{n-k}(dual) with T_{k+1} δ_k = ε_k ∂_{n-k} T_k."""

    n: int
    ring: Ring
    T: Tuple[IntegerMatrix, ...]  # T[k] for k = 0..n
    epsilon: Tuple[int, ...]  # epsilon[k] for δ_k, k = 0..n-1

    def check_chain_map(self, K: SimplicialComplex, dual: DualComplex) -> bool:
        for k in range(self.n):
            delta = _boundary(K, k + 1, self.ring).transpose()
            left = self.T[k + 1] @ delta
            right = dual.incidence[self.n - k] @ self.T[k]
            scaled = IntegerMatrix.from_entries(
                right.rows, right.cols, ((i, j, self.epsilon[k] * v) for i, j, v in right.entries()), self.ring.modulus
            )
            if left != scaled:
                return False
        return True


def dual_correspondence(
    K: SimplicialComplex,
    dual: DualComplex,
    ring: "Ring | str | None" = None,
) -> DualCorrespondence:
    """Indicator cochain of σ goes to the dual cell of σ; ε is measured per degree.

    Raises:
        NotOrientable: Z requested but the dual was built mod 2.
        DualCellulationError: the incidence-to-coboundary ratio is not constant.
    """
    ring = dual.ring if ring is None else Ring.parse(ring)
    if ring is not dual.ring:
        if ring is Ring.INTEGERS:
            logger.error("integral correspondence requested on a mod-2 dual complex")
            raise NotOrientable("the dual complex carries no orientation; use Z2")
        raise DualCellulationError("rebuild the dual complex over Z2 for a mod-2 correspondence")
    n = K.n
    T = tuple(IntegerMatrix.identity(K.count(k), ring.modulus) for k in range(n + 1))
    epsilon: List[int] = []
    for k in range(n):
        delta = _boundary(K, k + 1, ring).transpose()
        inc = dual.incidence[n - k]
        ratios = set()
        for i, j, v in delta.entries():
            ratios.add(ring.reduce(inc.entry(i, j) * v))
        if inc.nnz != delta.nnz:
            ratios.add(0)
        if len(ratios) > 1 or 0 in ratios:
            logger.error("degree %d: dual incidence is not a fixed multiple of the coboundary", k)
            raise DualCellulationError(f"no constant sign relates δ_{k} to the dual boundary")
        epsilon.append(ratios.pop() if ratios else 1)
    corr = DualCorrespondence(n, ring, T, tuple(epsilon))
    if not corr.check_chain_map(K, dual):
        raise DualCellulationError("correspondence is not a chain map up to the measured signs")
    logger.debug("dual correspondence signs %s", corr.epsilon)
    return corr


def dual_route_verdicts(
    K: SimplicialComplex,
    cert: ManifoldCertificate,
    ring: "Ring | str" = Ring.INTEGERS,
) -> List[Dict[str, Any]]:
    """Per-degree verdicts for H^k(K) -> H_{n-k}(dual) induced by T."""
    ring = Ring.parse(ring)
    require_closed(cert)
    require_ring(cert, ring)
    dual = dual_complex(K, cert, ring)
    corr = dual_correspondence(K, dual, ring)
    records: List[Dict[str, Any]] = []
    for k in range(K.n + 1):
        source = cohomology(K, k, ring)
        target = dual_homology(dual, K.n - k)
        images = [corr.T[k].apply(dict(enumerate(g))) for g in source.generators]
        M = induced_matrix(target, images)
        iso, snf = is_isomorphism(source, target, M)
        records.append({"k": k, "iso": iso, "invariant_factors": list(snf.diagonal)})
    return records


def dual_report(K: SimplicialComplex, cert: ManifoldCertificate, ring: "Ring | str | None" = None) -> Dict[str, Any]:
    dual = dual_complex(K, cert, ring)
    corr = dual_correspondence(K, dual)
    steps: List[Dict[str, Any]] = [
        {"step": "Barycentric subdivision", "data": {"f_vector": [dual.subdivision.complex.count(k) for k in range(K.n + 1)]}},
        {
            "step": "Dual incidences",
            "data": {
                "degrees": [
                    {"k": k, "shape": list(dual.incidence[k].shape), "entries": [list(e) for e in dual.incidence[k].entries()]}
                    for k in range(1, K.n + 1)
                ]
            },
        },
        {"step": "Chain-map signs", "data": {"epsilon": list(corr.epsilon)}},
    ]
    return {
        "ring": dual.ring.value,
        "cell_counts": list(dual.cell_counts()),
        "euler_characteristic": dual_euler_characteristic(dual),
        "composes_to_zero": dual.squares_vanish(),
        "epsilon": list(corr.epsilon),
        "groups": [dual_homology(dual, k).as_record() for k in range(K.n + 1)],
        "steps": steps,
    }
