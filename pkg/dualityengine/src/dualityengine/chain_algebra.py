# chain_algebra.py
"""Chain and cochain complexes of a simplicial complex, homology and cohomology.

Boundary matrices follow the canonical simplex ordering of complex_core, so
row i / column j of every matrix is simplex i / j of its degree. Homology is
read off two Smith normal forms: the outgoing map gives a basis of cycles, the
incoming map, rewritten in that basis, gives the boundary lattice.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .complex_core import Ring, SimplicialComplex, faces, permutation_sign
from .matrices import IntegerMatrix, SparseVector, add_scaled, dense_from_sparse, rational_rank
from .snf import SnfCertificate, smith_normal_form, verify_snf

logger = logging.getLogger(__name__)


class ChainAlgebraError(Exception):
    pass


class DegreeOutOfRange(ChainAlgebraError):
    pass


class DegreeMismatch(ChainAlgebraError):
    pass


class RingMismatch(ChainAlgebraError):
    pass


class NotACycle(ChainAlgebraError):
    pass


# ----- boundary and coboundary -----

def _boundary(K: SimplicialComplex, k: int, ring: Ring) -> IntegerMatrix:
    """∂_k for any integer k; outside 1..n this is the zero map of the right shape."""
    rows, cols = K.count(k - 1), K.count(k)
    if k < 1 or k > K.n:
        return IntegerMatrix.zeros(rows, cols, ring.modulus)
    entries = []
    for j, s in enumerate(K.simplices[k]):
        for i, f in enumerate(faces(s)):
            entries.append((K.index(f), j, -1 if i % 2 else 1))
    return IntegerMatrix.from_entries(rows, cols, entries, ring.modulus)


def boundary_matrix(K: SimplicialComplex, k: int, ring: "Ring | str" = Ring.INTEGERS) -> IntegerMatrix:
    """Matrix of ∂_k: C_k -> C_{k-1}; face i of a simplex carries (-1)^i.

    Raises:
        DegreeOutOfRange: k outside 1..n.
    """
    ring = Ring.parse(ring)
    if not 1 <= k <= K.n:
        logger.error("boundary degree %d outside 1..%d", k, K.n)
        raise DegreeOutOfRange(f"boundary degree {k} outside 1..{K.n}")
    return _boundary(K, k, ring)


def coboundary_matrix(K: SimplicialComplex, k: int, ring: "Ring | str" = Ring.INTEGERS) -> IntegerMatrix:
    """Matrix of δ_k: C^k -> C^{k+1}, the transpose of ∂_{k+1}.

    Raises:
        DegreeOutOfRange: k outside 0..n-1.
    """
    ring = Ring.parse(ring)
    if not 0 <= k < K.n:
        logger.error("coboundary degree %d outside 0..%d", k, K.n - 1)
        raise DegreeOutOfRange(f"coboundary degree {k} outside 0..{K.n - 1}")
    return _boundary(K, k + 1, ring).transpose()


@dataclass(frozen=True)
class ChainComplexData:
    complex: SimplicialComplex
    ring: Ring
    boundaries: Tuple[IntegerMatrix, ...]  # boundaries[k] is ∂_k for k = 0..n+1
    certificates: Tuple[SnfCertificate, ...] = ()  # Smith form of boundaries[k], both transforms kept

    def boundary(self, k: int) -> IntegerMatrix:
        return self.boundaries[k] if 0 <= k < len(self.boundaries) else _boundary(self.complex, k, self.ring)

    def squares_vanish(self) -> bool:
        return all(
            (self.boundaries[k] @ self.boundaries[k + 1]).is_zero()
            for k in range(len(self.boundaries) - 1)
        )

    def cosquares_vanish(self) -> bool:
        return all(
            (self.boundaries[k + 1].transpose() @ self.boundaries[k].transpose()).is_zero()
            for k in range(len(self.boundaries) - 1)
        )

    def verify(self, det_limit: Optional[int] = None) -> List[Dict[str, Any]]:
        """verify_snf on every boundary certificate, lowest degree first."""
        records = []
        for k, (M, cert) in enumerate(zip(self.boundaries, self.certificates)):
            checks = verify_snf(M, cert, det_limit)
            records.append({"degree": k, "ok": checks["ok"], "det_checked": "det_U" in checks and "det_V" in checks})
        return records


def chain_complex(K: SimplicialComplex, ring: "Ring | str" = Ring.INTEGERS) -> ChainComplexData:
    """All boundary matrices of K with their Smith normal form certificates."""
    ring = Ring.parse(ring)
    boundaries = tuple(_boundary(K, k, ring) for k in range(K.n + 2))
    return ChainComplexData(K, ring, boundaries, tuple(smith_normal_form(M) for M in boundaries))


# ----- chains and cochains -----

VectorLike = Union["Chain", "Cochain", Sequence[int], Mapping[int, int]]


@dataclass(frozen=True)
class Chain:
    degree: int
    ring: Ring
    values: Tuple[int, ...]

    @classmethod
    def from_simplices(
        cls,
        K: SimplicialComplex,
        degree: int,
        coefficients: Mapping[Sequence[int], int],
        ring: "Ring | str" = Ring.INTEGERS,
    ) -> "Chain":
        """Chain from {simplex: coefficient}; an unsorted simplex picks up its permutation sign."""
        ring = Ring.parse(ring)
        acc: SparseVector = {}
        for s, c in coefficients.items():
            add_scaled(acc, {K.index(tuple(sorted(s))): permutation_sign(s)}, c, ring.modulus)
        return cls(degree, ring, dense_from_sparse(acc, K.count(degree)))

    def sparse(self) -> SparseVector:
        return {i: v for i, v in enumerate(self.values) if v}

    def on_simplices(self, K: SimplicialComplex) -> Dict[Tuple[int, ...], int]:
        return {K.simplices[self.degree][i]: v for i, v in self.sparse().items()}


@dataclass(frozen=True)
class Cochain:
    degree: int
    ring: Ring
    values: Tuple[int, ...]

    @classmethod
    def from_simplices(
        cls,
        K: SimplicialComplex,
        degree: int,
        values: Mapping[Sequence[int], int],
        ring: "Ring | str" = Ring.INTEGERS,
    ) -> "Cochain":
        chain = Chain.from_simplices(K, degree, values, ring)
        return cls(degree, chain.ring, chain.values)

    @classmethod
    def coboundary_of(cls, K: SimplicialComplex, g: "Cochain") -> "Cochain":
        """δg, so that (δg)(σ) = g(∂σ)."""
        delta = coboundary_matrix(K, g.degree, g.ring)
        vec = delta.apply(g.sparse())
        return cls(g.degree + 1, g.ring, dense_from_sparse(vec, K.count(g.degree + 1)))

    def sparse(self) -> SparseVector:
        return {i: v for i, v in enumerate(self.values) if v}

    def value_on(self, K: SimplicialComplex, simplex: Sequence[int]) -> int:
        return self.values[K.index(simplex)]


def _sparse(vec: VectorLike, modulus: int = 0) -> SparseVector:
    if isinstance(vec, (Chain, Cochain)):
        return vec.sparse()
    items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
    out: SparseVector = {}
    for i, v in items:
        v = v % modulus if modulus else int(v)
        if v:
            out[int(i)] = v
    return out


def evaluate(phi: Cochain, c: Chain) -> int:
    """The pairing Σ φ(σ)·c(σ).

    Raises:
        DegreeMismatch: degrees differ.
        RingMismatch: rings differ.
    """
    if phi.degree != c.degree:
        logger.error("pairing degree %d cochain with degree %d chain", phi.degree, c.degree)
        raise DegreeMismatch(f"cochain of degree {phi.degree} against chain of degree {c.degree}")
    if phi.ring is not c.ring:
        raise RingMismatch(f"cochain over {phi.ring.value} against chain over {c.ring.value}")
    if len(phi.values) != len(c.values):
        raise DegreeMismatch("cochain and chain are indexed by different simplex sets")
    return phi.ring.reduce(sum(a * b for a, b in zip(phi.values, c.values)))


# ----- homology -----

@dataclass(frozen=True)
class HomologyGroup:
    """A homology (or cohomology) group with generators and a coordinate map.

    Generators come torsion first, in divisibility order, then the free part.
    """

    degree: int
    ring: Ring
    betti: int
    torsion: Tuple[int, ...]
    generators: Tuple[Tuple[int, ...], ...]
    kind: str = "homology"
    # coordinate machinery: x = (V_inv c)[rank:], y = U_A x
    _cycle_rank: int = field(default=0, repr=False, compare=False)
    _V_inv: Optional[IntegerMatrix] = field(default=None, repr=False, compare=False)
    _U_A: Optional[IntegerMatrix] = field(default=None, repr=False, compare=False)
    _factors: Tuple[int, ...] = field(default=(), repr=False, compare=False)

    @property
    def orders(self) -> Tuple[int, ...]:
        """Order of each generator: the torsion factor, or 0 for a free one."""
        return self.torsion + (0,) * self.betti

    @property
    def rank(self) -> int:
        return len(self.generators)

    def coordinates(self, vec: VectorLike) -> Tuple[int, ...]:
        """Coordinates of a cycle's class in the generator basis.

        Torsion coordinates are reduced modulo their order; over Z2 every
        coordinate is a bit.

        Raises:
            NotACycle: the vector is not a cycle.
        """
        if self._V_inv is None or self._U_A is None:
            raise ChainAlgebraError(f"degree {self.degree} group was built without its basis transforms")
        m = self.ring.modulus
        full = self._V_inv.apply(_sparse(vec, m))
        r = self._cycle_rank
        if any(i < r for i in full):
            logger.error("degree %d vector is not a %s cycle", self.degree, self.kind)
            raise NotACycle(f"vector is not a cycle in degree {self.degree}")
        x = {i - r: v for i, v in full.items()}
        y = self._U_A.apply(x)
        s = len(self._factors)
        out: List[int] = []
        for i, d in enumerate(self._factors):
            if d > 1:
                out.append(y.get(i, 0) % d)
        for i in range(s, self._U_A.rows):
            v = y.get(i, 0)
            out.append(v % m if m else v)
        return tuple(out)

    def is_boundary(self, vec: VectorLike) -> bool:
        return not any(self.coordinates(vec))

    def generator_chain(self, i: int) -> Chain:
        return Chain(self.degree, self.ring, self.generators[i])

    def generator_cochain(self, i: int) -> Cochain:
        return Cochain(self.degree, self.ring, self.generators[i])

    def as_record(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "ring": self.ring.value,
            "betti": self.betti,
            "torsion": list(self.torsion),
        }


def _homology_of(
    out_map: IntegerMatrix,
    in_map: IntegerMatrix,
    degree: int,
    ring: Ring,
    kind: str,
) -> HomologyGroup:
    """ker(out_map) / im(in_map) for composable maps in_map then out_map."""
    dim = out_map.cols
    m = ring.modulus
    out_cert = smith_normal_form(out_map, track_left=False, track_right=True)
    r = out_cert.rank
    V, V_inv = out_cert.V, out_cert.V_inv
    if V is None or V_inv is None:
        raise ChainAlgebraError(f"Smith form in degree {degree} returned no right transform")

    B = V_inv @ in_map
    if any(i < r for i in B.data):
        raise ChainAlgebraError(f"maps do not compose to zero in degree {degree}")
    A = B.select_rows(range(r, dim))
    a_cert = smith_normal_form(A, track_left=True, track_right=False)
    if a_cert.U is None or a_cert.U_inv is None:
        raise ChainAlgebraError(f"Smith form in degree {degree} returned no left transform")

    kernel_columns = V.columns()
    z_basis = [kernel_columns.get(r + j, {}) for j in range(dim - r)]
    factors = a_cert.diagonal
    s = len(factors)
    U_inv_cols = a_cert.U_inv.columns()

    def combine(i: int) -> Tuple[int, ...]:
        acc: SparseVector = {}
        for j, coeff in U_inv_cols.get(i, {}).items():
            add_scaled(acc, z_basis[j], coeff, m)
        return dense_from_sparse(acc, dim)

    torsion_idx = [i for i, d in enumerate(factors) if d > 1]
    free_idx = list(range(s, dim - r))
    generators = tuple(combine(i) for i in torsion_idx + free_idx)
    group = HomologyGroup(
        degree=degree,
        ring=ring,
        betti=len(free_idx),
        torsion=tuple(factors[i] for i in torsion_idx),
        generators=generators,
        kind=kind,
        _cycle_rank=r,
        _V_inv=V_inv,
        _U_A=a_cert.U,
        _factors=factors,
    )
    logger.debug("%s degree %d over %s: betti %d torsion %s", kind, degree, ring.value, group.betti, group.torsion)
    return group


def homology(K: SimplicialComplex, k: int, ring: "Ring | str" = Ring.INTEGERS) -> HomologyGroup:
    """H_k(K; ring), computed from the Smith forms of ∂_k and ∂_{k+1}.

    Raises:
        DegreeOutOfRange: k outside 0..n.
    """
    ring = Ring.parse(ring)
    if not 0 <= k <= K.n:
        raise DegreeOutOfRange(f"homology degree {k} outside 0..{K.n}")
    return _homology_of(_boundary(K, k, ring), _boundary(K, k + 1, ring), k, ring, "homology")


def cohomology(K: SimplicialComplex, k: int, ring: "Ring | str" = Ring.INTEGERS) -> HomologyGroup:
    """H^k(K; ring): homology of the transposed complex, generators are cocycles.

    Raises:
        DegreeOutOfRange: k outside 0..n.
    """
    ring = Ring.parse(ring)
    if not 0 <= k <= K.n:
        raise DegreeOutOfRange(f"cohomology degree {k} outside 0..{K.n}")
    out_map = _boundary(K, k + 1, ring).transpose()
    in_map = _boundary(K, k, ring).transpose()
    return _homology_of(out_map, in_map, k, ring, "cohomology")


def is_cycle(K: SimplicialComplex, chain: Chain) -> bool:
    if chain.degree == 0:
        return True
    return not _boundary(K, chain.degree, chain.ring).apply(chain.sparse())


def is_cocycle(K: SimplicialComplex, phi: Cochain) -> bool:
    if phi.degree >= K.n:
        return True
    return not coboundary_matrix(K, phi.degree, phi.ring).apply(phi.sparse())


def is_boundary(K: SimplicialComplex, chain: Chain) -> bool:
    """Membership of a cycle in the boundary lattice.

    Raises:
        NotACycle: the chain is not a cycle.
    """
    return homology(K, chain.degree, chain.ring).is_boundary(chain)


def homology_class(K: SimplicialComplex, chain: Chain) -> Tuple[int, ...]:
    return homology(K, chain.degree, chain.ring).coordinates(chain)


def betti_numbers(K: SimplicialComplex, ring: "Ring | str" = Ring.INTEGERS) -> Tuple[int, ...]:
    return tuple(homology(K, k, ring).betti for k in range(K.n + 1))


def rational_betti(K: SimplicialComplex) -> Tuple[int, ...]:
    """Betti numbers from rational ranks alone, without generators."""
    ranks = [rational_rank(_boundary(K, k, Ring.INTEGERS)) for k in range(K.n + 2)]
    return tuple(K.count(k) - ranks[k] - ranks[k + 1] for k in range(K.n + 1))


def euler_from_betti(groups: Sequence[HomologyGroup]) -> int:
    return sum((-1) ** g.degree * g.betti for g in groups)


def homology_report(
    K: SimplicialComplex,
    ring: "Ring | str" = Ring.INTEGERS,
    kind: str = "homology",
) -> Dict[str, Any]:
    """Per-degree records plus the reduction steps behind them."""
    ring = Ring.parse(ring)
    compute = cohomology if kind == "cohomology" else homology
    groups = [compute(K, k, ring) for k in range(K.n + 1)]
    data = chain_complex(K, ring)
    steps: List[Dict[str, Any]] = []
    for k in range(1, K.n + 1):
        cert = data.certificates[k]
        steps.append(
            {
                "step": f"Smith form of boundary {k}",
                "data": {"shape": [K.count(k - 1), K.count(k)], "rank": cert.rank, "torsion": list(cert.torsion)},
            }
        )
    checks = data.verify()
    steps.append({"step": "Certificate checks", "data": {"degrees": checks}})
    certified = all(c["ok"] for c in checks)
    if not certified:
        logger.error("a Smith normal form certificate failed its checks: %s", checks)
    return {
        "kind": kind,
        "ring": ring.value,
        "groups": [g.as_record() for g in groups],
        "euler_characteristic": euler_from_betti(groups),
        "certified": certified,
        "steps": steps,
    }


# ----- induced maps -----

def induced_matrix(target: HomologyGroup, images: Sequence[VectorLike]) -> IntegerMatrix:
    """Matrix whose column i is the class of images[i] in target's generator basis."""
    columns = {i: _sparse(target.coordinates(img)) for i, img in enumerate(images)}
    return IntegerMatrix.from_columns(target.rank, len(images), columns, target.ring.modulus)


def is_isomorphism(source: HomologyGroup, target: HomologyGroup, M: IntegerMatrix) -> Tuple[bool, SnfCertificate]:
    """Whether the map with matrix M (target coordinates x source generators) is bijective.

    The groups must carry the same invariants; the map is then an isomorphism
    exactly when it is onto, i.e. when M together with the target's torsion
    relations spans every coordinate. Over Z2 this is full rank.
    """
    cert = smith_normal_form(M, track_left=False, track_right=False)
    if source.betti != target.betti or source.torsion != target.torsion:
        return False, cert
    if M.rows != M.cols:
        return False, cert
    if M.rows == 0:
        return True, cert
    relations = IntegerMatrix.from_entries(
        M.rows, M.rows, ((i, i, d) for i, d in enumerate(target.torsion)), M.modulus
    )
    spanning = smith_normal_form(M.hstack(relations), track_left=False, track_right=False)
    return spanning.rank == M.rows and spanning.all_units, cert
