# complex_core.py
"""Simplicial complexes: construction, closed-manifold checks, orientation,
fundamental class and barycentric subdivision.

Simplices are strictly increasing tuples of dense 0-based vertex indices.
Within each degree they are sorted lexicographically; that position is the
row/column index of the simplex in every matrix built downstream.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]
SparseChain = Dict[Simplex, int]


class ComplexCoreError(Exception):
    pass


class MixedDimension(ComplexCoreError):
    pass


class DegenerateSimplex(ComplexCoreError):
    pass


class NotClosed(ComplexCoreError):
    pass


class NotOrientable(ComplexCoreError):
    pass


class Ring(str, Enum):
    INTEGERS = "Z"
    MOD2 = "Z2"

    @property
    def modulus(self) -> int:
        return 2 if self is Ring.MOD2 else 0

    def reduce(self, value: int) -> int:
        return value % 2 if self is Ring.MOD2 else value

    @classmethod
    def parse(cls, text: "str | Ring") -> "Ring":
        if isinstance(text, Ring):
            return text
        aliases = {
            "z": cls.INTEGERS,
            "integers": cls.INTEGERS,
            "int": cls.INTEGERS,
            "z2": cls.MOD2,
            "mod2": cls.MOD2,
            "f2": cls.MOD2,
            "gf2": cls.MOD2,
        }
        try:
            return aliases[text.strip().lower().replace("/", "")]
        except KeyError:
            raise ValueError(f"unknown coefficient ring: {text!r} (use Z or Z2)") from None


# ----- complexes -----

@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    simplices: Tuple[Tuple[Simplex, ...], ...]
    vertex_count: int
    labels: Tuple[int, ...] = ()  # input label of each dense vertex
    _index: Tuple[Dict[Simplex, int], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self._index:
            object.__setattr__(
                self,
                "_index",
                tuple({s: i for i, s in enumerate(level)} for level in self.simplices),
            )
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.vertex_count)))

    def count(self, k: int) -> int:
        if 0 <= k <= self.n:
            return len(self.simplices[k])
        return 0

    def index(self, simplex: Sequence[int]) -> int:
        key = tuple(simplex)
        return self._index[len(key) - 1][key]

    def contains(self, simplex: Sequence[int]) -> bool:
        key = tuple(simplex)
        k = len(key) - 1
        return 0 <= k <= self.n and key in self._index[k]

    @property
    def top(self) -> Tuple[Simplex, ...]:
        return self.simplices[self.n]


def faces(simplex: Simplex) -> List[Simplex]:
    """Codimension-one faces; face i drops vertex i."""
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def permutation_sign(seq: Sequence[int]) -> int:
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def build_complex(top_simplices: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Face closure of the given top simplices, re-indexed onto dense vertices.

    Raises:
        MixedDimension: tuples of unequal arity.
        DegenerateSimplex: a tuple repeats a vertex.
        ComplexCoreError: empty input or negative vertex label.
    """
    tops = [tuple(int(v) for v in t) for t in top_simplices]
    if not tops:
        raise ComplexCoreError("no simplices given")
    arity = len(tops[0])
    if arity == 0:
        raise ComplexCoreError("empty simplex")
    for t in tops:
        if len(t) != arity:
            logger.error("mixed arity %d vs %d in %s", len(t), arity, t)
            raise MixedDimension(f"simplex {t} has {len(t)} vertices, expected {arity}")
        if len(set(t)) != len(t):
            logger.error("repeated vertex in %s", t)
            raise DegenerateSimplex(f"simplex {t} repeats a vertex")
        if min(t) < 0:
            raise ComplexCoreError(f"simplex {t} has a negative vertex index")

    labels = tuple(sorted({v for t in tops for v in t}))
    dense = {label: i for i, label in enumerate(labels)}
    n = arity - 1

    levels: List[set] = [set() for _ in range(n + 1)]
    levels[n] = {tuple(sorted(dense[v] for v in t)) for t in tops}
    for k in range(n, 0, -1):
        for s in levels[k]:
            levels[k - 1].update(faces(s))

    complex_ = SimplicialComplex(
        n=n,
        simplices=tuple(tuple(sorted(level)) for level in levels),
        vertex_count=len(labels),
        labels=labels,
    )
    logger.debug("built complex of dimension %d with f-vector %s", n, f_vector(complex_))
    return complex_


def f_vector(K: SimplicialComplex) -> Tuple[int, ...]:
    return tuple(len(level) for level in K.simplices)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * c for k, c in enumerate(f_vector(K)))


def check_face_closure(K: SimplicialComplex) -> bool:
    return all(K.contains(f) for k in range(1, K.n + 1) for s in K.simplices[k] for f in faces(s))


def cofaces(K: SimplicialComplex, k: int) -> Dict[Simplex, List[int]]:
    """Map each k-simplex to the indices of the (k+1)-simplices containing it."""
    out: Dict[Simplex, List[int]] = {s: [] for s in K.simplices[k]} if 0 <= k <= K.n else {}
    if 0 <= k < K.n:
        for j, s in enumerate(K.simplices[k + 1]):
            for f in faces(s):
                out[f].append(j)
    return out


def connected_components(K: SimplicialComplex) -> Tuple[Tuple[int, ...], ...]:
    """Top simplices grouped into pieces joined across shared codimension-1 faces."""
    if K.n == 0:
        return tuple((j,) for j in range(K.count(0)))
    neighbors: Dict[int, List[int]] = {j: [] for j in range(K.count(K.n))}
    for tops in cofaces(K, K.n - 1).values():
        for a in tops:
            neighbors[a].extend(b for b in tops if b != a)
    pieces: List[Tuple[int, ...]] = []
    seen: set = set()
    for root in neighbors:
        if root in seen:
            continue
        seen.add(root)
        piece, queue = [root], deque([root])
        while queue:
            for other in neighbors[queue.popleft()]:
                if other not in seen:
                    seen.add(other)
                    piece.append(other)
                    queue.append(other)
        pieces.append(tuple(sorted(piece)))
    return tuple(pieces)


def link(K: SimplicialComplex, simplex: Sequence[int]) -> List[Simplex]:
    """Maximal simplices of the link of a simplex."""
    s = set(simplex)
    return sorted(tuple(v for v in t if v not in s) for t in K.top if s <= set(t))


def boundary_chain(chain: SparseChain, ring: Ring = Ring.INTEGERS) -> SparseChain:
    """Boundary of a chain given as {simplex: coefficient}; face i carries (-1)^i."""
    out: SparseChain = {}
    for s, c in chain.items():
        if len(s) < 2:
            continue
        for i, f in enumerate(faces(s)):
            val = ring.reduce(out.get(f, 0) + (-c if i % 2 else c))
            if val:
                out[f] = val
            else:
                out.pop(f, None)
    return out


# ----- closed manifold certificate -----

@dataclass(frozen=True)
class Failure:
    simplex: Simplex
    reason: str


@dataclass(frozen=True)
class ManifoldCertificate:
    is_closed_pseudomanifold: bool
    is_connected: bool
    orientable: bool
    orientation: Optional[Tuple[int, ...]]  # sign per top simplex, canonical order
    failures: Tuple[Failure, ...] = ()

    def sign(self, K: SimplicialComplex, simplex: Sequence[int]) -> int:
        if self.orientation is None:
            raise NotOrientable("certificate carries no orientation")
        return self.orientation[K.index(simplex)]


def induced_sign(top: Simplex, face: Simplex) -> int:
    """Coefficient of face in the boundary of top."""
    missing = next(i for i, v in enumerate(top) if i >= len(face) or face[i] != v)
    return -1 if missing % 2 else 1


def _dual_graph(K: SimplicialComplex) -> Dict[Simplex, List[int]]:
    return cofaces(K, K.n - 1) if K.n >= 1 else {}


def validate_closed_manifold(K: SimplicialComplex) -> ManifoldCertificate:
    """Closed-pseudomanifold, connectivity and orientability report.

    Failures are listed in the certificate; nothing is raised.
    """
    failures: List[Failure] = []
    ridge_cofaces = _dual_graph(K)

    if K.n == 0:
        closed = True
    else:
        closed = True
        for ridge, tops in ridge_cofaces.items():
            if len(tops) != 2:
                closed = False
                failures.append(Failure(ridge, f"lies in {len(tops)} top simplices, expected 2"))

    adjacency: Dict[int, List[Tuple[int, Simplex]]] = {j: [] for j in range(K.count(K.n))}
    for ridge, tops in ridge_cofaces.items():
        if len(tops) == 2:
            a, b = tops
            adjacency[a].append((b, ridge))
            adjacency[b].append((a, ridge))

    connected = len(connected_components(K)) == 1
    if not connected:
        failures.append(Failure(K.top[0], "top simplices do not form one strongly connected piece"))

    # orientation propagation from the lexicographically first top simplex of each piece
    signs: List[int] = [0] * K.count(K.n)
    orientable = True
    for root in range(len(signs)):
        if signs[root]:
            continue
        signs[root] = 1
        queue = deque([root])
        while queue:
            j = queue.popleft()
            tau = K.top[j]
            for other, ridge in adjacency[j]:
                wanted = -signs[j] * induced_sign(tau, ridge) * induced_sign(K.top[other], ridge)
                if not signs[other]:
                    signs[other] = wanted
                    queue.append(other)
                elif signs[other] != wanted and orientable:
                    orientable = False
                    failures.append(Failure(ridge, "orientation contradiction across this face"))
    if K.n == 0:
        orientable = True

    cert = ManifoldCertificate(
        is_closed_pseudomanifold=closed,
        is_connected=connected,
        orientable=orientable,
        orientation=tuple(signs) if orientable else None,
        failures=tuple(failures),
    )
    logger.info(
        "certificate: closed=%s connected=%s orientable=%s (%d failures)",
        closed, connected, orientable, len(failures),
    )
    return cert


def require_closed(cert: ManifoldCertificate, need_connected: bool = True) -> None:
    if not cert.is_closed_pseudomanifold:
        first = cert.failures[0] if cert.failures else None
        detail = f": {first.simplex} {first.reason}" if first else ""
        logger.error("complex is not a closed pseudomanifold%s", detail)
        raise NotClosed(f"complex is not a closed pseudomanifold{detail}")
    if need_connected and not cert.is_connected:
        logger.error("complex is not connected")
        raise NotClosed("complex is not connected")


def require_ring(cert: ManifoldCertificate, ring: Ring) -> None:
    if ring is Ring.INTEGERS and not cert.orientable:
        logger.error("integer coefficients requested on a non-orientable complex")
        raise NotOrientable("integer coefficients need an orientable complex; use Z2")


# ----- fundamental class -----

@dataclass(frozen=True)
class FundamentalClass:
    ring: Ring
    chain: Tuple[int, ...]

    def as_sparse(self, K: SimplicialComplex) -> SparseChain:
        return {s: c for s, c in zip(K.top, self.chain) if c}


def fundamental_class(
    K: SimplicialComplex,
    cert: ManifoldCertificate,
    ring: "Ring | str" = Ring.INTEGERS,
) -> FundamentalClass:
    """Coherently signed sum of top simplices (all ones over Z2).

    Raises:
        NotClosed: not a connected closed pseudomanifold.
        NotOrientable: Z requested on a non-orientable complex.
    """
    ring = Ring.parse(ring)
    require_closed(cert)
    require_ring(cert, ring)
    if ring is Ring.INTEGERS:
        chain = tuple(cert.orientation or ())
    else:
        chain = tuple(1 for _ in K.top)
    fc = FundamentalClass(ring, chain)
    if boundary_chain(fc.as_sparse(K), ring):
        raise ComplexCoreError("fundamental chain is not a cycle")
    return fc


# ----- barycentric subdivision -----

@dataclass(frozen=True)
class Subdivision:
    complex: SimplicialComplex
    provenance: Tuple[Simplex, ...]  # new vertex -> simplex of the original complex
    ids: Dict[Simplex, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.ids:
            object.__setattr__(self, "ids", {s: i for i, s in enumerate(self.provenance)})

    def vertex_of(self, simplex: Sequence[int]) -> int:
        return self.ids[tuple(simplex)]


def flag_of(ordering: Sequence[int], ids: Dict[Simplex, int]) -> Simplex:
    """Subdivision simplex spanned by the barycenters of the prefixes of ordering."""
    return tuple(ids[tuple(sorted(ordering[: i + 1]))] for i in range(len(ordering)))


def barycentric_subdivision(K: SimplicialComplex) -> Subdivision:
    """One new vertex per simplex; top simplices are the full flags.

    New vertices are numbered by (dimension, canonical order), so vertex v of K
    keeps index v and every flag is already an increasing tuple.
    """
    provenance = tuple(s for level in K.simplices for s in level)
    ids = {s: i for i, s in enumerate(provenance)}
    flags = [flag_of(order, ids) for tau in K.top for order in permutations(tau)]
    sub = build_complex(flags)
    logger.debug("subdivision f-vector %s", f_vector(sub))
    return Subdivision(complex=sub, provenance=provenance, ids=ids)


def subdivide_chain(sub: Subdivision, chain: SparseChain, ring: Ring = Ring.INTEGERS) -> SparseChain:
    """Image of a chain of the original complex under the subdivision chain map."""
    ids = sub.ids
    out: SparseChain = {}
    for s, c in chain.items():
        for order in permutations(s):
            key = flag_of(order, ids)
            val = ring.reduce(out.get(key, 0) + c * permutation_sign(order))
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def complex_summary(K: SimplicialComplex, cert: Optional[ManifoldCertificate] = None) -> Dict[str, Any]:
    steps: List[Dict[str, Any]] = [
        {"step": "Face closure", "data": {"f_vector": list(f_vector(K)), "closed_under_faces": check_face_closure(K)}},
    ]
    result: Dict[str, Any] = {
        "dimension": K.n,
        "f_vector": list(f_vector(K)),
        "euler_characteristic": euler_characteristic(K),
        "steps": steps,
    }
    if cert is not None:
        result.update(
            closed_pseudomanifold=cert.is_closed_pseudomanifold,
            connected=cert.is_connected,
            orientable=cert.orientable,
            failures=[{"simplex": list(f.simplex), "reason": f.reason} for f in cert.failures],
        )
        steps.append({"step": "Orientation propagation", "data": {"orientable": cert.orientable}})
    return result
