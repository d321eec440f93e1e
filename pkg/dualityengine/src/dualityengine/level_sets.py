# level_sets.py
"""Level curves and level surfaces of the circle-valued map of a 1-cocycle.

An integral 1-cocycle φ lifts on every simplex (a < b < c ...) to the affine
function with f(a) = 0 and f(v) = φ(a, v). The level set at t is the union,
over integers L, of the sets f = t + L. Everything is kept combinatorial:
a crossing point is (edge index, local index j) where j counts the levels
crossed along the edge from its lower vertex, and its position on the edge is
(t + j) / φ(edge). Over Z2 there is no lift; an edge with φ = 1 is crossed
once and every simplex holds at most one piece.

Level sets are cut from the normalized cocycle by default: φ minus the
coboundary of its lift along a breadth-first spanning tree.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from .chain_algebra import Chain, Cochain, NotACycle, homology, is_cocycle, is_cycle
from .complex_core import (
    ManifoldCertificate,
    Ring,
    Simplex,
    SimplicialComplex,
    boundary_chain,
    faces,
    induced_sign,
    permutation_sign,
    require_closed,
    require_ring,
    validate_closed_manifold,
)

logger = logging.getLogger(__name__)

DEFAULT_LEVEL = Fraction(1, 2)


class LevelSetError(Exception):
    pass


class NotACocycle(LevelSetError):
    pass


class NotASurface(LevelSetError):
    pass


class NotRegularValue(LevelSetError):
    pass


class FaceMatchingFailure(LevelSetError):
    pass


CrossingPoint = Tuple[int, int]  # (edge index, local level index)
Label = Tuple[Simplex, Fraction]  # (edge or vertex, position from its lower vertex)


def as_level(value: Union[Fraction, int, str]) -> Fraction:
    """Parse a level value; floats are refused to keep everything exact.

    Raises:
        NotRegularValue: value outside (0, 1) or not exact.
    """
    if isinstance(value, float):
        raise NotRegularValue(f"level {value!r} must be given exactly, e.g. 1/2")
    try:
        level = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise NotRegularValue(f"cannot read level {value!r}") from exc
    if isinstance(value, str) and ("." in value or "e" in value.lower()):
        raise NotRegularValue(f"level {value!r} must be a fraction p/q")
    if not 0 < level < 1:
        logger.error("level %s is not in (0, 1)", level)
        raise NotRegularValue(f"level {level} is not a regular value; pick t in (0, 1)")
    return level


def _check_cocycle(K: SimplicialComplex, phi: Cochain) -> None:
    if phi.degree != 1:
        raise NotACocycle(f"expected a 1-cochain, got degree {phi.degree}")
    if not is_cocycle(K, phi):
        logger.error("the given 1-cochain is not a cocycle")
        raise NotACocycle("the given 1-cochain is not a cocycle")


def _edge_value(K: SimplicialComplex, phi: Cochain, u: int, v: int) -> int:
    """φ on the oriented edge u -> v."""
    if u < v:
        return phi.values[K.index((u, v))]
    return -phi.values[K.index((v, u))]


def _lift(K: SimplicialComplex, phi: Cochain, simplex: Simplex) -> Dict[int, int]:
    a = simplex[0]
    if phi.ring is Ring.MOD2:
        return {v: (phi.values[K.index((a, v))] if v != a else 0) % 2 for v in simplex}
    return {v: (_edge_value(K, phi, a, v) if v != a else 0) for v in simplex}


# ----- potentials and normalization -----

@dataclass(frozen=True)
class VertexPotential:
    root: int
    tree: Tuple[Tuple[int, int], ...]  # (parent, child) in breadth-first order
    values: Tuple[Fraction, ...]  # circle value in [0, 1) per vertex
    lift: Tuple[int, ...]  # integral lift g along the tree, g(root) = 0


def _neighbors(K: SimplicialComplex) -> Dict[int, List[int]]:
    nbrs: Dict[int, List[int]] = {v: [] for v in range(K.vertex_count)}
    for u, v in K.simplices[1] if K.n >= 1 else ():
        nbrs[u].append(v)
        nbrs[v].append(u)
    return {v: sorted(ns) for v, ns in nbrs.items()}


def _tree_lift(K: SimplicialComplex, phi: Cochain) -> VertexPotential:
    """Breadth-first spanning forest, one tree per component, rooted at its lowest vertex."""
    nbrs = _neighbors(K)
    lift: Dict[int, int] = {}
    tree: List[Tuple[int, int]] = []
    for root in range(K.vertex_count):
        if root in lift:
            continue
        lift[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in nbrs[u]:
                if v not in lift:
                    lift[v] = phi.ring.reduce(lift[u] + _edge_value(K, phi, u, v))
                    tree.append((u, v))
                    queue.append(v)
    values = tuple(Fraction(lift[v]) % 1 for v in range(K.vertex_count))
    return VertexPotential(0, tuple(tree), values, tuple(lift[v] for v in range(K.vertex_count)))


def integrate_cocycle(K: SimplicialComplex, phi: Cochain) -> VertexPotential:
    """Integrate φ along a breadth-first spanning tree from vertex 0.

    Raises:
        NotASurface: K is not 2-dimensional.
        NotACocycle: δφ ≠ 0.
    """
    if K.n != 2:
        raise NotASurface(f"expected a surface, got dimension {K.n}")
    _check_cocycle(K, phi)
    potential = _tree_lift(K, phi)
    logger.debug("spanning tree with %d edges from vertex %d", len(potential.tree), potential.root)
    return potential


def shift_cocycle(K: SimplicialComplex, phi: Cochain, g: Sequence[int]) -> Cochain:
    """φ + δg for an integer value g[v] per vertex."""
    if len(g) != K.vertex_count:
        raise LevelSetError(f"expected {K.vertex_count} vertex values, got {len(g)}")
    values = list(phi.values)
    for i, (u, v) in enumerate(K.simplices[1]):
        values[i] = phi.ring.reduce(values[i] + g[v] - g[u])
    return Cochain(1, phi.ring, tuple(values))


def normalize_cocycle(K: SimplicialComplex, phi: Cochain) -> Tuple[Cochain, Tuple[int, ...]]:
    """φ - δg with g the tree lift, so the result vanishes on the spanning tree."""
    _check_cocycle(K, phi)
    g = _tree_lift(K, phi).lift
    return shift_cocycle(K, phi, [-x for x in g]), g


def _prepared(
    K: SimplicialComplex, phi: Cochain, normalize: bool
) -> Tuple[Cochain, Tuple[Tuple[int, int], ...], Tuple[int, ...]]:
    """The cocycle a level set is cut from, with the tree and the potential g taken off it."""
    if not normalize:
        return phi, (), ()
    potential = _tree_lift(K, phi)
    logger.debug("normalizing along a tree of %d edges", len(potential.tree))
    return shift_cocycle(K, phi, [-x for x in potential.lift]), potential.tree, potential.lift


def dual_cocycle(
    K: SimplicialComplex,
    path: Sequence[Sequence[int]],
    cert: Optional[ManifoldCertificate] = None,
    ring: "Ring | str" = Ring.INTEGERS,
) -> Cochain:
    """The (n-1)-cocycle counting crossings of a closed loop of top simplices.

    Consecutive simplices (cyclically) must share a face e_i; the loop crosses
    e_i from T_i to T_{i+1} and contributes o(T_i)·[T_i : e_i] to it.

    Raises:
        LevelSetError: consecutive simplices do not share a face.
        NotACocycle: the result is not a cocycle.
    """
    ring = Ring.parse(ring)
    cert = cert or validate_closed_manifold(K)
    require_closed(cert)
    require_ring(cert, ring)
    tops = [tuple(sorted(t)) for t in path]
    acc: Dict[Simplex, int] = {}
    for i, tau in enumerate(tops):
        nxt = tops[(i + 1) % len(tops)]
        shared = tuple(v for v in tau if v in nxt)
        if len(shared) != K.n:
            raise LevelSetError(f"{tau} and {nxt} do not share a face")
        if ring is Ring.INTEGERS:
            step = cert.sign(K, tau) * induced_sign(tau, shared)
        else:
            step = 1
        acc[shared] = ring.reduce(acc.get(shared, 0) + step)
    phi = Cochain.from_simplices(K, K.n - 1, acc, ring)
    if not is_cocycle(K, phi):
        raise NotACocycle("the loop does not close up into a cocycle")
    return phi


# ----- level curves -----

@dataclass(frozen=True)
class Arc:
    triangle: Simplex
    level: int  # L, the arc lies on f = t + L in the triangle's lift
    ends: Tuple[CrossingPoint, CrossingPoint]


@dataclass(frozen=True)
class NormalCurve:
    complex: SimplicialComplex = field(repr=False, compare=False)
    ring: Ring
    t: Fraction
    edge_weights: Dict[Simplex, int]
    crossing_signs: Dict[Simplex, int]
    arcs: Tuple[Arc, ...]
    components: Tuple[Tuple[CrossingPoint, ...], ...]
    tree: Tuple[Tuple[int, int], ...] = ()
    shift: Tuple[int, ...] = ()

    @property
    def normalized(self) -> bool:
        return bool(self.shift)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def points(self) -> Tuple[CrossingPoint, ...]:
        return tuple(sorted({p for arc in self.arcs for p in arc.ends}))

    def position(self, point: CrossingPoint) -> Fraction:
        """Position of a crossing point along its edge, measured from the lower vertex."""
        edge = self.complex.simplices[1][point[0]]
        if self.ring is Ring.MOD2:
            return self.t
        w = self.edge_weights[edge] * self.crossing_signs[edge]
        return (self.t + point[1]) / w


def _crossing_edges(lift: Dict[int, int], simplex: Simplex, level: int) -> List[Tuple[int, int]]:
    return [
        (u, v)
        for u, v in combinations(simplex, 2)
        if min(lift[u], lift[v]) <= level < max(lift[u], lift[v])
    ]


def _levels(lift: Dict[int, int]) -> range:
    return range(min(lift.values()), max(lift.values()))


def _pieces(
    K: SimplicialComplex, phi: Cochain, simplex: Simplex
) -> List[Tuple[int, Tuple[CrossingPoint, ...], Tuple[int, ...]]]:
    """(level L, crossing points, vertices below) for each level piece in a simplex."""
    lift = _lift(K, phi, simplex)
    out = []
    for L in _levels(lift):
        points = tuple(
            (K.index((u, v)), L - lift[u] if phi.ring is Ring.INTEGERS else 0)
            for u, v in _crossing_edges(lift, simplex, L)
        )
        below = tuple(v for v in simplex if lift[v] <= L)
        out.append((L, points, below))
    return out


def _walk_components(points: Sequence[CrossingPoint], arcs: Sequence[Arc]) -> Tuple[Tuple[CrossingPoint, ...], ...]:
    incident: Dict[CrossingPoint, List[int]] = {p: [] for p in points}
    for i, arc in enumerate(arcs):
        for p in arc.ends:
            incident[p].append(i)
    for p, arc_ids in incident.items():
        if len(arc_ids) != 2:
            logger.error("crossing point %s meets %d arcs", p, len(arc_ids))
            raise FaceMatchingFailure(f"crossing point {p} meets {len(arc_ids)} arcs, expected 2")
    seen: set = set()
    components = []
    for start in sorted(incident):
        if start in seen:
            continue
        seq = [start]
        seen.add(start)
        arc_id = incident[start][0]
        a, b = arcs[arc_id].ends
        cur = b if a == start else a
        while cur != start:
            seq.append(cur)
            seen.add(cur)
            arc_id = next(i for i in incident[cur] if i != arc_id)
            a, b = arcs[arc_id].ends
            cur = b if a == cur else a
        components.append(tuple(seq))
    return tuple(components)


def level_curve(
    K: SimplicialComplex,
    phi: Cochain,
    t: Union[Fraction, int, str] = DEFAULT_LEVEL,
    normalize: bool = True,
    cert: Optional[ManifoldCertificate] = None,
) -> NormalCurve:
    """Normal curve f = t (mod 1) on a closed surface.

    φ is first replaced by φ - δg, g its lift along a breadth-first spanning
    tree, so that the curve avoids the tree. Pass normalize=False to cut the
    cocycle exactly as given.

    Raises:
        NotASurface: K is not a closed surface.
        NotACocycle: δφ ≠ 0.
        NotRegularValue: t outside (0, 1).
        FaceMatchingFailure: arcs do not close up.
    """
    level = as_level(t)
    if K.n != 2:
        raise NotASurface(f"level curves need a surface, got dimension {K.n}")
    require_closed(cert or validate_closed_manifold(K), need_connected=False)
    _check_cocycle(K, phi)
    phi, tree, shift = _prepared(K, phi, normalize)

    weights: Dict[Simplex, int] = {}
    signs: Dict[Simplex, int] = {}
    for e, value in zip(K.simplices[1], phi.values):
        if value:
            weights[e] = abs(value)
            signs[e] = 1 if value > 0 else -1

    arcs: List[Arc] = []
    for tri in K.top:
        for L, points, _ in _pieces(K, phi, tri):
            if len(points) != 2:
                raise FaceMatchingFailure(f"level {L} meets {len(points)} edges of {tri}")
            arcs.append(Arc(tri, L, (points[0], points[1])))
    points = sorted({p for arc in arcs for p in arc.ends})
    expected = sum(weights.values())
    if len(points) != expected:
        raise FaceMatchingFailure(f"{len(points)} crossing points, expected {expected}")
    components = _walk_components(points, arcs)
    logger.info("level curve at t=%s: %d arcs, %d components", level, len(arcs), len(components))
    return NormalCurve(K, phi.ring, level, weights, signs, tuple(arcs), components, tree, shift)


def intersection_number(curve: NormalCurve, z: Chain) -> int:
    """Signed (or mod 2) count of crossings of the curve with the edges of z.

    Raises:
        NotACycle: z is not a 1-cycle.
    """
    K = curve.complex
    if z.degree != 1 or not is_cycle(K, z):
        logger.error("intersection with a chain that is not a 1-cycle")
        raise NotACycle("intersection numbers need a 1-cycle")
    crossings: Dict[int, int] = {}
    for edge_index, _ in curve.points:
        crossings[edge_index] = crossings.get(edge_index, 0) + 1
    total = 0
    for edge_index, count in crossings.items():
        edge = K.simplices[1][edge_index]
        total += z.values[edge_index] * curve.crossing_signs[edge] * count
    return curve.ring.reduce(total)


# ----- the curve as a chain, and deformation between levels -----

Bary = Tuple[Fraction, Fraction, Fraction]


def _det3(rows: Sequence[Bary]) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _oriented(labels: Sequence[Label], coeff: int) -> Tuple[Tuple[Label, ...], int]:
    return tuple(sorted(labels)), coeff * permutation_sign(labels)


def _add(chain: Dict[Tuple[Label, ...], int], key: Tuple[Label, ...], value: int) -> None:
    new = chain.get(key, 0) + value
    if new:
        chain[key] = new
    else:
        chain.pop(key, None)


class _Triangle:
    """Crossing-point geometry inside one triangle at a given level value."""

    def __init__(self, K: SimplicialComplex, phi: Cochain, tri: Simplex, orientation: int):
        self.K = K
        self.phi = phi
        self.tri = tri
        self.o = orientation
        self.lift = _lift(K, phi, tri)

    def point(self, u: int, v: int, L: int, t: Fraction) -> Tuple[Label, Bary]:
        j = L - self.lift[u]
        w = self.lift[v] - self.lift[u]
        s = (t + j) / w
        bary = tuple(
            (1 - s) if x == u else s if x == v else Fraction(0) for x in self.tri
        )
        return ((u, v), s), bary  # type: ignore[return-value]

    def lowest(self) -> Bary:
        low = min(self.tri, key=lambda x: (self.lift[x], x))
        return tuple(Fraction(int(x == low)) for x in self.tri)  # type: ignore[return-value]

    def positive(self, pts: Sequence[Tuple[Label, Bary]]) -> Tuple[Tuple[Label, ...], int]:
        coeff = self.o * _sign(_det3([b for _, b in pts]))
        return _oriented([lab for lab, _ in pts], coeff)


def _orientation(K: SimplicialComplex, cert: Optional[ManifoldCertificate]) -> Tuple[int, ...]:
    cert = cert or validate_closed_manifold(K)
    require_closed(cert, need_connected=False)
    require_ring(cert, Ring.INTEGERS)
    if cert.orientation is None:
        raise LevelSetError("no orientation recorded for an orientable complex")
    return cert.orientation


def curve_chain(
    K: SimplicialComplex,
    phi: Cochain,
    t: Union[Fraction, int, str] = DEFAULT_LEVEL,
    cert: Optional[ManifoldCertificate] = None,
) -> Dict[Tuple[Label, ...], int]:
    """The level curve as an oriented 1-chain on its crossing-point labels.

    Each arc is oriented so that the side where f is below the level lies to
    its left with respect to the orientation of the surface.
    """
    level = as_level(t)
    if phi.ring is not Ring.INTEGERS:
        raise LevelSetError("oriented level chains need an integral cocycle")
    orientation = _orientation(K, cert)
    chain: Dict[Tuple[Label, ...], int] = {}
    for idx, tri in enumerate(K.top):
        geo = _Triangle(K, phi, tri, orientation[idx])
        for L in _levels(geo.lift):
            (p, pb), (q, qb) = (geo.point(u, v, L, level) for u, v in _crossing_edges(geo.lift, tri, L))
            key, coeff = _oriented([p, q], geo.o * _sign(_det3([pb, qb, geo.lowest()])))
            _add(chain, key, coeff)
    return chain


@dataclass(frozen=True)
class CoboundingChain:
    t0: Fraction
    t1: Fraction
    chain: Dict[Tuple[Label, ...], int]
    source: Dict[Tuple[Label, ...], int]
    target: Dict[Tuple[Label, ...], int]
    verified: bool
    intersections_agree: bool = True
    shift: Tuple[int, ...] = ()  # g, when the target is the curve of φ + δg

    @property
    def is_zero(self) -> bool:
        return not self.chain

    def boundary(self) -> Dict[Tuple[Label, ...], int]:
        return boundary_chain(self.chain)  # type: ignore[arg-type]


def _bounds(
    chain: Dict[Tuple[Label, ...], int],
    source: Dict[Tuple[Label, ...], int],
    target: Dict[Tuple[Label, ...], int],
) -> bool:
    expected = dict(target)
    for key, value in source.items():
        _add(expected, key, -value)
    return boundary_chain(chain) == expected  # type: ignore[arg-type]


def _same_intersections(K: SimplicialComplex, first: NormalCurve, second: NormalCurve) -> bool:
    basis = homology(K, 1, Ring.INTEGERS)
    return all(
        intersection_number(first, basis.generator_chain(i)) == intersection_number(second, basis.generator_chain(i))
        for i in range(basis.rank)
    )


def deform_level(
    K: SimplicialComplex,
    phi: Cochain,
    t0: Union[Fraction, int, str],
    t1: Union[Fraction, int, str],
    cert: Optional[ManifoldCertificate] = None,
    normalize: bool = True,
) -> CoboundingChain:
    """2-chain W swept between the level curves at t0 and t1, with ∂W = L(t1) - L(t0).

    W is assembled strip by strip: inside a triangle the region between
    f = t0 + L and f = t1 + L is a trapezoid cut along one diagonal. Both
    curves come from the normalized cocycle unless normalize=False.

    Raises:
        NotRegularValue: a level outside (0, 1).
        LevelSetError: Z2 cocycle or a failed boundary check.
    """
    a, b = as_level(t0), as_level(t1)
    if K.n != 2:
        raise NotASurface(f"deformation needs a surface, got dimension {K.n}")
    cert = cert or validate_closed_manifold(K)
    _check_cocycle(K, phi)
    if phi.ring is not Ring.INTEGERS:
        raise LevelSetError("deformation needs an integral cocycle")
    orientation = _orientation(K, cert)
    phi, _, _ = _prepared(K, phi, normalize)
    source = curve_chain(K, phi, a, cert)
    target = curve_chain(K, phi, b, cert)

    chain: Dict[Tuple[Label, ...], int] = {}
    if a != b:
        lo, hi = min(a, b), max(a, b)
        direction = 1 if b > a else -1
        for idx, tri in enumerate(K.top):
            geo = _Triangle(K, phi, tri, orientation[idx])
            for L in _levels(geo.lift):
                (u1, v1), (u2, v2) = _crossing_edges(geo.lift, tri, L)
                p0, q0 = geo.point(u1, v1, L, lo), geo.point(u2, v2, L, lo)
                p1, q1 = geo.point(u1, v1, L, hi), geo.point(u2, v2, L, hi)
                for piece in ((p0, q0, q1), (p0, q1, p1)):
                    key, coeff = geo.positive(piece)
                    _add(chain, key, direction * coeff)

    verified = _bounds(chain, source, target)
    if not verified:
        logger.error("cobounding chain between t=%s and t=%s fails the boundary check", a, b)
        raise LevelSetError(f"boundary of the swept chain is not L({b}) - L({a})")

    first = level_curve(K, phi, a, normalize=False, cert=cert)
    second = level_curve(K, phi, b, normalize=False, cert=cert)
    agree = _same_intersections(K, first, second)
    logger.info("deformation %s -> %s: %d triangles, intersections agree: %s", a, b, len(chain), agree)
    return CoboundingChain(a, b, chain, source, target, verified, agree)


# a point of a triangle: barycentric coordinates, then the values of f and f + λ_v
_Corner = Tuple[Bary, Fraction, Fraction]


def _mix(p: _Corner, q: _Corner, s: Fraction) -> _Corner:
    bary = tuple(x + s * (y - x) for x, y in zip(p[0], q[0]))
    return bary, p[1] + s * (q[1] - p[1]), p[2] + s * (q[2] - p[2])  # type: ignore[return-value]


def _clip(polygon: Sequence[_Corner], measure: Callable[[_Corner], Fraction]) -> List[_Corner]:
    """The part of a convex polygon where measure >= 0."""
    out: List[_Corner] = []
    for i, p in enumerate(polygon):
        q = polygon[(i + 1) % len(polygon)]
        dp, dq = measure(p), measure(q)
        if dp >= 0:
            out.append(p)
        if dp * dq < 0:
            out.append(_mix(p, q, dp / (dp - dq)))
    return out


def _distinct(points: Sequence[Bary]) -> List[Bary]:
    out: List[Bary] = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _corner_label(tri: Simplex, bary: Bary) -> Label:
    support = [(x, b) for x, b in zip(tri, bary) if b]
    if len(support) == 1:
        return (support[0][0],), Fraction(0)
    if len(support) == 2:
        (u, _), (v, s) = support
        return (u, v), s
    raise FaceMatchingFailure(f"a corner of a swept region lies inside {tri}")


def _sweep_vertex(
    K: SimplicialComplex, phi: Cochain, v: int, level: Fraction, orientation: Sequence[int]
) -> Dict[Tuple[Label, ...], int]:
    """2-chain bounded by L(φ + δe_v) - L(φ).

    In each triangle at v it is minus the sum over c = t + L of the regions
    f <= c <= f + λ_v, where f is the lift of φ and λ_v the barycentric
    coordinate of v.
    """
    chain: Dict[Tuple[Label, ...], int] = {}
    for idx, tri in enumerate(K.top):
        if v not in tri:
            continue
        lift = _lift(K, phi, tri)
        corners = [
            (tuple(Fraction(int(y == x)) for y in tri), Fraction(lift[x]), Fraction(lift[x] + (x == v)))
            for x in tri
        ]
        for L in range(min(lift.values()), max(lift[x] + (x == v) for x in tri)):
            c = level + L
            region = _clip(corners, lambda p, c=c: c - p[1])
            region = _clip(region, lambda p, c=c: p[2] - c)
            points = _distinct([p[0] for p in region])
            for i in range(1, len(points) - 1):
                piece = (points[0], points[i], points[i + 1])
                coeff = orientation[idx] * _sign(_det3(piece))
                if coeff:
                    key, coeff = _oriented([_corner_label(tri, b) for b in piece], coeff)
                    _add(chain, key, -coeff)
    return chain


def deform_cocycle(
    K: SimplicialComplex,
    phi: Cochain,
    g: Sequence[int],
    t: Union[Fraction, int, str] = DEFAULT_LEVEL,
    cert: Optional[ManifoldCertificate] = None,
) -> CoboundingChain:
    """2-chain W with ∂W = L(φ + δg) - L(φ), both curves at the same level t.

    g is applied one unit at one vertex at a time. Both curves are cut from
    the cocycles as given, so a normalizing g (minus the tree lift) carries
    the raw curve onto the normalized one.

    Raises:
        NotRegularValue: t outside (0, 1).
        LevelSetError: Z2 cocycle, one value per vertex missing, or a failed boundary check.
    """
    level = as_level(t)
    if K.n != 2:
        raise NotASurface(f"coboundary moves need a surface, got dimension {K.n}")
    cert = cert or validate_closed_manifold(K)
    _check_cocycle(K, phi)
    if phi.ring is not Ring.INTEGERS:
        raise LevelSetError("coboundary moves need an integral cocycle")
    orientation = _orientation(K, cert)
    moved = shift_cocycle(K, phi, g)

    chain: Dict[Tuple[Label, ...], int] = {}
    current = phi
    for v, amount in enumerate(g):
        step = [int(x == v) * (1 if amount > 0 else -1) for x in range(K.vertex_count)]
        for _ in range(abs(amount)):
            nxt = shift_cocycle(K, current, step)
            # a downward move is the upward move from nxt, reversed
            base, sign = (current, 1) if amount > 0 else (nxt, -1)
            for key, value in _sweep_vertex(K, base, v, level, orientation).items():
                _add(chain, key, sign * value)
            current = nxt

    source = curve_chain(K, phi, level, cert)
    target = curve_chain(K, moved, level, cert)
    verified = _bounds(chain, source, target)
    if not verified:
        logger.error("cobounding chain for a coboundary move fails the boundary check")
        raise LevelSetError("boundary of the swept chain is not L(φ + δg) - L(φ)")

    first = level_curve(K, phi, level, normalize=False, cert=cert)
    second = level_curve(K, moved, level, normalize=False, cert=cert)
    agree = _same_intersections(K, first, second)
    logger.info("coboundary move over %d vertices: %d triangles", sum(1 for x in g if x), len(chain))
    return CoboundingChain(level, level, chain, source, target, verified, agree, tuple(g))


# ----- level surfaces in dimension 3 -----

@dataclass(frozen=True)
class Patch:
    tetrahedron: Simplex
    level: int
    kind: str  # "triangle" or "quad"
    below: Tuple[int, ...]  # vertices of the tetrahedron under the level
    corners: Tuple[CrossingPoint, ...]


@dataclass(frozen=True)
class NormalSurface:
    complex: SimplicialComplex = field(repr=False, compare=False)
    ring: Ring
    t: Fraction
    edge_weights: Dict[Simplex, int]
    crossing_signs: Dict[Simplex, int]
    patches: Tuple[Patch, ...]
    tree: Tuple[Tuple[int, int], ...] = ()
    shift: Tuple[int, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.patches

    @property
    def points(self) -> Tuple[CrossingPoint, ...]:
        return tuple(sorted({p for patch in self.patches for p in patch.corners}))

    def patch_types(self) -> Dict[Simplex, Dict[str, int]]:
        """Per tetrahedron: multiplicity of each normal piece, keyed by kind and the cut-off vertices."""
        out: Dict[Simplex, Dict[str, int]] = {}
        for patch in self.patches:
            side = patch.below if len(patch.below) <= 2 else tuple(v for v in patch.tetrahedron if v not in patch.below)
            key = f"{patch.kind}:{','.join(map(str, side))}"
            types = out.setdefault(patch.tetrahedron, {})
            types[key] = types.get(key, 0) + 1
        return out

    @property
    def triangle_count(self) -> int:
        return sum(1 for p in self.patches if p.kind == "triangle")

    @property
    def quad_count(self) -> int:
        return sum(1 for p in self.patches if p.kind == "quad")


def _face_arcs(K: SimplicialComplex, phi: Cochain, patch: Patch) -> Dict[Simplex, frozenset]:
    lift = _lift(K, phi, patch.tetrahedron)
    arcs: Dict[Simplex, frozenset] = {}
    for face in faces(patch.tetrahedron):
        ends = [
            (K.index((u, v)), patch.level - lift[u] if phi.ring is Ring.INTEGERS else 0)
            for u, v in _crossing_edges(lift, face, patch.level)
        ]
        if ends:
            arcs[face] = frozenset(ends)
    return arcs


def level_surface_3d(
    K: SimplicialComplex,
    phi: Cochain,
    t: Union[Fraction, int, str] = DEFAULT_LEVEL,
    normalize: bool = True,
    cert: Optional[ManifoldCertificate] = None,
) -> NormalSurface:
    """Normal surface f = t (mod 1) in a closed 3-dimensional pseudomanifold.

    Normalized along the spanning tree first, as for level curves, so an
    exact cocycle gives the empty surface.

    Raises:
        LevelSetError: K is not 3-dimensional.
        NotACocycle: δφ ≠ 0.
        NotRegularValue: t outside (0, 1).
        FaceMatchingFailure: pieces disagree on a shared triangle.
    """
    level = as_level(t)
    if K.n != 3:
        raise LevelSetError(f"level surfaces need dimension 3, got {K.n}")
    require_closed(cert or validate_closed_manifold(K), need_connected=False)
    _check_cocycle(K, phi)
    phi, tree, shift = _prepared(K, phi, normalize)

    weights: Dict[Simplex, int] = {}
    signs: Dict[Simplex, int] = {}
    for e, value in zip(K.simplices[1], phi.values):
        if value:
            weights[e] = abs(value)
            signs[e] = 1 if value > 0 else -1

    patches: List[Patch] = []
    face_arcs: Dict[Simplex, List[Tuple[Simplex, frozenset]]] = {}
    for tet in K.top:
        quad_sides = set()
        for L, points, below in _pieces(K, phi, tet):
            kind = "quad" if len(below) == 2 else "triangle"
            if kind == "quad":
                quad_sides.add(frozenset(below))
            patch = Patch(tet, L, kind, below, points)
            patches.append(patch)
            for face, arc in _face_arcs(K, phi, patch).items():
                face_arcs.setdefault(face, []).append((tet, arc))
        if len(quad_sides) > 1:
            raise FaceMatchingFailure(f"{tet} carries {len(quad_sides)} quadrilateral types")

    for face, entries in face_arcs.items():
        by_tet: Dict[Simplex, set] = {}
        for tet, arc in entries:
            by_tet.setdefault(tet, set()).add(arc)
        arc_sets = list(by_tet.values())
        if len(arc_sets) != 2 or arc_sets[0] != arc_sets[1]:
            logger.error("normal arcs disagree on face %s", face)
            raise FaceMatchingFailure(f"normal arcs disagree on face {face}")

    surface = NormalSurface(K, phi.ring, level, weights, signs, tuple(patches), tree, shift)
    logger.info(
        "level surface at t=%s: %d triangles, %d quads", level, surface.triangle_count, surface.quad_count
    )
    return surface


def surface_intersection_number(surface: NormalSurface, z: Chain) -> int:
    """Signed (or mod 2) count of crossings of the surface with the edges of z.

    Raises:
        NotACycle: z is not a 1-cycle.
    """
    K = surface.complex
    if z.degree != 1 or not is_cycle(K, z):
        raise NotACycle("intersection numbers need a 1-cycle")
    total = 0
    for edge_index, _ in surface.points:
        edge = K.simplices[1][edge_index]
        total += z.values[edge_index] * surface.crossing_signs[edge]
    return surface.ring.reduce(total)


# ----- geometry export -----

def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def export_curve(curve: NormalCurve) -> str:
    """Line-based geometry: crossing points on edges, then closed polylines."""
    K = curve.complex
    ids = {p: i for i, p in enumerate(curve.points)}
    lines = [f"# level curve t={_fmt(curve.t)} ring={curve.ring.value}", f"points {len(ids)}"]
    for p, i in ids.items():
        u, v = K.simplices[1][p[0]]
        lines.append(f"p {i} {K.labels[u]} {K.labels[v]} {_fmt(curve.position(p))}")
    lines.append(f"components {curve.component_count}")
    for c, comp in enumerate(curve.components):
        lines.append(f"c {c} " + " ".join(str(ids[p]) for p in comp))
    return "\n".join(lines) + "\n"


def export_surface(surface: NormalSurface) -> str:
    """Line-based geometry: crossing points on edges, then triangle and quad patches."""
    K = surface.complex
    ids = {p: i for i, p in enumerate(surface.points)}
    lines = [f"# level surface t={_fmt(surface.t)} ring={surface.ring.value}", f"points {len(ids)}"]
    for p, i in ids.items():
        u, v = K.simplices[1][p[0]]
        if surface.ring is Ring.MOD2:
            pos = surface.t
        else:
            pos = (surface.t + p[1]) / (surface.edge_weights[(u, v)] * surface.crossing_signs[(u, v)])
        lines.append(f"p {i} {K.labels[u]} {K.labels[v]} {_fmt(pos)}")
    lines.append(f"patches {len(surface.patches)}")
    for patch in surface.patches:
        corners = _cyclic_corners(K, patch)
        tag = "tri" if patch.kind == "triangle" else "quad"
        lines.append(f"{tag} " + " ".join(str(ids[p]) for p in corners))
    return "\n".join(lines) + "\n"


def _cyclic_corners(K: SimplicialComplex, patch: Patch) -> Tuple[CrossingPoint, ...]:
    """Quad corners in cyclic order: consecutive corners share a vertex of the tetrahedron."""
    if patch.kind != "quad":
        return patch.corners
    edges = {p: K.simplices[1][p[0]] for p in patch.corners}
    order = [patch.corners[0]]
    rest = list(patch.corners[1:])
    while rest:
        last = set(edges[order[-1]])
        nxt = next(p for p in rest if last & set(edges[p]))
        order.append(nxt)
        rest.remove(nxt)
    return tuple(order)


def _normalization_step(K: SimplicialComplex, tree: Sequence[Tuple[int, int]], shift: Sequence[int]) -> Dict[str, Any]:
    return {
        "step": "Normalization",
        "data": {
            "normalized": bool(shift),
            "tree": [[K.labels[u], K.labels[v]] for u, v in tree],
            "potential": {K.labels[v]: g for v, g in enumerate(shift) if g},
        },
    }


def level_report(curve: NormalCurve) -> Dict[str, Any]:
    return {
        "t": curve.t,
        "ring": curve.ring.value,
        "normalized": curve.normalized,
        "crossings": len(curve.points),
        "arcs": len(curve.arcs),
        "components": curve.component_count,
        "steps": [
            _normalization_step(curve.complex, curve.tree, curve.shift),
            {"step": "Edge crossings", "data": {"weights": [[list(e), w * curve.crossing_signs[e]] for e, w in sorted(curve.edge_weights.items())]}},
            {"step": "Closed components", "data": {"lengths": [len(c) for c in curve.components]}},
        ],
    }


def surface_report(surface: NormalSurface) -> Dict[str, Any]:
    return {
        "t": surface.t,
        "ring": surface.ring.value,
        "normalized": bool(surface.shift),
        "crossings": len(surface.points),
        "triangles": surface.triangle_count,
        "quads": surface.quad_count,
        "steps": [
            _normalization_step(surface.complex, surface.tree, surface.shift),
            {"step": "Normal pieces", "data": {"per_tetrahedron": {",".join(map(str, k)): v for k, v in sorted(surface.patch_types().items())}}},
            {"step": "Face matching", "data": {"matched": True}},
        ],
    }
