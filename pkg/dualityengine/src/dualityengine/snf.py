# snf.py
"""Smith normal form with unimodular change-of-basis certificates.

U @ M @ V == D, where D carries the invariant factors d1 | d2 | ... on its
diagonal followed by zeros. The reduction always pivots on a nonzero entry of
least absolute value, lowest (row, col) first, and works on sparse rows so the
boundary matrices of subdivided 3-manifolds stay tractable. Over Z/2 the same
routine runs with every value reduced mod 2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Set, Tuple

from sympy.core.intfunc import igcdex

from .config import get_settings
from .matrices import IntegerMatrix, SparseVector, add_scaled, exact_det, reduce_value, scale

logger = logging.getLogger(__name__)


class SnfError(Exception):
    pass


@dataclass(frozen=True)
class SnfCertificate:
    rows: int
    cols: int
    diagonal: Tuple[int, ...]  # nonzero invariant factors, in divisibility order
    modulus: int = 0
    U: Optional[IntegerMatrix] = None
    V: Optional[IntegerMatrix] = None
    U_inv: Optional[IntegerMatrix] = None
    V_inv: Optional[IntegerMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def D(self) -> IntegerMatrix:
        return IntegerMatrix(
            self.rows,
            self.cols,
            {t: {t: d} for t, d in enumerate(self.diagonal)},
            self.modulus,
        )

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)

    @property
    def all_units(self) -> bool:
        return all(d == 1 for d in self.diagonal)


class _Reducer:
    """Working state of one reduction: the matrix plus the four transforms."""

    def __init__(self, M: IntegerMatrix, track_left: bool, track_right: bool):
        self.m = M.modulus
        self.work: Dict[int, Dict[int, int]] = {i: dict(r) for i, r in M.data.items() if r}
        self.col_index: Dict[int, Set[int]] = {}
        for i, row in self.work.items():
            for j in row:
                self.col_index.setdefault(j, set()).add(i)
        self.track_left = track_left
        self.track_right = track_right
        # U by rows, U^-1 by columns, V by columns, V^-1 by rows
        self.U = {i: {i: 1} for i in range(M.rows)} if track_left else {}
        self.U_inv = {i: {i: 1} for i in range(M.rows)} if track_left else {}
        self.V = {j: {j: 1} for j in range(M.cols)} if track_right else {}
        self.V_inv = {j: {j: 1} for j in range(M.cols)} if track_right else {}

    def _set(self, i: int, j: int, value: int) -> None:
        row = self.work.setdefault(i, {})
        if value:
            row[j] = value
            self.col_index.setdefault(j, set()).add(i)
        else:
            row.pop(j, None)
            rows = self.col_index.get(j)
            if rows is not None:
                rows.discard(i)
                if not rows:
                    del self.col_index[j]
            if not row:
                del self.work[i]

    def row_add(self, target: int, source: int, q: int) -> None:
        """row[target] += q * row[source]."""
        q = reduce_value(q, self.m)
        if not q:
            return
        for j, val in list(self.work.get(source, {}).items()):
            self._set(target, j, reduce_value(self.work.get(target, {}).get(j, 0) + q * val, self.m))
        if self.track_left:
            add_scaled(self.U[target], self.U[source], q, self.m)
            add_scaled(self.U_inv[source], self.U_inv[target], -q, self.m)

    def col_add(self, target: int, source: int, q: int) -> None:
        """col[target] += q * col[source]."""
        q = reduce_value(q, self.m)
        if not q:
            return
        for i in list(self.col_index.get(source, ())):
            val = self.work[i][source]
            self._set(i, target, reduce_value(self.work[i].get(target, 0) + q * val, self.m))
        if self.track_right:
            add_scaled(self.V[target], self.V[source], q, self.m)
            add_scaled(self.V_inv[source], self.V_inv[target], -q, self.m)

    def negate_row(self, i: int) -> None:
        if self.track_left:
            self.U[i] = scale(self.U[i], -1, self.m)
            self.U_inv[i] = scale(self.U_inv[i], -1, self.m)

    def pivot(self) -> Optional[Tuple[int, int, int]]:
        best: Optional[Tuple[int, int, int]] = None
        for i in sorted(self.work):
            row = self.work[i]
            for j in sorted(row):
                size = abs(row[j])
                if best is None or size < best[0]:
                    best = (size, i, j)
                    if size == 1:
                        return i, j, row[j]
        if best is None:
            return None
        _, i, j = best
        return i, j, self.work[i][j]

    def retire(self, i: int, j: int) -> None:
        del self.work[i]
        del self.col_index[j]

    def gcd_step(self, a_pos: Tuple[int, int], b_pos: Tuple[int, int], a: int, b: int) -> Tuple[int, int]:
        """diag(a, b) -> diag(g, ab/g) on two retired pivots via extended gcd."""
        (ia, ja), (ib, jb) = a_pos, b_pos
        s, t, g = igcdex(a, b)
        s, t, g = int(s), int(t), int(g)
        ag, bg = a // g, b // g
        if self.track_left:
            ua, ub = self.U[ia], self.U[ib]
            new_a = scale(ua, s)
            add_scaled(new_a, ub, t)
            new_b = scale(ua, -bg)
            add_scaled(new_b, ub, ag)
            self.U[ia], self.U[ib] = new_a, new_b
            ca, cb = self.U_inv[ia], self.U_inv[ib]
            inv_a = scale(ca, ag)
            add_scaled(inv_a, cb, bg)
            inv_b = scale(ca, -t)
            add_scaled(inv_b, cb, s)
            self.U_inv[ia], self.U_inv[ib] = inv_a, inv_b
        if self.track_right:
            va, vb = self.V[ja], self.V[jb]
            new_a = dict(va)
            add_scaled(new_a, vb, 1)
            new_b = scale(va, -t * bg)
            add_scaled(new_b, vb, s * ag)
            self.V[ja], self.V[jb] = new_a, new_b
            ra, rb = self.V_inv[ja], self.V_inv[jb]
            inv_a = scale(ra, s * ag)
            add_scaled(inv_a, rb, t * bg)
            inv_b = scale(ra, -1)
            add_scaled(inv_b, rb, 1)
            self.V_inv[ja], self.V_inv[jb] = inv_a, inv_b
        return g, a * b // g


def smith_normal_form(
    M: IntegerMatrix,
    track_left: bool = True,
    track_right: bool = True,
) -> SnfCertificate:
    """Smith normal form of M with optional left/right transforms and their inverses.

    Args:
        M: integer matrix; M.modulus == 2 reduces over the two-element field.
        track_left: keep U and U^-1.
        track_right: keep V and V^-1.

    Returns:
        SnfCertificate with U @ M @ V == D.
    """
    red = _Reducer(M, track_left, track_right)
    pivots: List[Tuple[int, int, int]] = []
    while True:
        found = red.pivot()
        if found is None:
            break
        i, j, p = found
        for r in sorted(red.col_index.get(j, ())):
            if r != i:
                red.row_add(r, i, -(red.work[r][j] // p) if not red.m else -red.work[r][j])
        if red.col_index.get(j) != {i}:
            continue
        for c in sorted(red.work[i]):
            if c != j:
                red.col_add(c, j, -(red.work[i][c] // p) if not red.m else -red.work[i][c])
        if len(red.work.get(i, {})) != 1:
            continue
        red.retire(i, j)
        if p < 0:
            red.negate_row(i)
            p = -p
        pivots.append((i, j, p))

    pivots.sort(key=lambda x: x[2])
    values = [p for _, _, p in pivots]
    if not M.modulus:
        first_big = next((t for t, d in enumerate(values) if d > 1), len(values))
        for t in range(first_big, len(values)):
            for s_ in range(t + 1, len(values)):
                a, b = values[t], values[s_]
                if b % a:
                    values[t], values[s_] = red.gcd_step(
                        pivots[t][:2], pivots[s_][:2], a, b
                    )

    row_order = [i for i, _, _ in pivots]
    used_rows = set(row_order)
    row_order += [i for i in range(M.rows) if i not in used_rows]
    col_order = [j for _, j, _ in pivots]
    used_cols = set(col_order)
    col_order += [j for j in range(M.cols) if j not in used_cols]

    U = U_inv = V = V_inv = None
    if track_left:
        U = IntegerMatrix(M.rows, M.rows, {t: red.U[i] for t, i in enumerate(row_order) if red.U[i]}, M.modulus)
        U_inv = IntegerMatrix.from_columns(
            M.rows, M.rows, {t: red.U_inv[i] for t, i in enumerate(row_order)}, M.modulus
        )
    if track_right:
        V = IntegerMatrix.from_columns(
            M.cols, M.cols, {t: red.V[j] for t, j in enumerate(col_order)}, M.modulus
        )
        V_inv = IntegerMatrix(M.cols, M.cols, {t: red.V_inv[j] for t, j in enumerate(col_order) if red.V_inv[j]}, M.modulus)

    logger.debug("snf %dx%d: rank %d, torsion %s", M.rows, M.cols, len(values), [d for d in values if d > 1])
    return SnfCertificate(M.rows, M.cols, tuple(values), M.modulus, U, V, U_inv, V_inv)


def snf_invariants(M: IntegerMatrix) -> Tuple[int, ...]:
    """Invariant factors only, without transforms."""
    return smith_normal_form(M, track_left=False, track_right=False).diagonal


def verify_snf(M: IntegerMatrix, cert: SnfCertificate, det_limit: Optional[int] = None) -> Dict[str, Any]:
    """Exact checks of a certificate; determinants only up to det_limit rows.

    det_limit defaults to the det_check_limit setting.
    """
    if det_limit is None:
        det_limit = get_settings().det_check_limit
    if cert.U is None or cert.V is None or cert.U_inv is None or cert.V_inv is None:
        raise SnfError("certificate was computed without transforms")
    product = (cert.U @ M) @ cert.V
    checks: Dict[str, Any] = {
        "UMV_equals_D": product.reduce(M.modulus) == cert.D.reduce(M.modulus),
        "divisibility": all(b % a == 0 for a, b in zip(cert.diagonal, cert.diagonal[1:])) if not M.modulus else True,
        "positive": all(d > 0 for d in cert.diagonal),
        "U_inverse": (cert.U @ cert.U_inv).reduce(M.modulus) == IntegerMatrix.identity(M.rows, M.modulus),
        "V_inverse": (cert.V @ cert.V_inv).reduce(M.modulus) == IntegerMatrix.identity(M.cols, M.modulus),
    }
    for name, T in (("det_U", cert.U), ("det_V", cert.V)):
        if T.rows <= det_limit:
            d = exact_det(T)
            checks[name] = reduce_value(d, M.modulus) if M.modulus else d
    checks["ok"] = all(
        v for k, v in checks.items() if not k.startswith("det_")
    ) and all(abs(v) == 1 for k, v in checks.items() if k.startswith("det_"))
    return checks
