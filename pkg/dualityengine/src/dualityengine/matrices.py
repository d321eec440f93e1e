# matrices.py
"""Sparse exact integer matrices.

Entries are Python ints, so nothing overflows. A matrix may carry a modulus:
0 means plain integers, 2 means every entry is kept reduced into {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

SparseVector = Dict[int, int]


def reduce_value(value: int, modulus: int) -> int:
    return value % modulus if modulus else value


def add_scaled(dst: SparseVector, src: SparseVector, q: int, modulus: int = 0) -> None:
    """dst += q * src, in place, dropping entries that become zero."""
    if not q:
        return
    for idx, val in src.items():
        new = reduce_value(dst.get(idx, 0) + q * val, modulus)
        if new:
            dst[idx] = new
        else:
            dst.pop(idx, None)


def scale(src: SparseVector, q: int, modulus: int = 0) -> SparseVector:
    out: SparseVector = {}
    for idx, val in src.items():
        new = reduce_value(q * val, modulus)
        if new:
            out[idx] = new
    return out


def dot(a: SparseVector, b: SparseVector, modulus: int = 0) -> int:
    if len(a) > len(b):
        a, b = b, a
    total = sum(val * b.get(idx, 0) for idx, val in a.items())
    return reduce_value(total, modulus)


def sparse_from_dense(values: Sequence[int], modulus: int = 0) -> SparseVector:
    out: SparseVector = {}
    for idx, val in enumerate(values):
        val = reduce_value(int(val), modulus)
        if val:
            out[idx] = val
    return out


def dense_from_sparse(vec: SparseVector, size: int) -> Tuple[int, ...]:
    return tuple(vec.get(i, 0) for i in range(size))


@dataclass(frozen=True)
class IntegerMatrix:
    """rows x cols matrix stored as {row: {col: value}} with nonzero values only."""

    rows: int
    cols: int
    data: Dict[int, Dict[int, int]] = field(default_factory=dict)
    modulus: int = 0

    # ----- construction -----

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int = 0) -> "IntegerMatrix":
        return cls(rows, cols, {}, modulus)

    @classmethod
    def identity(cls, size: int, modulus: int = 0) -> "IntegerMatrix":
        return cls(size, size, {i: {i: 1} for i in range(size)}, modulus)

    @classmethod
    def from_dense(
        cls,
        dense: Sequence[Sequence[int]],
        cols: Optional[int] = None,
        modulus: int = 0,
    ) -> "IntegerMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        data: Dict[int, Dict[int, int]] = {}
        for i, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
            vec = sparse_from_dense(row, modulus)
            if vec:
                data[i] = vec
        return cls(rows, cols, data, modulus)

    @classmethod
    def from_entries(
        cls,
        rows: int,
        cols: int,
        entries: Iterable[Tuple[int, int, int]],
        modulus: int = 0,
    ) -> "IntegerMatrix":
        """Accumulate (row, col, value) triples; repeated positions add up."""
        data: Dict[int, Dict[int, int]] = {}
        for i, j, val in entries:
            row = data.setdefault(i, {})
            new = reduce_value(row.get(j, 0) + val, modulus)
            if new:
                row[j] = new
            else:
                row.pop(j, None)
        return cls(rows, cols, {i: r for i, r in data.items() if r}, modulus)

    @classmethod
    def from_columns(
        cls,
        rows: int,
        cols: int,
        columns: Dict[int, SparseVector],
        modulus: int = 0,
    ) -> "IntegerMatrix":
        return cls.from_entries(
            rows,
            cols,
            ((i, j, val) for j, col in columns.items() for i, val in col.items()),
            modulus,
        )

    # ----- access -----

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.data.values())

    def entry(self, i: int, j: int) -> int:
        return self.data.get(i, {}).get(j, 0)

    def row(self, i: int) -> SparseVector:
        return dict(self.data.get(i, {}))

    def entries(self) -> Iterator[Tuple[int, int, int]]:
        for i in sorted(self.data):
            row = self.data[i]
            for j in sorted(row):
                yield i, j, row[j]

    def columns(self) -> Dict[int, SparseVector]:
        cols: Dict[int, SparseVector] = {}
        for i, row in self.data.items():
            for j, val in row.items():
                cols.setdefault(j, {})[i] = val
        return cols

    def column(self, j: int) -> SparseVector:
        return {i: row[j] for i, row in self.data.items() if j in row}

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, val in self.entries():
            out[i][j] = val
        return out

    def is_zero(self) -> bool:
        return not any(self.data.values())

    # ----- algebra -----

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, self.columns(), self.modulus)

    def reduce(self, modulus: int) -> "IntegerMatrix":
        return IntegerMatrix.from_entries(self.rows, self.cols, self.entries(), modulus)

    def apply(self, vec: SparseVector) -> SparseVector:
        """Matrix times a sparse column vector."""
        out: SparseVector = {}
        for i, row in self.data.items():
            val = dot(row, vec, self.modulus)
            if val:
                out[i] = val
        return out

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        modulus = self.modulus or other.modulus
        data: Dict[int, Dict[int, int]] = {}
        for i, row in self.data.items():
            acc: SparseVector = {}
            for k, val in row.items():
                other_row = other.data.get(k)
                if other_row:
                    add_scaled(acc, other_row, val, modulus)
            if acc:
                data[i] = acc
        return IntegerMatrix(self.rows, other.cols, data, modulus)

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise ValueError(f"row mismatch: {self.rows} vs {other.rows}")
        entries = list(self.entries())
        entries.extend((i, j + self.cols, val) for i, j, val in other.entries())
        return IntegerMatrix.from_entries(self.rows, self.cols + other.cols, entries, self.modulus)

    def select_rows(self, indices: Sequence[int]) -> "IntegerMatrix":
        """Rows in the given order, renumbered 0..len(indices)-1."""
        data = {new: dict(self.data[old]) for new, old in enumerate(indices) if self.data.get(old)}
        return IntegerMatrix(len(indices), self.cols, data, self.modulus)


# ----- exact oracles backed by sympy -----

def to_domain_matrix(M: IntegerMatrix, domain: Any = None) -> DomainMatrix:
    dod = {i: {j: ZZ(v) for j, v in row.items()} for i, row in M.data.items() if row}
    dm = DomainMatrix.from_dod(dod, (M.rows, M.cols), ZZ)
    return dm.convert_to(domain) if domain is not None and domain != ZZ else dm


def rational_rank(M: IntegerMatrix) -> int:
    """Rank over the rationals (over GF(2) when the matrix is reduced mod 2)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    domain = GF(2) if M.modulus == 2 else QQ
    return to_domain_matrix(M, domain).rank()


def exact_det(M: IntegerMatrix) -> int:
    if M.rows != M.cols:
        raise ValueError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    if M.rows == 0:
        return 1
    return int(to_domain_matrix(M).det())
