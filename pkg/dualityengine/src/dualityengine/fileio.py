# fileio.py
"""Readers and writers for complex files, cocycle files and geometry exports.

Complex file: UTF-8, '#' starts a comment line, every other non-blank line
lists the vertex labels of one top simplex. Cocycle file: lines "u v value"
for the edges where the cochain is nonzero, labels as in the complex file;
a value may be a plain integer or, over Z2, 0/1.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .chain_algebra import Cochain, is_cocycle
from .complex_core import (
    ComplexCoreError,
    Ring,
    SimplicialComplex,
    build_complex,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class FileFormatError(Exception):
    """Malformed input file, with the path and line number when known."""

    def __init__(self, message: str, path: Optional[PathLike] = None, line: Optional[int] = None):
        if path is not None and line is not None:
            full = f"{path}:{line}: {message}"
        elif path is not None:
            full = f"{path}: {message}"
        else:
            full = message
        super().__init__(full)
        self.path = str(path) if path is not None else None
        self.line = line


class ComplexFormatError(FileFormatError):
    pass


class CocycleFormatError(FileFormatError):
    pass


def _content_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((number, line))
    return out


def parse_complex(text: str, path: Optional[PathLike] = None) -> SimplicialComplex:
    """Build a complex from complex-file text.

    Raises:
        ComplexFormatError: non-integer token, unequal arity, repeated vertex, no simplices.
    """
    tops: List[Tuple[int, ...]] = []
    arity: Optional[int] = None
    for number, line in _content_lines(text):
        try:
            simplex = tuple(int(tok) for tok in line.split())
        except ValueError:
            logger.error("bad vertex label in line %d", number)
            raise ComplexFormatError(f"expected integer vertex labels, got {line!r}", path, number) from None
        if arity is None:
            arity = len(simplex)
        elif len(simplex) != arity:
            raise ComplexFormatError(f"simplex has {len(simplex)} vertices, expected {arity}", path, number)
        if len(set(simplex)) != len(simplex):
            raise ComplexFormatError(f"simplex {simplex} repeats a vertex", path, number)
        if min(simplex) < 0:
            raise ComplexFormatError(f"negative vertex label in {simplex}", path, number)
        tops.append(simplex)
    if not tops:
        raise ComplexFormatError("no simplices found", path)
    try:
        return build_complex(tops)
    except ComplexCoreError as exc:
        raise ComplexFormatError(str(exc), path) from exc


def load_complex_file(path: PathLike) -> SimplicialComplex:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        logger.error("cannot read complex file %s", p)
        raise ComplexFormatError(f"cannot read file: {exc.strerror}", p) from exc
    return parse_complex(text, p)


def format_complex(K: SimplicialComplex, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.extend(" ".join(str(K.labels[v]) for v in s) for s in K.top)
    return "\n".join(lines) + "\n"


def write_complex_file(K: SimplicialComplex, path: PathLike, header: Sequence[str] = ()) -> None:
    Path(path).write_text(format_complex(K, header), encoding="utf-8")


def parse_cocycle(
    text: str,
    K: SimplicialComplex,
    ring: "Ring | str" = Ring.INTEGERS,
    path: Optional[PathLike] = None,
) -> Cochain:
    """Read a 1-cochain and check that it is a cocycle.

    Labels are the complex's input labels; an edge listed as "v u" with
    u < v contributes the negated value.

    Raises:
        CocycleFormatError: malformed line, unknown edge, repeated edge, not a cocycle.
    """
    ring = Ring.parse(ring)
    dense = {label: i for i, label in enumerate(K.labels)}
    values: Dict[Tuple[int, int], int] = {}
    seen: Dict[Tuple[int, int], int] = {}
    for number, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise CocycleFormatError(f"expected 'u v value', got {line!r}", path, number)
        try:
            u, v, value = (int(tok) for tok in parts)
        except ValueError:
            raise CocycleFormatError(f"expected integers, got {line!r}", path, number) from None
        if u not in dense or v not in dense or u == v:
            raise CocycleFormatError(f"{u} {v} is not an edge of the complex", path, number)
        a, b = dense[u], dense[v]
        edge = (min(a, b), max(a, b))
        if not K.contains(edge):
            raise CocycleFormatError(f"{u} {v} is not an edge of the complex", path, number)
        if edge in seen:
            raise CocycleFormatError(f"edge {u} {v} already given on line {seen[edge]}", path, number)
        seen[edge] = number
        values[edge] = value if a < b else -value
    phi = Cochain.from_simplices(K, 1, values, ring)
    if not is_cocycle(K, phi):
        logger.error("cochain read from %s is not a cocycle", path or "text")
        raise CocycleFormatError("the cochain is not a cocycle", path)
    return phi


def load_cocycle_file(path: PathLike, K: SimplicialComplex, ring: "Ring | str" = Ring.INTEGERS) -> Cochain:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise CocycleFormatError(f"cannot read file: {exc.strerror}", p) from exc
    return parse_cocycle(text, K, ring, p)


def format_cocycle(K: SimplicialComplex, phi: Cochain) -> str:
    lines = [
        f"{K.labels[u]} {K.labels[v]} {value}"
        for (u, v), value in zip(K.simplices[1], phi.values)
        if value
    ]
    return "\n".join(lines) + "\n"


def write_text(path: PathLike, text: str) -> None:
    """Write an export or report with Unix newlines."""
    Path(path).write_text(text, encoding="utf-8", newline="\n")
