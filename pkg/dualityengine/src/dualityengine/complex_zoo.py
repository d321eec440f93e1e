# complex_zoo.py
"""Standard triangulations with their known invariants.

Small complexes are code constants; the genus-2 surface and projective
3-space ship as complex files in the package data directory and are checked
against recorded SHA-256 sums on load.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from .complex_core import SimplicialComplex, build_complex, require_closed, validate_closed_manifold
from .config import get_settings
from .fileio import parse_complex

logger = logging.getLogger(__name__)


class ComplexZooError(Exception):
    pass


class UnknownName(ComplexZooError):
    pass


class FileMissing(ComplexZooError):
    pass


class ChecksumMismatch(ComplexZooError):
    pass


def _boundary_of_simplex(n: int) -> List[Tuple[int, ...]]:
    return list(combinations(range(n + 2), n + 1))


def _torus7() -> List[Tuple[int, ...]]:
    tops = []
    for i in range(7):
        tops.append((i, (i + 1) % 7, (i + 3) % 7))
        tops.append((i, (i + 2) % 7, (i + 3) % 7))
    return tops


PROJECTIVE_PLANE6 = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]

KLEIN_BOTTLE8 = [
    (0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4), (0, 1, 4), (0, 5, 6), (0, 2, 6), (2, 6, 7),
    (2, 4, 7), (4, 5, 7), (1, 4, 5), (1, 5, 6), (1, 3, 6), (3, 6, 7), (0, 3, 7), (0, 5, 7),
]

# A loop of 14 triangles around the 7-vertex torus; it crosses every edge
# {i, i+2} and {i, i+3} once and no edge {i, i+1}.
TORUS7_LOOP: Tuple[Tuple[int, ...], ...] = tuple(
    tri
    for a in range(7)
    for tri in (
        tuple(sorted((a, (a + 1) % 7, (a + 3) % 7))),
        tuple(sorted(((a + 1) % 7, (a + 3) % 7, (a + 4) % 7))),
    )
)

CHECKSUMS: Dict[str, str] = {
    "genus2_surface.txt": "310586ebe7c20b9dbe7e4ebdd1764afaeefaf425740cabbf8460b6aea0752e3d",
    "projective_space11.txt": "a0ddbf5c78f39a09a991381e4e5e6bdbf64af6edde3cf3365dbca86e9e276431",
}


@dataclass(frozen=True)
class Expected:
    f_vector: Tuple[int, ...]
    orientable: bool
    betti: Dict[str, Tuple[int, ...]]  # ring value -> betti numbers per degree
    torsion: Tuple[Tuple[int, ...], ...] = ()  # integral torsion per degree, empty when none

    def torsion_in(self, k: int) -> Tuple[int, ...]:
        return self.torsion[k] if k < len(self.torsion) else ()


@dataclass(frozen=True)
class ZooEntry:
    name: str
    description: str
    expected: Expected
    builder: Optional[Callable[[], List[Tuple[int, ...]]]] = field(default=None, repr=False)
    data_file: Optional[str] = None
    optional: bool = False
    loops: Dict[str, Tuple[Tuple[int, ...], ...]] = field(default_factory=dict, repr=False)

    def as_record(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "source": self.data_file or "built in",
            "f_vector": list(self.expected.f_vector),
            "orientable": self.expected.orientable,
            "betti": {ring: list(b) for ring, b in sorted(self.expected.betti.items())},
            "torsion": [list(t) for t in self.expected.torsion],
        }


ZOO: Dict[str, ZooEntry] = {
    e.name: e
    for e in (
        ZooEntry(
            "sphere2",
            "boundary of the 3-simplex",
            Expected((4, 6, 4), True, {"Z": (1, 0, 1), "Z2": (1, 0, 1)}),
            builder=lambda: _boundary_of_simplex(2),
        ),
        ZooEntry(
            "sphere3",
            "boundary of the 4-simplex",
            Expected((5, 10, 10, 5), True, {"Z": (1, 0, 0, 1), "Z2": (1, 0, 0, 1)}),
            builder=lambda: _boundary_of_simplex(3),
        ),
        ZooEntry(
            "torus7",
            "7-vertex torus",
            Expected((7, 21, 14), True, {"Z": (1, 2, 1), "Z2": (1, 2, 1)}),
            builder=_torus7,
            loops={"meridian": TORUS7_LOOP},
        ),
        ZooEntry(
            "projective_plane6",
            "6-vertex real projective plane",
            Expected((6, 15, 10), False, {"Z": (1, 0, 0), "Z2": (1, 1, 1)}, ((), (2,), ())),
            builder=lambda: list(PROJECTIVE_PLANE6),
        ),
        ZooEntry(
            "klein_bottle8",
            "8-vertex Klein bottle",
            Expected((8, 24, 16), False, {"Z": (1, 1, 0), "Z2": (1, 2, 1)}, ((), (2,), ())),
            builder=lambda: list(KLEIN_BOTTLE8),
        ),
        ZooEntry(
            "genus2_surface",
            "closed orientable surface of genus 2",
            Expected((10, 36, 24), True, {"Z": (1, 4, 1), "Z2": (1, 4, 1)}),
            data_file="genus2_surface.txt",
        ),
        ZooEntry(
            "projective_space11",
            "11-vertex real projective 3-space",
            Expected((11, 51, 80, 40), True, {"Z": (1, 0, 0, 1), "Z2": (1, 1, 1, 1)}, ((), (2,), (), ())),
            data_file="projective_space11.txt",
        ),
        ZooEntry(
            "torus3",
            "3-torus, read from torus3.txt in the data directory when present",
            Expected((), True, {"Z": (1, 3, 3, 1), "Z2": (1, 3, 3, 1)}),
            data_file="torus3.txt",
            optional=True,
        ),
    )
}


def list_complexes(include_optional: bool = False) -> List[str]:
    return [name for name, e in ZOO.items() if include_optional or not e.optional]


def zoo_entry(name: str) -> ZooEntry:
    try:
        return ZOO[name]
    except KeyError:
        logger.error("unknown zoo complex %r", name)
        raise UnknownName(f"unknown complex {name!r}; known: {', '.join(list_complexes(True))}") from None


def _read_data_file(entry: ZooEntry, data_dir: Optional[Path]) -> SimplicialComplex:
    if entry.data_file is None:
        raise FileMissing(f"{entry.name} has no data file")
    path = Path(data_dir or get_settings().data_dir) / entry.data_file
    if not path.is_file():
        logger.error("zoo data file %s is missing", path)
        raise FileMissing(f"data file for {entry.name} not found at {path}")
    raw = path.read_bytes()
    expected = CHECKSUMS.get(entry.data_file)
    if expected is not None:
        digest = hashlib.sha256(raw).hexdigest()
        if digest != expected:
            logger.error("checksum mismatch for %s: %s", path, digest)
            raise ChecksumMismatch(f"{path} has sha256 {digest}, expected {expected}")
    K = parse_complex(raw.decode("utf-8"), path)
    require_closed(validate_closed_manifold(K))
    return K


def get_complex(name: str, data_dir: Optional[Path] = None) -> SimplicialComplex:
    """A zoo complex by name.

    Raises:
        UnknownName: no such entry.
        FileMissing: a file-backed entry whose data file is absent.
        ChecksumMismatch: a shipped data file was altered.
    """
    entry = zoo_entry(name)
    if entry.builder is not None:
        return build_complex(entry.builder())
    return _read_data_file(entry, data_dir)


def is_available(name: str, data_dir: Optional[Path] = None) -> bool:
    entry = zoo_entry(name)
    if entry.data_file is None:
        return True
    return (Path(data_dir or get_settings().data_dir) / entry.data_file).is_file()
