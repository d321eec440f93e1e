# cli.py
"""Batch command line: load a complex, run one stage, print a report.

Exit status: 0 on success, 1 when a verification verdict fails, 2 on usage
or input errors.
"""

from __future__ import annotations

import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

import click
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from .chain_algebra import (
    ChainAlgebraError,
    Cochain,
    cohomology,
    evaluate,
    homology,
    homology_report,
)
from .complex_core import (
    ComplexCoreError,
    ManifoldCertificate,
    Ring,
    SimplicialComplex,
    complex_summary,
    validate_closed_manifold,
)
from .complex_zoo import ComplexZooError, get_complex, list_complexes, zoo_entry
from .config import configure_logging
from .dual_cellulation import DualCellulationError, dual_report
from .duality_cap import DualityCapError, verify_duality
from .engine import DualityEngine
from .fileio import FileFormatError, load_cocycle_file, load_complex_file, write_text
from .level_sets import (
    LevelSetError,
    as_level,
    deform_level,
    export_curve,
    export_surface,
    intersection_number,
    level_curve,
    level_report,
    level_surface_3d,
    surface_intersection_number,
    surface_report,
)
from .reports import render
from .snf import SnfError

logger = logging.getLogger(__name__)

Verb = Literal[
    "validate", "homology", "cohomology", "dual", "duality", "level-curve", "level-surface", "deform", "analyze", "zoo"
]
LEVEL_VERBS = {"level-curve", "level-surface", "deform"}
COCYCLE_VERBS = LEVEL_VERBS | {"analyze"}
DEGREE_VERBS = {"homology", "cohomology", "duality"}

INPUT_ERRORS = (
    ComplexCoreError,
    ChainAlgebraError,
    ComplexZooError,
    DualCellulationError,
    DualityCapError,
    FileFormatError,
    LevelSetError,
    SnfError,
)


class Command(BaseModel):
    """One validated invocation."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    verb: Verb
    input: Optional[Path] = None
    zoo: Optional[str] = None
    ring: Optional[Ring] = None
    degree: Optional[int] = None
    cocycle: Optional[Path] = None
    generator: Optional[int] = None
    t: Fraction = Fraction(1, 2)
    t0: Optional[Fraction] = None
    t1: Optional[Fraction] = None
    normalize: bool = True
    export: Optional[Path] = None
    output: Optional[Path] = None
    format: Literal["text", "json"] = "text"

    @field_validator("ring", mode="before")
    @classmethod
    def _ring(cls, value: Any) -> Optional[Ring]:
        return None if value is None else Ring.parse(value)

    @field_validator("t", "t0", "t1", mode="before")
    @classmethod
    def _level(cls, value: Any) -> Optional[Fraction]:
        if value is None:
            return None
        try:
            return as_level(value)
        except LevelSetError as exc:
            raise ValueError(str(exc)) from None

    @model_validator(mode="after")
    def _flags_fit_verb(self) -> "Command":
        if self.verb != "zoo" and (self.input is None) == (self.zoo is None):
            raise ValueError("give exactly one of INPUT or --zoo")
        if self.degree is not None and self.verb not in DEGREE_VERBS:
            raise ValueError(f"--degree does not apply to {self.verb}")
        if self.verb in LEVEL_VERBS and (self.cocycle is None) == (self.generator is None):
            raise ValueError("give exactly one of --cocycle or --generator")
        if self.verb == "analyze" and self.cocycle is not None and self.generator is not None:
            raise ValueError("give at most one of --cocycle or --generator")
        if self.verb not in COCYCLE_VERBS and (self.cocycle is not None or self.generator is not None):
            raise ValueError(f"--cocycle/--generator do not apply to {self.verb}")
        if not self.normalize and self.verb not in COCYCLE_VERBS:
            raise ValueError(f"--raw does not apply to {self.verb}")
        if self.verb == "deform" and (self.t0 is None or self.t1 is None):
            raise ValueError("deform needs --t0 and --t1")
        if self.export is not None and self.verb not in {"level-curve", "level-surface"}:
            raise ValueError(f"--export does not apply to {self.verb}")
        return self


class UsageError(Exception):
    def __init__(self, message: str, flag: str = ""):
        super().__init__(message)
        self.flag = flag


# ----- verb implementations: each returns (report, passed) -----

def _load(cmd: Command) -> SimplicialComplex:
    if cmd.zoo is not None:
        return get_complex(cmd.zoo)
    if cmd.input is None:
        raise UsageError("no complex given", "INPUT")
    return load_complex_file(cmd.input)


def _ring_for(cmd: Command, cert: ManifoldCertificate) -> Ring:
    if cmd.ring is not None:
        return cmd.ring
    return Ring.INTEGERS if cert.orientable else Ring.MOD2


def _degrees(cmd: Command, K: SimplicialComplex) -> List[int]:
    if cmd.degree is None:
        return list(range(K.n + 1))
    if not 0 <= cmd.degree <= K.n:
        raise UsageError(f"degree {cmd.degree} outside 0..{K.n}", "--degree")
    return [cmd.degree]


def _cocycle(cmd: Command, K: SimplicialComplex, ring: Ring) -> Cochain:
    if cmd.cocycle is not None:
        return load_cocycle_file(cmd.cocycle, K, ring)
    if cmd.generator is None:
        raise UsageError("give --cocycle or --generator", "--generator")
    group = cohomology(K, 1, ring)
    if not 0 <= cmd.generator < group.rank:
        raise UsageError(f"H^1 over {ring.value} has {group.rank} generators", "--generator")
    return group.generator_cochain(cmd.generator)


def _pairings(K: SimplicialComplex, phi: Cochain, count: Callable[[Any], int]) -> List[Dict[str, Any]]:
    basis = homology(K, 1, phi.ring)
    rows = []
    for i in range(basis.rank):
        z = basis.generator_chain(i)
        rows.append({"cycle": i, "intersection": count(z), "evaluation": evaluate(phi, z)})
    return rows


def run_validate(cmd: Command, K: SimplicialComplex, cert: ManifoldCertificate) -> Tuple[Dict[str, Any], bool]:
    report = complex_summary(K, cert)
    return report, cert.is_closed_pseudomanifold and cert.is_connected


def run_homology(cmd: Command, K: SimplicialComplex, cert: ManifoldCertificate) -> Tuple[Dict[str, Any], bool]:
    ring = _ring_for(cmd, cert)
    kind = "cohomology" if cmd.verb == "cohomology" else "homology"
    report = homology_report(K, ring, kind)
    keep = set(_degrees(cmd, K))
    report["groups"] = [g for g in report["groups"] if g["degree"] in keep]
    return report, bool(report["certified"])


def run_dual(cmd: Command, K: SimplicialComplex, cert: ManifoldCertificate) -> Tuple[Dict[str, Any], bool]:
    report = dual_report(K, cert, cmd.ring)
    return report, bool(report["composes_to_zero"])


def run_duality(cmd: Command, K: SimplicialComplex, cert: ManifoldCertificate) -> Tuple[Dict[str, Any], bool]:
    ring = _ring_for(cmd, cert)
    report = verify_duality(K, cert, ring)
    keep = set(_degrees(cmd, K))
    report["degrees"] = [d for d in report["degrees"] if d["k"] in keep]
    passed = all(d["verdict"] == "iso" for d in report["degrees"])
    report["passed"] = passed
    return report, passed


def run_level_curve(cmd: Command, K: SimplicialComplex, cert: ManifoldCertificate) -> Tuple[Dict[str, Any], bool]:
    phi = _cocycle(cmd, K, _ring_for(cmd, cert))
    curve = level_curve(K, phi, cmd.t, normalize=cmd.normalize, cert=cert)
    report = level_report(curve)
    report["pairings"] = _pairings(K, phi, lambda z: intersection_number(curve, z))
    if cmd.export is not None:
        write_text(cmd.export, export_curve(curve))
    return report, all(p["intersection"] == p["evaluation"] for p in report["pairings"])


def run_level_surface(cmd: Command, K: SimplicialComplex, cert: ManifoldCertificate) -> Tuple[Dict[str, Any], bool]:
    phi = _cocycle(cmd, K, _ring_for(cmd, cert))
    surface = level_surface_3d(K, phi, cmd.t, normalize=cmd.normalize, cert=cert)
    report = surface_report(surface)
    report["pairings"] = _pairings(K, phi, lambda z: surface_intersection_number(surface, z))
    if cmd.export is not None:
        write_text(cmd.export, export_surface(surface))
    return report, all(p["intersection"] == p["evaluation"] for p in report["pairings"])


def run_deform(cmd: Command, K: SimplicialComplex, cert: ManifoldCertificate) -> Tuple[Dict[str, Any], bool]:
    phi = _cocycle(cmd, K, _ring_for(cmd, cert))
    W = deform_level(K, phi, cmd.t0, cmd.t1, cert, normalize=cmd.normalize)  # type: ignore[arg-type]
    report = {
        "t0": W.t0,
        "t1": W.t1,
        "triangles": len(W.chain),
        "boundary_matches": W.verified,
        "intersections_agree": W.intersections_agree,
        "steps": [
            {"step": "Source curve", "data": {"segments": len(W.source)}},
            {"step": "Target curve", "data": {"segments": len(W.target)}},
        ],
    }
    return report, W.verified and W.intersections_agree


def run_analyze(cmd: Command, K: SimplicialComplex, cert: ManifoldCertificate) -> Tuple[Dict[str, Any], bool]:
    phi = None
    if cmd.cocycle is not None or cmd.generator is not None:
        phi = _cocycle(cmd, K, _ring_for(cmd, cert))
    result = DualityEngine.analyze(K, cmd.ring, phi, cmd.t, normalize=cmd.normalize)
    failed = sorted(k[: -len("_error")] for k in result if k.endswith("_error"))
    passed = not failed and all(
        (result["homology"]["certified"], result["duality"]["passed"], result["leibniz"]["ok"], result["two_route"]["agree"])
    )
    return {"failed_stages": failed, **result}, passed


VERBS: Dict[str, Callable[[Command, SimplicialComplex, ManifoldCertificate], Tuple[Dict[str, Any], bool]]] = {
    "validate": run_validate,
    "homology": run_homology,
    "cohomology": run_homology,
    "dual": run_dual,
    "duality": run_duality,
    "level-curve": run_level_curve,
    "level-surface": run_level_surface,
    "deform": run_deform,
    "analyze": run_analyze,
}


def run(cmd: Command) -> Tuple[str, int]:
    """Execute a command; returns the rendered report and the exit status."""
    if cmd.verb == "zoo":
        report: Dict[str, Any] = {"complexes": [zoo_entry(n).as_record() for n in list_complexes(True)]}
        return render(report, cmd.format, "zoo"), 0
    K = _load(cmd)
    cert = validate_closed_manifold(K)
    report, passed = VERBS[cmd.verb](cmd, K, cert)
    report = {"verb": cmd.verb, "passed": passed, **{k: v for k, v in report.items() if k != "passed"}}
    return render(report, cmd.format, cmd.verb), 0 if passed else 1


def _flag_for(exc: Exception) -> str:
    text = type(exc).__name__
    if isinstance(exc, FileFormatError):
        return "--cocycle" if "Cocycle" in text else "INPUT"
    if isinstance(exc, ComplexZooError):
        return "--zoo"
    if isinstance(exc, LevelSetError):
        return {"NotRegularValue": "--t", "NotACocycle": "--cocycle"}.get(text, "INPUT")
    return "--ring" if text == "NotOrientable" else "INPUT"


def _execute(**flags: Any) -> None:
    try:
        cmd = Command(**{k: v for k, v in flags.items() if v is not None})
    except ValidationError as exc:
        err = exc.errors()[0]
        loc = [str(p) for p in err.get("loc", ()) if p]
        flag = f" (flag --{loc[0]})" if loc else ""
        click.echo(f"usage error: {err['msg']}{flag}", err=True)
        sys.exit(2)
    try:
        text, status = run(cmd)
    except UsageError as exc:
        click.echo(f"usage error: {exc} (flag {exc.flag})", err=True)
        sys.exit(2)
    except INPUT_ERRORS as exc:
        click.echo(f"error: {type(exc).__name__}: {exc} (flag {_flag_for(exc)})", err=True)
        sys.exit(2)
    if cmd.output is not None:
        write_text(cmd.output, text)
    else:
        click.echo(text, nl=False)
    sys.exit(status)


# ----- click surface -----

def _common(fn: Callable) -> Callable:
    fn = click.argument("input", required=False, type=click.Path(path_type=Path))(fn)
    fn = click.option("--zoo", help="Name of a built-in complex.")(fn)
    fn = click.option("--ring", help="Coefficients: Z or Z2.")(fn)
    fn = click.option("--format", "format_", type=click.Choice(["text", "json"]), default="text")(fn)
    fn = click.option("--output", type=click.Path(path_type=Path), help="Write the report here.")(fn)
    return fn


def _level_flags(fn: Callable) -> Callable:
    fn = click.option("--cocycle", type=click.Path(path_type=Path), help="Cocycle file: lines 'u v value'.")(fn)
    fn = click.option("--generator", type=int, help="Use the i-th H^1 generator instead of a file.")(fn)
    fn = click.option("--raw", is_flag=True, help="Cut the cocycle as given, without normalizing it along a spanning tree.")(fn)
    return fn


@click.group()
@click.option("--log-level", default=None, help="Logging level for stderr.")
def cli(log_level: Optional[str]) -> None:
    """Exact duality checks on triangulated closed manifolds."""
    configure_logging(log_level)


@cli.command()
@_common
def validate(input: Optional[Path], zoo: Optional[str], ring: Optional[str], format_: str, output: Optional[Path]) -> None:
    """Closed-pseudomanifold, connectivity and orientability check."""
    _execute(verb="validate", input=input, zoo=zoo, ring=ring, format=format_, output=output)


@cli.command(name="homology")
@_common
@click.option("--degree", type=int)
def homology_cmd(input, zoo, ring, format_, output, degree) -> None:
    """Betti numbers and torsion per degree."""
    _execute(verb="homology", input=input, zoo=zoo, ring=ring, format=format_, output=output, degree=degree)


@cli.command(name="cohomology")
@_common
@click.option("--degree", type=int)
def cohomology_cmd(input, zoo, ring, format_, output, degree) -> None:
    """Cohomology groups per degree."""
    _execute(verb="cohomology", input=input, zoo=zoo, ring=ring, format=format_, output=output, degree=degree)


@cli.command()
@_common
def dual(input, zoo, ring, format_, output) -> None:
    """Dual block complex: cell counts, incidences and chain-map signs."""
    _execute(verb="dual", input=input, zoo=zoo, ring=ring, format=format_, output=output)


@cli.command()
@_common
@click.option("--degree", type=int)
def duality(input, zoo, ring, format_, output, degree) -> None:
    """Cap-product duality verdict per degree."""
    _execute(verb="duality", input=input, zoo=zoo, ring=ring, format=format_, output=output, degree=degree)


@cli.command(name="level-curve")
@_common
@_level_flags
@click.option("--t", "t", default="1/2", help="Regular value p/q in (0, 1).")
@click.option("--export", type=click.Path(path_type=Path), help="Write curve geometry here.")
def level_curve_cmd(input, zoo, ring, format_, output, cocycle, generator, raw, t, export) -> None:
    """Level curve of a 1-cocycle on a surface."""
    _execute(
        verb="level-curve", input=input, zoo=zoo, ring=ring, format=format_, output=output,
        cocycle=cocycle, generator=generator, t=t, export=export, normalize=not raw,
    )


@cli.command(name="level-surface")
@_common
@_level_flags
@click.option("--t", "t", default="1/2", help="Regular value p/q in (0, 1).")
@click.option("--export", type=click.Path(path_type=Path), help="Write surface geometry here.")
def level_surface_cmd(input, zoo, ring, format_, output, cocycle, generator, raw, t, export) -> None:
    """Level surface of a 1-cocycle in a 3-manifold."""
    _execute(
        verb="level-surface", input=input, zoo=zoo, ring=ring, format=format_, output=output,
        cocycle=cocycle, generator=generator, t=t, export=export, normalize=not raw,
    )


@cli.command()
@_common
@_level_flags
@click.option("--t0", required=True)
@click.option("--t1", required=True)
def deform(input, zoo, ring, format_, output, cocycle, generator, raw, t0, t1) -> None:
    """Cobounding chain between two level curves."""
    _execute(
        verb="deform", input=input, zoo=zoo, ring=ring, format=format_, output=output,
        cocycle=cocycle, generator=generator, t0=t0, t1=t1, normalize=not raw,
    )


@cli.command()
@_common
@_level_flags
@click.option("--t", "t", default="1/2", help="Regular value p/q in (0, 1).")
def analyze(input, zoo, ring, format_, output, cocycle, generator, raw, t) -> None:
    """Every stage on one complex; a failing stage is recorded, not raised."""
    _execute(
        verb="analyze", input=input, zoo=zoo, ring=ring, format=format_, output=output,
        cocycle=cocycle, generator=generator, t=t, normalize=not raw,
    )


@cli.command()
@click.option("--format", "format_", type=click.Choice(["text", "json"]), default="text")
@click.option("--output", type=click.Path(path_type=Path))
def zoo(format_: str, output: Optional[Path]) -> None:
    """List the built-in complexes with their expected invariants."""
    _execute(verb="zoo", format=format_, output=output)


if __name__ == "__main__":
    cli()
