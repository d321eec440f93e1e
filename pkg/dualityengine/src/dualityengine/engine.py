# engine.py
"""Aggregate analysis of a complex: every stage runs, failures are recorded per stage."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Dict, Optional

from .chain_algebra import ChainAlgebraError, Cochain, homology_report
from .complex_core import ComplexCoreError, Ring, SimplicialComplex, complex_summary, validate_closed_manifold
from .config import get_settings
from .dual_cellulation import DualCellulationError, dual_report
from .duality_cap import DualityCapError, leibniz_check, two_route_agreement, verify_duality
from .level_sets import DEFAULT_LEVEL, LevelSetError, level_curve, level_report, level_surface_3d, surface_report
from .snf import SnfError

logger = logging.getLogger(__name__)


class DualityEngine:
    """Run the whole pipeline on one complex."""

    @staticmethod
    def analyze(
        K: SimplicialComplex,
        ring: "Ring | str | None" = None,
        cocycle: Optional[Cochain] = None,
        t: Fraction = DEFAULT_LEVEL,
        normalize: bool = True,
    ) -> Dict[str, Any]:
        settings = get_settings()
        cert = validate_closed_manifold(K)
        result: Dict[str, Any] = {"summary": complex_summary(K, cert)}
        if ring is None:
            ring = Ring.INTEGERS if cert.orientable else Ring.MOD2
        ring = Ring.parse(ring)
        result["ring"] = ring.value

        try:
            result["homology"] = homology_report(K, ring)
            result["cohomology"] = homology_report(K, ring, kind="cohomology")
        except (ChainAlgebraError, SnfError) as e:
            result["homology_error"] = str(e)

        try:
            result["dual"] = dual_report(K, cert, ring)
        except (ComplexCoreError, DualCellulationError) as e:
            result["dual_error"] = str(e)

        try:
            result["duality"] = verify_duality(K, cert, ring)
        except (ComplexCoreError, ChainAlgebraError, DualityCapError) as e:
            result["duality_error"] = str(e)

        try:
            result["leibniz"] = leibniz_check(K, ring, settings.leibniz_trials, settings.seed)
        except ChainAlgebraError as e:
            result["leibniz_error"] = str(e)

        try:
            result["two_route"] = two_route_agreement(K, cert, ring)
        except (ComplexCoreError, ChainAlgebraError, DualCellulationError, DualityCapError) as e:
            result["two_route_error"] = str(e)

        if cocycle is not None:
            try:
                if K.n == 2:
                    result["level_set"] = level_report(level_curve(K, cocycle, t, normalize=normalize, cert=cert))
                else:
                    result["level_set"] = surface_report(level_surface_3d(K, cocycle, t, normalize=normalize, cert=cert))
            except (ComplexCoreError, LevelSetError) as e:
                result["level_set_error"] = str(e)

        logger.info("analysis finished with %d error stages", sum(k.endswith("_error") for k in result))
        return result
