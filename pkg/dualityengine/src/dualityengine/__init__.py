# Complexes and certificates
from .complex_core import (
    ComplexCoreError,
    MixedDimension,
    DegenerateSimplex,
    NotClosed,
    NotOrientable,
    Ring,
    SimplicialComplex,
    ManifoldCertificate,
    FundamentalClass,
    Subdivision,
    build_complex,
    f_vector,
    euler_characteristic,
    cofaces,
    link,
    connected_components,
    validate_closed_manifold,
    fundamental_class,
    barycentric_subdivision,
    subdivide_chain,
)

# Exact linear algebra
from .matrices import IntegerMatrix, rational_rank, exact_det
from .snf import SnfError, SnfCertificate, smith_normal_form, snf_invariants, verify_snf

# Chains, homology and cohomology
from .chain_algebra import (
    ChainAlgebraError,
    DegreeOutOfRange,
    DegreeMismatch,
    RingMismatch,
    NotACycle,
    Chain,
    Cochain,
    HomologyGroup,
    ChainComplexData,
    boundary_matrix,
    coboundary_matrix,
    chain_complex,
    homology,
    cohomology,
    evaluate,
    is_cycle,
    is_cocycle,
    is_boundary,
    homology_class,
    euler_from_betti,
)

# Duality
from .dual_cellulation import (
    DualCellulationError,
    DualComplex,
    DualCorrespondence,
    dual_complex,
    dual_correspondence,
    dual_homology,
)
from .duality_cap import (
    DualityCapError,
    DualityMap,
    cap_chain,
    cap_matrix,
    duality_map,
    verify_duality,
    leibniz_check,
    two_route_agreement,
)

# Level sets
from .level_sets import (
    LevelSetError,
    NotACocycle,
    NotASurface,
    NotRegularValue,
    FaceMatchingFailure,
    VertexPotential,
    NormalCurve,
    NormalSurface,
    CoboundingChain,
    integrate_cocycle,
    normalize_cocycle,
    shift_cocycle,
    dual_cocycle,
    level_curve,
    intersection_number,
    deform_level,
    deform_cocycle,
    level_surface_3d,
    surface_intersection_number,
)

# Fixtures, files and the aggregate analyzer
from .complex_zoo import ComplexZooError, UnknownName, FileMissing, ChecksumMismatch, get_complex, list_complexes, zoo_entry
from .fileio import ComplexFormatError, CocycleFormatError, load_complex_file, load_cocycle_file
from .engine import DualityEngine

__all__ = [
    # Complexes
    'ComplexCoreError', 'MixedDimension', 'DegenerateSimplex', 'NotClosed', 'NotOrientable',
    'Ring', 'SimplicialComplex', 'ManifoldCertificate', 'FundamentalClass', 'Subdivision',
    'build_complex', 'f_vector', 'euler_characteristic', 'cofaces', 'link', 'connected_components',
    'validate_closed_manifold', 'fundamental_class', 'barycentric_subdivision', 'subdivide_chain',

    # Linear algebra
    'IntegerMatrix', 'rational_rank', 'exact_det',
    'SnfError', 'SnfCertificate', 'smith_normal_form', 'snf_invariants', 'verify_snf',

    # Chains
    'ChainAlgebraError', 'DegreeOutOfRange', 'DegreeMismatch', 'RingMismatch', 'NotACycle',
    'Chain', 'Cochain', 'HomologyGroup', 'ChainComplexData',
    'boundary_matrix', 'coboundary_matrix', 'chain_complex', 'homology', 'cohomology',
    'evaluate', 'is_cycle', 'is_cocycle', 'is_boundary', 'homology_class', 'euler_from_betti',

    # Duality
    'DualCellulationError', 'DualComplex', 'DualCorrespondence',
    'dual_complex', 'dual_correspondence', 'dual_homology',
    'DualityCapError', 'DualityMap', 'cap_chain', 'cap_matrix', 'duality_map',
    'verify_duality', 'leibniz_check', 'two_route_agreement',

    # Level sets
    'LevelSetError', 'NotACocycle', 'NotASurface', 'NotRegularValue', 'FaceMatchingFailure',
    'VertexPotential', 'NormalCurve', 'NormalSurface', 'CoboundingChain',
    'integrate_cocycle', 'normalize_cocycle', 'shift_cocycle', 'dual_cocycle', 'level_curve', 'intersection_number',
    'deform_level', 'deform_cocycle', 'level_surface_3d', 'surface_intersection_number',

    # Fixtures and files
    'ComplexZooError', 'UnknownName', 'FileMissing', 'ChecksumMismatch',
    'get_complex', 'list_complexes', 'zoo_entry',
    'ComplexFormatError', 'CocycleFormatError', 'load_complex_file', 'load_cocycle_file',
    'DualityEngine',
]
