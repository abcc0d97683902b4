"""Exact certification of fixed-point-free rational self-maps of P2 and P1xP1."""

from .scalars import GaussianRational, I, format_scalar, is_root_of_unity_q_i
from .poly import (
    BiDegree,
    MultiPoly,
    bihomogenize,
    dehomogenize_bi,
    gcd_poly,
    poly_to_string,
    resultant,
    squarefree_part,
)
from .spaces import (
    INF,
    SPACE_P1XP1,
    SPACE_P2,
    DegreeReport,
    ProjMap,
    ProjPoint,
    compose,
    degree_report,
    evaluate,
    normalize_map,
    topological_degree,
)
from .analyzer import (
    CURVE_OF_FIXED_POINTS,
    FIXED_POINT_FREE,
    HAS_FIXED_POINTS,
    FixClassification,
    classify,
    fixed_locus,
    indeterminacy_locus,
    lemma_check,
    meromorphic_fixed_nonempty,
    numeric_oracle,
)
from . import catalog
from .transfer import (
    HypothesesFailed,
    SearchExhausted,
    check_hypotheses,
    elementary_transform,
    find_center,
    transfer_map,
)
from .convergence import closure_demo, hausdorff_estimate, ladder, sample_graph
from .mapio import (
    MapFile,
    analyze_map,
    parse_polynomial,
    read_map_file,
    write_map_file,
    write_report,
)

__all__ = [
    "GaussianRational",
    "I",
    "format_scalar",
    "is_root_of_unity_q_i",
    "BiDegree",
    "MultiPoly",
    "bihomogenize",
    "dehomogenize_bi",
    "gcd_poly",
    "poly_to_string",
    "resultant",
    "squarefree_part",
    "INF",
    "SPACE_P1XP1",
    "SPACE_P2",
    "DegreeReport",
    "ProjMap",
    "ProjPoint",
    "compose",
    "degree_report",
    "evaluate",
    "normalize_map",
    "topological_degree",
    "CURVE_OF_FIXED_POINTS",
    "FIXED_POINT_FREE",
    "HAS_FIXED_POINTS",
    "FixClassification",
    "classify",
    "fixed_locus",
    "indeterminacy_locus",
    "lemma_check",
    "meromorphic_fixed_nonempty",
    "numeric_oracle",
    "catalog",
    "HypothesesFailed",
    "SearchExhausted",
    "check_hypotheses",
    "elementary_transform",
    "find_center",
    "transfer_map",
    "closure_demo",
    "hausdorff_estimate",
    "ladder",
    "sample_graph",
    "MapFile",
    "analyze_map",
    "parse_polynomial",
    "read_map_file",
    "write_map_file",
    "write_report",
]

__version__ = "0.1.0"
