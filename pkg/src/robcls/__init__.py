"""Numerical curvature classification for Lorentzian metrics.

Computes curvature tensors of closed-form metrics by jet arithmetic and
classifies them invariantly under the stabiliser of a null line and under
the stabiliser of an almost Robinson structure, with dimension-table and
diagram verification and a worked-example catalog.
"""

__version__ = "0.1.0"

from .tensor import PointTensor, Tolerance, contract, is_zero, norm, raise_lower, skew, sym
from .frames import (
    NullFrame,
    RobinsonStructure,
    build_robinson,
    complete_null_frame,
    robinson_forms,
    robinson_from_span,
    sample_robinson_over_null_line,
)
from .chart import MetricChart, check_cky, eigenstructure, frame_field_bracket, is_integrable
from .simclass import (
    GradedDecomposition,
    decompose,
    graded_reconstruct,
    project_cotton,
    project_g,
    project_ricci_tf,
    project_weyl,
    weyl_type_at_frame,
    weyl_type_search,
)
from .robclass import (
    adapted_blocks,
    is_aligned,
    is_algebraically_special,
    multi_robinson_equivalences,
    parallel_structure_relations,
    refined_flags,
)
from .catalog import ENTRIES, catalog_entries, run_expectations

__all__ = [
    "PointTensor",
    "Tolerance",
    "contract",
    "skew",
    "sym",
    "raise_lower",
    "is_zero",
    "norm",
    "NullFrame",
    "RobinsonStructure",
    "complete_null_frame",
    "build_robinson",
    "robinson_from_span",
    "robinson_forms",
    "sample_robinson_over_null_line",
    "MetricChart",
    "frame_field_bracket",
    "check_cky",
    "eigenstructure",
    "is_integrable",
    "decompose",
    "GradedDecomposition",
    "graded_reconstruct",
    "project_g",
    "project_ricci_tf",
    "project_cotton",
    "project_weyl",
    "weyl_type_at_frame",
    "weyl_type_search",
    "refined_flags",
    "adapted_blocks",
    "is_aligned",
    "is_algebraically_special",
    "multi_robinson_equivalences",
    "parallel_structure_relations",
    "ENTRIES",
    "catalog_entries",
    "run_expectations",
    "__version__",
]
