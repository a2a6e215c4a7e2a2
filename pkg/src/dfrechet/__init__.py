"""Discrete Fréchet distance: exact, output-sensitive and approximate algorithms."""
from .curve_classes import (ApproxParams, appr_f_backbone, approx_dfd_kbounded,
                            approx_fd_continuous, densify, fuzzy_decide_simplified, small_exact)
from .errors import ContractViolation, DimensionMismatchError, GenerationError
from .freespace import WhiteCellSet, build_white_cells, dfd_binary_search, viable_path_exists
from .fuzzy_search import SearchTrace, bracket_from_candidates, fuzzy_optimize
from .geometry import Norm, as_curve, check_backbone, dist, estimate_kappa
from .oracle import FrechetResult, dfd_decision_naive, dfd_dp
from .output_sensitive import (SwitchingCellSet, compute_switching_cells, decision_switching,
                               dfd_output_sensitive, merge_col)
from .simplify import Simplification, greedy_simplify
from .spatial_index import UniformGrid, approx_range_query, build_grid, build_wspd

__all__ = [
    "ApproxParams", "ContractViolation", "DimensionMismatchError", "FrechetResult",
    "GenerationError", "Norm", "SearchTrace", "Simplification", "SwitchingCellSet",
    "UniformGrid", "WhiteCellSet", "appr_f_backbone", "approx_dfd_kbounded",
    "approx_fd_continuous", "approx_range_query", "as_curve", "bracket_from_candidates",
    "build_grid", "build_white_cells", "build_wspd", "check_backbone",
    "compute_switching_cells", "decision_switching", "densify", "dfd_binary_search",
    "dfd_decision_naive", "dfd_dp", "dfd_output_sensitive", "dist", "estimate_kappa",
    "fuzzy_decide_simplified", "fuzzy_optimize", "greedy_simplify", "merge_col",
    "small_exact", "viable_path_exists",
]
