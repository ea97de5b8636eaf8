"""Exact detection and correction of wrong line sums in discrete tomography."""
from .core import (Correction, CorrectionReport, Direction, DirectionSet, Grid, LineSumTable, Status,
                   line_index_range, normalize_direction)
from .detect import DetectionState, detect_all, detect_level_k, screen_sums
from .estimator import LineSumCorrector, LineSumProjector, correct_line_sums
from .exceptions import (AssumptionViolated, DegenerateDirections, DimensionMismatch, InternalContradiction,
                         InvalidDirection, InvalidErrorSpec, InvalidGrid, InvalidLineSums, InvalidParameters,
                         RootDeficit, SingularSystem, TomoError)
from .prony import PronySolution, correct_direction, correct_one_direction_known_k
from .relations import check_relations
from .simulate import ErrorEntry, ErrorSpec, inject, project, random_instance

__version__ = "0.1.0"

__all__ = [
    "AssumptionViolated", "Correction", "CorrectionReport", "DegenerateDirections", "DetectionState",
    "DimensionMismatch", "Direction", "DirectionSet", "ErrorEntry", "ErrorSpec", "Grid",
    "InternalContradiction", "InvalidDirection", "InvalidErrorSpec", "InvalidGrid", "InvalidLineSums",
    "InvalidParameters", "LineSumCorrector", "LineSumProjector", "LineSumTable", "PronySolution",
    "RootDeficit", "SingularSystem", "Status", "TomoError", "check_relations", "correct_direction",
    "correct_line_sums", "correct_one_direction_known_k", "detect_all", "detect_level_k", "inject",
    "line_index_range", "normalize_direction", "project", "random_instance", "screen_sums",
]
