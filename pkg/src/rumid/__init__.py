"""Exact identification tests for the random utility model."""

from rumid.core import (
    ChoiceSystem,
    LinearOrder,
    Mixture,
    Path,
    Universe,
    best_in_menu,
    induce_choice_system,
    order_to_path,
    path_to_order,
    upper_contour_set,
)
from rumid.decomposition import (
    alternative_representations,
    enumerate_representations,
    greedy_representation,
    scrum_check,
)
from rumid.errors import CapExceededError, DomainError, NotRationalizableError, ParseError, RumError
from rumid.flow import (
    FlowDiagram,
    bm_polynomial,
    build_flow_diagram,
    contour_mass,
    is_rationalizable,
    path_supported,
    reduced_diagram,
)
from rumid.identification import (
    find_branching_pair,
    is_unique,
    restrict_system,
    support_identified,
    theorem2_check,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "ChoiceSystem",
    "DomainError",
    "FlowDiagram",
    "LinearOrder",
    "Mixture",
    "NotRationalizableError",
    "ParseError",
    "Path",
    "RumError",
    "Universe",
    "alternative_representations",
    "best_in_menu",
    "bm_polynomial",
    "build_flow_diagram",
    "contour_mass",
    "enumerate_representations",
    "find_branching_pair",
    "greedy_representation",
    "induce_choice_system",
    "is_rationalizable",
    "is_unique",
    "order_to_path",
    "path_supported",
    "path_to_order",
    "reduced_diagram",
    "restrict_system",
    "scrum_check",
    "support_identified",
    "theorem2_check",
    "upper_contour_set",
]
