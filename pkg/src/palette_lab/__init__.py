"""Exact-computation tools for (k, ell)-choosability, Property B and Property K."""

from .setfam import GroundParams, SetFamily, canonical_form, has_property_b, has_property_k
from .extremal import INFINITE, compute_M, compute_R, lower_bound_R, naive_R_oracle, upper_bound_R
from .choosability import (
    Graph,
    ListAssignment,
    decide_choosable,
    decide_kl_choosable,
    find_l_colouring,
)

__all__ = [
    "GroundParams", "SetFamily", "canonical_form", "has_property_b", "has_property_k",
    "INFINITE", "compute_M", "compute_R", "lower_bound_R", "upper_bound_R", "naive_R_oracle",
    "Graph", "ListAssignment", "decide_choosable", "decide_kl_choosable", "find_l_colouring",
]
