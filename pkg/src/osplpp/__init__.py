"""Oriented swap process, staircase corner growth, and last passage percolation.

Exact combinatorics (tableaux, sorting networks, the Edelman-Greene map, RSK
and Burge via Greene maxima, generating functions) alongside Monte-Carlo
samplers and density evaluators for the last-swap and corner-addition vectors.
"""

from .densities import density_from_paths, density_V_recursive, hypoexp_density, loe_cdf, pU4_closed_form
from .edelman_greene import eg_inverse_search, eg_map, eg_map_literal, verify_eg_params
from .genfun import accumulate_F, accumulate_G, verify_identity
from .processes import RngStream, sample_corner_growth, sample_lpp, sample_osp, simulate_corner_growth, simulate_osp
from .report import TestReport
from .rsk import Environment, burge, dual_lpp_tableau, greene_max, lpp_tableau, rsk
from .shapes import StandardTableau, Tableau, YoungDiagram, enumerate_syt, staircase, tableau_params
from .sortnet import SortingNetwork, enumerate_sorting_networks, network_params

__version__ = "0.1.0"

__all__ = [
    "Environment", "RngStream", "SortingNetwork", "StandardTableau", "Tableau", "TestReport", "YoungDiagram",
    "accumulate_F", "accumulate_G", "burge", "density_V_recursive", "density_from_paths", "dual_lpp_tableau",
    "eg_inverse_search", "eg_map", "eg_map_literal", "enumerate_sorting_networks", "enumerate_syt", "greene_max",
    "hypoexp_density", "loe_cdf", "lpp_tableau", "network_params", "pU4_closed_form", "rsk",
    "sample_corner_growth", "sample_lpp", "sample_osp", "simulate_corner_growth", "simulate_osp", "staircase",
    "tableau_params", "verify_eg_params", "verify_identity",
]
