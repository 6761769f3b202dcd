"""Simulation and exact verification for wired spanning forests on weighted networks.

The package samples weighted spanning trees and wired window forests with
Wilson's algorithm, runs the cycle-breaking update dynamics, certifies
stationarity and detailed balance of the update chain exactly on small
windows, and measures end-structure proxies on sampled windows.
"""

from .errors import CycleBreakError
from .network import (
    BOUNDARY,
    Edge,
    Network,
    OrientedEdge,
    WiredContraction,
    conductance_at,
    induced_network,
    load_network,
    save_network,
    truncate,
    wired_contract,
)
from .oracle import (
    certify_stationarity,
    certify_update_tolerance,
    build_kernel,
    enumerate_spanning_trees,
    kirchhoff_total,
)
from .updates import dynamics_step, update, update_along_path
from .wilson import OrientedForest, sample_oust, sample_owusf_window, wilson_rooted

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY",
    "CycleBreakError",
    "Edge",
    "Network",
    "OrientedEdge",
    "OrientedForest",
    "WiredContraction",
    "build_kernel",
    "certify_stationarity",
    "certify_update_tolerance",
    "conductance_at",
    "dynamics_step",
    "enumerate_spanning_trees",
    "induced_network",
    "kirchhoff_total",
    "load_network",
    "sample_oust",
    "sample_owusf_window",
    "save_network",
    "truncate",
    "update",
    "update_along_path",
    "wilson_rooted",
    "wired_contract",
    "__version__",
]
