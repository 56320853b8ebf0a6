"""
The `tsaboost.grid` subpackage holds the test system description, the
admittance model and the power flow that sets up every operating point.
"""

__all__ = [
    "GridCase",
    "Bus",
    "Branch",
    "Generator",
    "BusKind",
    "BranchStatus",
    "parse_case",
    "validate_case",
    "format_case",
    "case_digest",
    "load_case",
    "islanding_branches",
    "build_ybus",
    "branch_flows",
    "PowerFlowSolution",
    "solve_power_flow",
    "voltage_screen",
    "LoadingScenario",
    "sample_loading",
    "draw_operating_point",
]

from tsaboost._src.grid.grid_case import Branch
from tsaboost._src.grid.grid_case import BranchStatus
from tsaboost._src.grid.grid_case import Bus
from tsaboost._src.grid.grid_case import BusKind
from tsaboost._src.grid.grid_case import case_digest
from tsaboost._src.grid.grid_case import format_case
from tsaboost._src.grid.grid_case import Generator
from tsaboost._src.grid.grid_case import GridCase
from tsaboost._src.grid.grid_case import islanding_branches
from tsaboost._src.grid.grid_case import load_case
from tsaboost._src.grid.grid_case import parse_case
from tsaboost._src.grid.grid_case import validate_case
from tsaboost._src.grid.grid_loading import draw_operating_point
from tsaboost._src.grid.grid_loading import LoadingScenario
from tsaboost._src.grid.grid_loading import sample_loading
from tsaboost._src.grid.grid_powerflow import PowerFlowSolution
from tsaboost._src.grid.grid_powerflow import solve_power_flow
from tsaboost._src.grid.grid_powerflow import voltage_screen
from tsaboost._src.grid.grid_ybus import branch_flows
from tsaboost._src.grid.grid_ybus import build_ybus
