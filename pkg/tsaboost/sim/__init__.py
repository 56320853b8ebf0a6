"""
The `tsaboost.sim` subpackage simulates fault scenarios with the classical
machine model and turns them into labeled datasets.
"""

__all__ = [
    "FaultScenario",
    "MachineState",
    "MachineParams",
    "ReducedNetwork",
    "StageNetworks",
    "kron_reduce",
    "build_stage_networks",
    "SwingTrajectory",
    "integrate_swing",
    "tsi_from_delta_max",
    "compute_tsi",
    "feature_names",
    "describe_feature",
    "snapshot_features",
    "Dataset",
    "SampleRecord",
    "simulate_scenario",
    "fault_candidates",
    "generate_dataset",
    "write_dataset",
    "read_dataset",
]

from tsaboost._src.sim.sim_dataset import Dataset
from tsaboost._src.sim.sim_dataset import fault_candidates
from tsaboost._src.sim.sim_dataset import generate_dataset
from tsaboost._src.sim.sim_dataset import read_dataset
from tsaboost._src.sim.sim_dataset import SampleRecord
from tsaboost._src.sim.sim_dataset import simulate_scenario
from tsaboost._src.sim.sim_dataset import write_dataset
from tsaboost._src.sim.sim_features import describe_feature
from tsaboost._src.sim.sim_features import feature_names
from tsaboost._src.sim.sim_features import snapshot_features
from tsaboost._src.sim.sim_kron import kron_reduce
from tsaboost._src.sim.sim_networks import build_stage_networks
from tsaboost._src.sim.sim_networks import FaultScenario
from tsaboost._src.sim.sim_networks import MachineParams
from tsaboost._src.sim.sim_networks import MachineState
from tsaboost._src.sim.sim_networks import ReducedNetwork
from tsaboost._src.sim.sim_networks import StageNetworks
from tsaboost._src.sim.sim_swing import compute_tsi
from tsaboost._src.sim.sim_swing import integrate_swing
from tsaboost._src.sim.sim_swing import SwingTrajectory
from tsaboost._src.sim.sim_swing import tsi_from_delta_max
