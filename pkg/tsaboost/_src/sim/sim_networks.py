"""Fault scenarios, classical machine states and the three stage networks."""
import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.grid.grid_loading import LoadingScenario
from tsaboost._src.grid.grid_ybus import branch_parameters
from tsaboost._src.grid.grid_ybus import stamp_branches
from tsaboost._src.sim.sim_kron import kron_reduce


class Stage(enum.Enum):
    """network topology stage of a fault scenario"""

    PRE_FAULT = "PreFault"
    FAULT_ON = "FaultOn"
    POST_FAULT = "PostFault"


@dataclass(frozen=True, eq=False)
class FaultScenario:
    """
    Three-phase line fault applied at t=0 and cleared by removing the line.

    `fault_branch=None` describes an undisturbed run in which all three stages equal
    the pre-fault network. Fault position and clearing time must lie within the
    ranges of `defaults.sim`.
    """

    loading: LoadingScenario
    fault_branch: Optional[int]
    fault_position: float
    clearing_time: float
    sim_horizon: float = 10.0
    rng_seed: int = 0

    def __post_init__(self):
        cfg = default_settings.sim
        lo, hi = cfg.fault_position_min, cfg.fault_position_max
        if not lo <= self.fault_position <= hi:
            raise TsaBadUserInput(
                f"Input parameter `fault_position` must be within [{lo}, {hi}].\n"
                f"Instead received {self.fault_position}."
            )
        lo, hi = cfg.clearing_time_min, cfg.clearing_time_max
        if not lo <= self.clearing_time <= hi:
            raise TsaBadUserInput(
                f"Input parameter `clearing_time` must be within [{lo}, {hi}].\n"
                f"Instead received {self.clearing_time}."
            )
        if self.sim_horizon < self.clearing_time:
            raise TsaBadUserInput(
                "Input parameter `sim_horizon` must not be shorter than `clearing_time`.\n"
                f"Instead received {self.sim_horizon}."
            )


@dataclass(frozen=True, eq=False)
class MachineState:
    """classical machine states, one entry per generator"""

    delta: np.ndarray
    omega: np.ndarray
    e_mag: np.ndarray
    p_mech: np.ndarray


@dataclass(frozen=True, eq=False)
class MachineParams:
    """inertia and damping on the system base, synchronous speed in rad/s"""

    inertia_h: np.ndarray
    damping_d: np.ndarray
    omega_s: float


@dataclass(frozen=True, eq=False)
class ReducedNetwork:
    """admittance matrix over the generator internal nodes"""

    y_reduced: np.ndarray
    stage: Stage


@dataclass(frozen=True, eq=False)
class StageNetworks:
    """
    The three reduced networks of a scenario, the machine constants, and the
    unreduced post-fault matrix (buses first, then internal nodes) used to recover
    bus voltages.
    """

    pre: ReducedNetwork
    fault: ReducedNetwork
    post: ReducedNetwork
    machines: MachineParams
    post_full: np.ndarray
    post_in_service: np.ndarray
    n_buses: int


def split_branch_sections(branch, position):
    """
    Split a pi-model branch at `position` (fraction from the from-end).

    Returns
    -------
    ((r1, x1, b1), (r2, x2, b2))
        impedances and charging of the from-side and to-side sections
    """
    a = float(position)
    first = (a * branch.r, a * branch.x, a * branch.b_charging)
    second = ((1 - a) * branch.r, (1 - a) * branch.x, (1 - a) * branch.b_charging)
    return first, second


def machine_params(case, frequency=None):
    """inertia and damping of every generator converted to the system base"""
    frequency = default_settings.sim.frequency if frequency is None else frequency
    scale = np.array([g.mva_base for g in case.generators]) / case.system_mva_base
    h = np.array([g.inertia_h for g in case.generators]) * scale
    d = np.array([g.damping_d for g in case.generators]) * scale
    return MachineParams(h, d, 2 * np.pi * frequency)


def _augmented_matrix(case, mask, load_admittance, xd_sys, extra_nodes=0):
    """bus matrix with loads, plus generator internal nodes and `extra_nodes` spare nodes"""
    n_bus, n_gen = case.n_buses, len(case.generators)
    n = n_bus + n_gen + extra_nodes
    ys, bc2 = branch_parameters(case)
    y = stamp_branches(n, case.branch_ends[mask], ys[mask], bc2[mask])
    shunt = np.array([b.g_shunt + 1j * b.b_shunt for b in case.buses])
    y[np.arange(n_bus), np.arange(n_bus)] += shunt + load_admittance
    gen_ends = np.column_stack([case.generator_positions, n_bus + np.arange(n_gen)])
    y += stamp_branches(n, gen_ends, 1 / (1j * xd_sys), np.zeros(n_gen))
    return y


def electrical_power(state, net):
    """
    Real power delivered by every machine into a reduced network.

    Pe_i = sum_j E_i E_j (G_ij cos(d_i - d_j) + B_ij sin(d_i - d_j))

    Parameters
    ----------
    state: MachineState
    net: ReducedNetwork or ndarray

    Returns
    -------
    ndarray, shape (g,)

    Examples
    --------
    >>> import numpy as np
    >>> from tsaboost._src.sim.sim_networks import MachineState, electrical_power
    >>> y = np.array([[-2j, 2j], [2j, -2j]])
    >>> st = MachineState(np.array([np.pi / 2, 0]), np.zeros(2), np.ones(2), np.zeros(2))
    >>> print(electrical_power(st, y).round(12))
    [ 2. -2.]
    """
    y = getattr(net, "y_reduced", net)
    delta = np.asarray(state.delta, dtype=float)
    if y.shape != (len(delta), len(delta)):
        raise TsaBadInputShape(
            f"network of shape {y.shape} does not match {len(delta)} machines"
        )
    e = state.e_mag * np.exp(1j * delta)
    return (e * np.conj(y @ e)).real


def build_stage_networks(case, solution, scenario, fault_conductance=None):
    """
    Build the pre-fault, fault-on and post-fault reduced networks of a scenario and
    the equilibrium machine states.

    Loads become constant admittances at the solved voltages, every generator gets an
    internal node behind its transient reactance. The fault-on network splits the
    faulted branch at `fault_position` into two pi sections whose junction is grounded
    through `fault_conductance`. The post-fault network lacks the faulted branch.

    Parameters
    ----------
    case: GridCase
    solution: PowerFlowSolution
        converged pre-fault operating point
    scenario: FaultScenario
    fault_conductance: float, optional
        default `defaults.sim.fault_conductance`

    Returns
    -------
    (StageNetworks, MachineState)

    Raises
    ------
    SingularNetworkError
    """
    if not solution.converged:
        raise TsaBadUserInput("Input parameter `solution` must be a converged power flow.")
    if not case.generators:
        raise TsaBadUserInput("Input parameter `case` must hold at least one generator.")
    g_fault = (
        default_settings.sim.fault_conductance
        if fault_conductance is None
        else fault_conductance
    )
    n_bus, n_gen = case.n_buses, len(case.generators)
    machines = machine_params(case)
    gen_pos = case.generator_positions
    xd_sys = np.array(
        [g.xd_prime * case.system_mva_base / g.mva_base for g in case.generators]
    )

    factors = np.asarray(scenario.loading.load_factors, dtype=float)
    s_load = np.array([b.p_load + 1j * b.q_load for b in case.buses]) * factors
    v = solution.voltage
    y_load = np.conj(s_load) / np.abs(v) ** 2

    # equilibrium internal EMFs from the solved generator outputs
    s_gen = (solution.p_inj + 1j * solution.q_inj + s_load)[gen_pos]
    i_gen = np.conj(s_gen / v[gen_pos])
    e = v[gen_pos] + 1j * xd_sys * i_gen

    internal = n_bus + np.arange(n_gen)
    mask = case.in_service_mask()
    y_pre = _augmented_matrix(case, mask, y_load, xd_sys)
    pre = ReducedNetwork(kron_reduce(y_pre, internal), Stage.PRE_FAULT)

    if scenario.fault_branch is None:
        fault = ReducedNetwork(pre.y_reduced, Stage.FAULT_ON)
        post = ReducedNetwork(pre.y_reduced, Stage.POST_FAULT)
        y_post, post_mask = y_pre, mask
    else:
        k = int(scenario.fault_branch)
        if not 0 <= k < case.n_branches or not mask[k]:
            raise TsaBadUserInput(
                f"Input parameter `fault_branch` must be an in-service branch index.\n"
                f"Instead received {scenario.fault_branch}."
            )
        post_mask = mask.copy()
        post_mask[k] = False

        y_fault = _augmented_matrix(case, post_mask, y_load, xd_sys, extra_nodes=1)
        node_f = n_bus + n_gen
        f_pos, t_pos = case.branch_ends[k]
        sections = split_branch_sections(case.branches[k], scenario.fault_position)
        rxb = np.array(sections)
        ys_sec = 1 / (rxb[:, 0] + 1j * rxb[:, 1])
        bc2_sec = 1j * rxb[:, 2] / 2
        ends = np.array([[f_pos, node_f], [node_f, t_pos]])
        y_fault += stamp_branches(n_bus + n_gen + 1, ends, ys_sec, bc2_sec)
        y_fault[node_f, node_f] += g_fault
        fault = ReducedNetwork(kron_reduce(y_fault, internal), Stage.FAULT_ON)

        y_post = _augmented_matrix(case, post_mask, y_load, xd_sys)
        post = ReducedNetwork(kron_reduce(y_post, internal), Stage.POST_FAULT)

    state = MachineState(
        delta=np.angle(e),
        omega=np.zeros(n_gen),
        e_mag=np.abs(e),
        p_mech=np.zeros(n_gen),
    )
    state = MachineState(
        state.delta, state.omega, state.e_mag, electrical_power(state, pre)
    )
    nets = StageNetworks(pre, fault, post, machines, y_post, post_mask, n_bus)
    return nets, state
