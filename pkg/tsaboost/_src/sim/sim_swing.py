"""Swing-equation integration and the transient stability index."""
import logging
import math
from dataclasses import dataclass

import numpy as np

from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.sim.sim_networks import MachineState

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SwingTrajectory:
    """
    Recorded machine angles (rad) and speed deviations (p.u.) at every step.

    `clearing_index` is the row recorded at the clearing instant. A diverged
    trajectory is truncated after the last finite state.
    """

    times: np.ndarray
    delta: np.ndarray
    omega: np.ndarray
    e_mag: np.ndarray
    p_mech: np.ndarray
    clearing_index: int
    diverged: bool

    def state(self, index):
        """MachineState at row `index`"""
        return MachineState(self.delta[index], self.omega[index], self.e_mag, self.p_mech)

    @property
    def clearing_state(self):
        """MachineState at the clearing instant"""
        return self.state(self.clearing_index)


def _derivatives(delta, omega, e_mag, p_mech, y, h2, d, omega_s):
    e = e_mag * np.exp(1j * delta)
    p_e = (e * np.conj(y @ e)).real
    return omega_s * omega, (p_mech - p_e - d * omega) / h2


def _n_steps(duration, dt):
    if duration <= 0:
        return 0
    return max(1, math.ceil(duration / dt - 1e-9))


def integrate_swing(init, nets, scenario, dt):
    """
    Integrate the classical swing equations with fixed-step RK4.

    2H_i d(omega_i)/dt = Pm_i - Pe_i - D_i omega_i,  d(delta_i)/dt = omega_s omega_i

    which is M_i d(omega_s omega_i)/dt = Pm_i - Pe_i - D_i omega_i with M_i = 2H_i/omega_s.
    The fault-on network is active on [0, clearing_time], the post-fault network on
    [clearing_time, sim_horizon]. Each interval is covered by the largest step not
    exceeding `dt` that ends exactly on the interval boundary.

    Parameters
    ----------
    init: MachineState
    nets: StageNetworks
    scenario: FaultScenario
    dt: float
        nominal step in seconds

    Returns
    -------
    SwingTrajectory
    """
    if not dt > 0:
        raise TsaBadUserInput(f"Input parameter `dt` must be positive.\nInstead received {dt}.")
    tc, horizon = float(scenario.clearing_time), float(scenario.sim_horizon)
    n1 = _n_steps(tc, dt)
    n2 = _n_steps(horizon - tc, dt)
    n_gen = len(init.delta)

    times = np.empty(n1 + n2 + 1)
    delta = np.empty((n1 + n2 + 1, n_gen))
    omega = np.empty((n1 + n2 + 1, n_gen))
    times[0] = 0.0
    delta[0] = init.delta
    omega[0] = init.omega

    m = nets.machines
    args = (init.e_mag, init.p_mech)
    h2, d, omega_s = 2 * m.inertia_h, m.damping_d, m.omega_s
    phases = (
        (nets.fault.y_reduced, n1, tc / n1 if n1 else 0.0, 0.0),
        (nets.post.y_reduced, n2, (horizon - tc) / n2 if n2 else 0.0, tc),
    )

    row = 0
    diverged = False
    x_d, x_w = delta[0].copy(), omega[0].copy()
    with np.errstate(over="ignore", invalid="ignore"):
        for y, n_steps, h, t0 in phases:
            rhs = (*args, y, h2, d, omega_s)
            for step in range(n_steps):
                k1d, k1w = _derivatives(x_d, x_w, *rhs)
                k2d, k2w = _derivatives(x_d + 0.5 * h * k1d, x_w + 0.5 * h * k1w, *rhs)
                k3d, k3w = _derivatives(x_d + 0.5 * h * k2d, x_w + 0.5 * h * k2w, *rhs)
                k4d, k4w = _derivatives(x_d + h * k3d, x_w + h * k3w, *rhs)
                x_d = x_d + h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d)
                x_w = x_w + h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w)
                if not (np.all(np.isfinite(x_d)) and np.all(np.isfinite(x_w))):
                    diverged = True
                    break
                row += 1
                times[row] = t0 + (step + 1) * h
                delta[row] = x_d
                omega[row] = x_w
            if diverged:
                break

    if diverged:
        logger.debug("trajectory diverged at t=%.4f s", times[row])
    return SwingTrajectory(
        times=times[: row + 1],
        delta=delta[: row + 1],
        omega=omega[: row + 1],
        e_mag=np.asarray(init.e_mag),
        p_mech=np.asarray(init.p_mech),
        clearing_index=min(n1, row),
        diverged=diverged,
    )


def tsi_from_delta_max(delta_max_deg):
    """
    Transient stability index of a maximum rotor angle spread in degrees.

    Examples
    --------
    >>> from tsaboost._src.sim.sim_swing import tsi_from_delta_max
    >>> tsi_from_delta_max(0.0), tsi_from_delta_max(360.0)
    (1.0, 0.0)
    """
    d = float(delta_max_deg)
    if math.isinf(d):
        return -1.0
    return max(-1.0, (360.0 - d) / (360.0 + d))


def max_angle_spread(trajectory, clearing_time):
    """largest pairwise rotor angle difference in degrees over t >= clearing_time"""
    rows = trajectory.times >= clearing_time - 1e-9
    if not rows.any():
        if not trajectory.diverged:
            raise TsaBadUserInput(
                "Input parameter `trajectory` holds no state after the clearing time."
            )
        rows = np.ones(len(trajectory.times), dtype=bool)
    delta = trajectory.delta[rows]
    spread = delta.max(axis=1) - delta.min(axis=1)
    return float(np.degrees(spread.max()))


def compute_tsi(trajectory, clearing_time):
    """
    TSI = (360 - dmax) / (360 + dmax), dmax the largest pairwise angle spread in
    degrees over the post-clearing window. Diverged trajectories use the recorded
    portion; the result is floored at -1.
    """
    return tsi_from_delta_max(max_angle_spread(trajectory, clearing_time))
