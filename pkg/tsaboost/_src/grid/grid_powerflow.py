"""Newton-Raphson power flow in polar coordinates."""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.exceptions import SingularJacobianError
from tsaboost._src.grid.grid_case import BusKind
from tsaboost._src.grid.grid_ybus import build_ybus

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PowerFlowSolution:
    """solved bus voltages and injections, per bus in case order"""

    v_mag: np.ndarray
    v_ang: np.ndarray
    p_inj: np.ndarray
    q_inj: np.ndarray
    converged: bool
    iterations: int
    max_mismatch: float

    @property
    def voltage(self):
        """complex voltage phasors"""
        return self.v_mag * np.exp(1j * self.v_ang)


def scheduled_injections(case, scenario):
    """scheduled complex injection per bus: scaled generation minus scaled load"""
    factors = np.asarray(scenario.load_factors, dtype=float)
    load = np.array([b.p_load + 1j * b.q_load for b in case.buses]) * factors
    gen = np.zeros(case.n_buses)
    np.add.at(gen, case.generator_positions, [g.p_gen for g in case.generators])
    return gen * scenario.gen_scale - load


def _jacobian(ybus, v, pvpq, pq):
    """polar power-flow Jacobian from the complex power derivatives"""
    ibus = ybus @ v
    v_norm = v / np.abs(v)
    ds_dvm = v[:, None] * np.conj(ybus * v_norm[None, :])
    ds_dvm[np.diag_indices_from(ds_dvm)] += np.conj(ibus) * v_norm
    ds_dva = -1j * v[:, None] * np.conj(ybus * v[None, :])
    ds_dva[np.diag_indices_from(ds_dva)] += 1j * v * np.conj(ibus)
    j11 = ds_dva[np.ix_(pvpq, pvpq)].real
    j12 = ds_dvm[np.ix_(pvpq, pq)].real
    j21 = ds_dva[np.ix_(pq, pvpq)].imag
    j22 = ds_dvm[np.ix_(pq, pq)].imag
    return np.block([[j11, j12], [j21, j22]])


def solve_power_flow(case, scenario, tolerance=None, max_iterations=None):
    """
    Solve the AC power flow of `case` under a loading scenario.

    Starts flat from the voltage setpoints, PV buses hold their setpoint magnitude and
    the slack bus absorbs the imbalance.

    Parameters
    ----------
    case: GridCase
    scenario: LoadingScenario
    tolerance: float, optional
        largest accepted |dP|, |dQ| in p.u., default `defaults.grid.pf_tolerance`
    max_iterations: int, optional
        default `defaults.grid.pf_max_iterations`

    Returns
    -------
    PowerFlowSolution
        `converged=False` with the final `max_mismatch` when the iteration limit is hit

    Raises
    ------
    SingularJacobianError
    """
    settings = default_settings.grid
    tol = settings.pf_tolerance if tolerance is None else tolerance
    max_it = settings.pf_max_iterations if max_iterations is None else max_iterations

    kinds = [b.kind for b in case.buses]
    pv = np.array([k for k, kind in enumerate(kinds) if kind is BusKind.PV], dtype=int)
    pq = np.array([k for k, kind in enumerate(kinds) if kind is BusKind.PQ], dtype=int)
    pvpq = np.concatenate([pv, pq])
    n_ang = len(pvpq)

    ybus = build_ybus(case)
    s_sched = scheduled_injections(case, scenario)
    v_mag = np.array(
        [b.v_setpoint if b.kind is not BusKind.PQ else 1.0 for b in case.buses]
    )
    v_ang = np.zeros(case.n_buses)

    iterations = 0
    while True:
        v = v_mag * np.exp(1j * v_ang)
        s_calc = v * np.conj(ybus @ v)
        mis = s_calc - s_sched
        residual = np.concatenate([mis.real[pvpq], mis.imag[pq]])
        norm = float(np.max(np.abs(residual))) if residual.size else 0.0
        if not np.isfinite(norm):
            break
        if norm < tol or iterations >= max_it:
            break
        jac = _jacobian(ybus, v, pvpq, pq)
        try:
            dx = scipy.linalg.solve(jac, -residual)
        except (scipy.linalg.LinAlgError, ValueError) as err:
            raise SingularJacobianError(
                f"power-flow Jacobian is singular at iteration {iterations}"
            ) from err
        v_ang[pvpq] += dx[:n_ang]
        v_mag[pq] += dx[n_ang:]
        iterations += 1

    converged = bool(np.isfinite(norm) and norm < tol)
    if not converged:
        logger.warning(
            "power flow did not converge after %d iterations, max mismatch %.3e",
            iterations,
            norm,
        )
    return PowerFlowSolution(
        v_mag=v_mag,
        v_ang=v_ang,
        p_inj=s_calc.real,
        q_inj=s_calc.imag,
        converged=converged,
        iterations=iterations,
        max_mismatch=norm,
    )


def voltage_screen(solution, v_min=None, v_max=None):
    """True if every bus magnitude lies within [v_min, v_max]"""
    settings = default_settings.grid
    v_min = settings.v_min if v_min is None else v_min
    v_max = settings.v_max if v_max is None else v_max
    return bool(np.all((solution.v_mag >= v_min) & (solution.v_mag <= v_max)))
