"""Randomized loading scenarios and screened operating points."""
import logging
from dataclasses import dataclass

import numpy as np

from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.exceptions import OperatingPointError
from tsaboost._src.exceptions import SingularJacobianError
from tsaboost._src.grid.grid_powerflow import solve_power_flow
from tsaboost._src.grid.grid_powerflow import voltage_screen
from tsaboost._src.input_checks import check_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LoadingScenario:
    """per-bus load multipliers (P and Q scaled alike) and the generation scale"""

    load_factors: np.ndarray
    gen_scale: float

    @classmethod
    def base(cls, case):
        """unit load factors with generation balanced by the loss allowance"""
        factors = np.ones(case.n_buses)
        return cls(factors, _gen_scale(case, factors, default_settings.grid.loss_fraction))


def _gen_scale(case, factors, loss_fraction):
    base_gen = sum(g.p_gen for g in case.generators)
    if base_gen <= 0:
        return 1.0
    scaled_load = float(np.dot(factors, [b.p_load for b in case.buses]))
    return (scaled_load + loss_fraction * base_gen) / base_gen


def sample_loading(case, rng_seed, config=None):
    """
    Draw a loading scenario.

    Load factors are uniform in [load_min, load_max], one per bus or a single shared
    one when `config.global_load_factor` is set. Generation is scaled uniformly to the
    scaled total load plus a loss allowance of `loss_fraction` times the base total
    generation; the slack bus absorbs the residual.

    Parameters
    ----------
    case: GridCase
    rng_seed: int
    config: GridConfig, optional
        defaults to `defaults.grid`

    Returns
    -------
    LoadingScenario

    Examples
    --------
    >>> from tsaboost._src.grid.grid_case import load_case
    >>> from tsaboost._src.grid.grid_loading import sample_loading
    >>> sc = sample_loading(load_case(), 7)
    >>> bool(((sc.load_factors >= 0.7) & (sc.load_factors <= 1.3)).all())
    True
    """
    cfg = default_settings.grid if config is None else config
    rng = np.random.default_rng(check_seed(rng_seed, "rng_seed"))
    if cfg.global_load_factor:
        factors = np.full(case.n_buses, rng.uniform(cfg.load_min, cfg.load_max))
    else:
        factors = rng.uniform(cfg.load_min, cfg.load_max, size=case.n_buses)
    return LoadingScenario(factors, _gen_scale(case, factors, cfg.loss_fraction))


def draw_operating_point(case, rng_seed, config=None):
    """
    Sample, solve and voltage-screen an operating point.

    The first draw uses `rng_seed` itself, redraw `k` uses a seed derived from
    `(rng_seed, k)`. Rejected draws (non-convergence or screen violation) are redrawn
    up to `config.max_redraws` times.

    Returns
    -------
    (LoadingScenario, PowerFlowSolution)

    Raises
    ------
    OperatingPointError
        no admissible operating point within the redraw budget
    """
    cfg = default_settings.grid if config is None else config
    rng_seed = check_seed(rng_seed, "rng_seed")
    seed = rng_seed
    for attempt in range(cfg.max_redraws + 1):
        if attempt:
            seed = int(np.random.SeedSequence([rng_seed, attempt]).generate_state(1)[0])
        scenario = sample_loading(case, seed, cfg)
        try:
            solution = solve_power_flow(
                case, scenario, cfg.pf_tolerance, cfg.pf_max_iterations
            )
        except SingularJacobianError:
            logger.debug("singular Jacobian on draw %d", attempt)
            continue
        if solution.converged and voltage_screen(solution, cfg.v_min, cfg.v_max):
            if attempt:
                logger.debug("operating point accepted after %d redraws", attempt)
            return scenario, solution
    raise OperatingPointError(
        f"no operating point within [{cfg.v_min}, {cfg.v_max}] p.u. "
        f"after {cfg.max_redraws} redraws (seed {rng_seed})"
    )
