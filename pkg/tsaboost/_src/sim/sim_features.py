"""Feature vector at the fault clearing instant."""
import numpy as np
import scipy.linalg

from tsaboost._src.exceptions import SingularNetworkError
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.grid.grid_ybus import branch_flows


def feature_names(case):
    """
    Column names of the snapshot layout [V | TH | P | Q], 1-based in case order.

    Examples
    --------
    >>> from tsaboost._src.grid.grid_case import load_case
    >>> from tsaboost._src.sim.sim_features import feature_names
    >>> names = feature_names(load_case())
    >>> names[0], names[46], names[93], names[169]
    ('V_1', 'TH_8', 'P_16', 'Q_46')
    """
    a, b = case.n_buses, case.n_branches
    return (
        tuple(f"V_{k}" for k in range(1, a + 1))
        + tuple(f"TH_{k}" for k in range(1, a + 1))
        + tuple(f"P_{k}" for k in range(1, b + 1))
        + tuple(f"Q_{k}" for k in range(1, b + 1))
    )


def describe_feature(index, case):
    """
    Human-readable name of a snapshot feature.

    Examples
    --------
    >>> from tsaboost._src.grid.grid_case import load_case
    >>> from tsaboost._src.sim.sim_features import describe_feature
    >>> case = load_case()
    >>> describe_feature(46, case), describe_feature(132, case)
    ('theta bus 8', 'Q line 4-14')
    """
    a, b = case.n_buses, case.n_branches
    index = int(index)
    if not 0 <= index < case.n_features:
        raise TsaBadUserInput(
            f"Input parameter `index` must be within [0, {case.n_features}).\n"
            f"Instead received {index}."
        )
    if index < 2 * a:
        block, k = divmod(index, a)
        return f"{'V' if block == 0 else 'theta'} bus {case.buses[k].id}"
    block, k = divmod(index - 2 * a, b)
    br = case.branches[k]
    return f"{'P' if block == 0 else 'Q'} line {br.from_bus}-{br.to_bus}"


def bus_voltages(nets, state):
    """
    Bus voltage phasors of the post-fault network driven by the internal EMFs.

    The bus block of the unreduced matrix is solved with the generator internal nodes
    as sources: Y_bb V_b = -Y_bg E.

    Raises
    ------
    SingularNetworkError
    """
    y = nets.post_full
    n_bus = nets.n_buses
    e = state.e_mag * np.exp(1j * np.asarray(state.delta, dtype=float))
    y_bb = y[:n_bus, :n_bus]
    y_bg = y[:n_bus, n_bus:]
    try:
        v = scipy.linalg.solve(y_bb, -y_bg @ e)
    except (scipy.linalg.LinAlgError, ValueError) as err:
        raise SingularNetworkError("post-fault bus block is singular") from err
    if not np.all(np.isfinite(v)):
        raise SingularNetworkError("post-fault bus voltages are not finite")
    return v


def snapshot_features(case, nets, state):
    """
    Feature vector of length 2a+2b at the clearing instant.

    Layout: [0, a) voltage magnitudes, [a, 2a) voltage angles in rad, [2a, 2a+b)
    from-end active branch flows, [2a+b, 2a+2b) from-end reactive branch flows. The
    faulted branch is out of service and reports (0, 0).

    Parameters
    ----------
    case: GridCase
    nets: StageNetworks
    state: MachineState
        machine state right after clearing

    Returns
    -------
    ndarray, shape (2a+2b,)

    Raises
    ------
    SingularNetworkError
    """
    v = bus_voltages(nets, state)
    p, q = branch_flows(case, v, nets.post_in_service)
    return np.concatenate([np.abs(v), np.angle(v), p, q])
