"""Bus admittance matrix and pi-model branch flows."""
import numpy as np
from scipy.sparse import coo_matrix

from tsaboost._src.exceptions import TsaBadInputShape


def _format_mask(case, in_service):
    if in_service is None:
        return case.in_service_mask()
    mask = np.asarray(in_service, dtype=bool)
    if mask.shape != (case.n_branches,):
        raise TsaBadInputShape(
            f"Input parameter `in_service` must have length {case.n_branches}.\n"
            f"Instead received shape {mask.shape}."
        )
    return mask


def branch_parameters(case):
    """returns series admittance `ys` and half line charging `bc2` (both complex, length b)"""
    r = np.array([br.r for br in case.branches], dtype=float)
    x = np.array([br.x for br in case.branches], dtype=float)
    b = np.array([br.b_charging for br in case.branches], dtype=float)
    ys = 1 / (r + 1j * x)
    bc2 = 1j * b / 2
    return ys, bc2


def stamp_branches(n_nodes, ends, ys, bc2):
    """
    Sum pi-model branch stamps into a dense (n_nodes, n_nodes) complex matrix.

    Parameters
    ----------
    n_nodes: int
        matrix dimension
    ends: ndarray, shape (m, 2)
        from/to node positions
    ys: ndarray, shape (m,)
        series admittances
    bc2: ndarray, shape (m,)
        half of the total line charging admittance, put at both ends

    Returns
    -------
    ndarray, shape (n_nodes, n_nodes)
    """
    f, t = ends[:, 0], ends[:, 1]
    rows = np.concatenate([f, t, f, t])
    cols = np.concatenate([f, t, t, f])
    vals = np.concatenate([ys + bc2, ys + bc2, -ys, -ys])
    return coo_matrix((vals, (rows, cols)), shape=(n_nodes, n_nodes)).toarray()


def build_ybus(case, in_service=None):
    """
    Complex bus admittance matrix (a, a) of `case` in p.u.

    Parameters
    ----------
    case: GridCase
    in_service: array_like of bool, shape (b,), optional
        branch status mask, defaults to the statuses listed in the case

    Returns
    -------
    ndarray, shape (a, a), complex

    Examples
    --------
    >>> from tsaboost._src.grid.grid_case import parse_case
    >>> from tsaboost._src.grid.grid_ybus import build_ybus
    >>> case = parse_case('''
    ... [SYSTEM]
    ... mva_base=100
    ... [BUS]
    ... 1 SLACK 0 0 0 0 1.0
    ... 2 PQ 0 0 0 0 1.0
    ... [BRANCH]
    ... 1 2 0 0.1 0 1
    ... ''')
    >>> print(build_ybus(case).imag.round(6))
    [[-10.  10.]
     [ 10. -10.]]
    """
    mask = _format_mask(case, in_service)
    ys, bc2 = branch_parameters(case)
    ybus = stamp_branches(case.n_buses, case.branch_ends[mask], ys[mask], bc2[mask])
    shunt = np.array([bus.g_shunt + 1j * bus.b_shunt for bus in case.buses])
    ybus[np.diag_indices(case.n_buses)] += shunt
    return ybus


def branch_flows(case, voltages, in_service=None):
    """
    Complex power entering each branch at its from-end, in p.u.

    Parameters
    ----------
    case: GridCase
    voltages: ndarray of complex, shape (a,), or PowerFlowSolution
        bus voltage phasors in case order
    in_service: array_like of bool, shape (b,), optional
        out-of-service branches report (0, 0)

    Returns
    -------
    p, q: ndarray, shape (b,)
    """
    if hasattr(voltages, "voltage"):
        voltages = voltages.voltage
    v = np.asarray(voltages, dtype=complex)
    if v.shape != (case.n_buses,):
        raise TsaBadInputShape(
            f"Input parameter `voltages` must have length {case.n_buses}.\n"
            f"Instead received shape {v.shape}."
        )
    mask = _format_mask(case, in_service)
    ys, bc2 = branch_parameters(case)
    ends = case.branch_ends
    vf, vt = v[ends[:, 0]], v[ends[:, 1]]
    i_from = (ys + bc2) * vf - ys * vt
    s_from = np.where(mask, vf * np.conj(i_from), 0)
    return s_from.real, s_from.imag
