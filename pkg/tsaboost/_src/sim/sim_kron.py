"""Kron reduction of nodal admittance matrices."""
import numpy as np
import scipy.linalg

from tsaboost._src.exceptions import SingularNetworkError


def kron_reduce(y_full, keep):
    """
    Eliminate all nodes not in `keep` from a nodal admittance matrix.

    Returns Y_kk - Y_ke Y_ee^-1 Y_ek, which preserves the current/voltage relation at
    the kept nodes when no current is injected at the eliminated ones.

    Parameters
    ----------
    y_full: ndarray, shape (n, n), complex
    keep: sequence of int
        kept node positions, the result follows this order

    Returns
    -------
    ndarray, shape (len(keep), len(keep)), complex

    Raises
    ------
    SingularNetworkError
        the eliminated block cannot be inverted

    Examples
    --------
    >>> import numpy as np
    >>> from tsaboost._src.sim.sim_kron import kron_reduce
    >>> y = np.array([[2, 0, -2], [0, 2, -2], [-2, -2, 4]], dtype=complex)
    >>> print(kron_reduce(y, [0, 1]).real)
    [[ 1. -1.]
     [-1.  1.]]
    """
    y_full = np.asarray(y_full, dtype=complex)
    keep = np.asarray(keep, dtype=int)
    elim = np.setdiff1d(np.arange(len(y_full)), keep)
    y_kk = y_full[np.ix_(keep, keep)]
    if elim.size == 0:
        return y_kk.copy()
    y_ke = y_full[np.ix_(keep, elim)]
    y_ek = y_full[np.ix_(elim, keep)]
    y_ee = y_full[np.ix_(elim, elim)]
    try:
        x = scipy.linalg.solve(y_ee, y_ek)
    except (scipy.linalg.LinAlgError, ValueError) as err:
        raise SingularNetworkError(
            f"eliminated block of size {elim.size} is singular"
        ) from err
    if not np.all(np.isfinite(x)):
        raise SingularNetworkError(f"eliminated block of size {elim.size} is singular")
    return y_kk - y_ke @ x
