""" input checks code"""
import numbers

import numpy as np

from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.exceptions import TsaBadUserInput


#################################################################
#################################################################
# FUNDAMENTAL CHECKS


def make_float_array(inp, msg: str):
    """transform inp to array with dtype=float, throw error with bad input
    inp: test object
    msg: str, error msg
    """
    try:
        inp_array = np.array(inp, dtype=float)
    except Exception as err:
        raise TsaBadUserInput(msg + f"{err}") from err
    return inp_array


def check_array_shape(inp: np.ndarray, dims: tuple, shape_m1, length=None, msg=""):
    """check if inp shape is allowed
    inp: test object
    dims: list, list of allowed dims
    shape_m1: shape of lowest level, if 'any' allow any shape
    msg: str, error msg
    """
    if inp.ndim in dims:
        if length is None:
            if shape_m1 == "any" or inp.shape[-1] == shape_m1:
                return None
        elif len(inp) == length:
            return None
    raise TsaBadInputShape(msg)


#################################################################
#################################################################
# SIMPLE CHECKS


def check_seed(inp, name="seed"):
    """check that a seed is a non-negative integer"""
    if (
        isinstance(inp, bool)
        or not isinstance(inp, numbers.Integral)
        or inp < 0
    ):
        raise TsaBadUserInput(
            f"Input parameter `{name}` must be a non-negative integer.\n"
            f"Instead received {inp!r}."
        )
    return int(inp)


def check_positive_int(inp, name, minimum=1):
    """check that inp is an integer >= minimum"""
    if (
        isinstance(inp, bool)
        or not isinstance(inp, numbers.Integral)
        or inp < minimum
    ):
        raise TsaBadUserInput(
            f"Input parameter `{name}` must be an integer >={minimum}.\n"
            f"Instead received {inp!r}."
        )
    return int(inp)


def check_fraction(inp, name, low=0.0, high=1.0):
    """check that inp is a number within [low, high]"""
    if isinstance(inp, bool) or not isinstance(inp, numbers.Real) or not low <= inp <= high:
        raise TsaBadUserInput(
            f"Input parameter `{name}` must be a number within [{low}, {high}].\n"
            f"Instead received {inp!r}."
        )
    return float(inp)


#################################################################
#################################################################
# CHECK - FORMAT


def check_format_features(inp, n_features=None, name="features"):
    """check and format a feature vector or matrix, returns a 2D float array"""
    arr = make_float_array(inp, f"Input parameter `{name}` must be numeric.\n")
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    check_array_shape(
        arr,
        dims=(2,),
        shape_m1="any",
        msg=f"Input parameter `{name}` must be of shape (d,) or (n, d).\n"
        f"Instead received shape {arr.shape}.",
    )
    if n_features is not None and arr.shape[1] != n_features:
        raise TsaBadInputShape(f"expected {n_features}, got {arr.shape[1]}")
    return arr


def check_finite_features(arr, name="features"):
    """raise naming the first non-finite cell of a 2D array (0-based row/column)"""
    bad = ~np.isfinite(arr)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise TsaBadUserInput(
            f"Input parameter `{name}` must be finite.\n"
            f"Instead received {arr[row, col]} at row {row}, column {col}."
        )


def check_format_labels(inp, n_samples=None, name="labels"):
    """check and format a binary label vector"""
    arr = np.asarray(inp)
    if arr.ndim != 1:
        raise TsaBadInputShape(
            f"Input parameter `{name}` must be one-dimensional.\n"
            f"Instead received shape {arr.shape}."
        )
    if n_samples is not None and len(arr) != n_samples:
        raise TsaBadInputShape(
            f"Input parameter `{name}` must have length {n_samples}.\n"
            f"Instead received length {len(arr)}."
        )
    if not np.isin(arr, (0, 1)).all():
        raise TsaBadUserInput(
            f"Input parameter `{name}` must only contain 0 and 1.\n"
            f"Instead received values {np.unique(arr)}."
        )
    return arr.astype(np.int64)
