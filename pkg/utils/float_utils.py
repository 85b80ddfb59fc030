"""Utility functions for float and array handling."""

from typing import Iterable, Union

import numpy as np

def to_array(value: Union[Iterable[float], np.ndarray]) -> np.ndarray:
    """Convert value to a 1-D float64 array."""
    if isinstance(value, np.ndarray) and value.dtype == np.float64 and value.ndim == 1:
        return value
    return np.asarray(value, dtype=np.float64).reshape(-1)

def to_float_list(value: Union[Iterable[float], np.ndarray]) -> list:
    """Convert an array to a plain list of Python floats (JSON friendly)."""
    return [float(v) for v in np.asarray(value, dtype=np.float64).reshape(-1)]

def complex_to_pair(value: complex) -> list:
    """Convert a complex number to [real, imag] for JSON."""
    value = complex(value)
    return [value.real, value.imag]
