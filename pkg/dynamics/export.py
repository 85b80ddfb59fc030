"""CSV export of trajectories."""

import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from utils.config import config
from dynamics.shared import Trajectory

logger = logging.getLogger(__name__)


def trajectory_to_frame(trajectory: Trajectory) -> pd.DataFrame:
    """One row per state: step,time,p_1..p_n,xi_norm,angle_prev,angle_eq,A."""
    prices = trajectory.unit_prices
    columns = {
        "step": np.arange(len(trajectory)),
        "time": trajectory.times,
    }
    for i in range(trajectory.n_commodities):
        columns[f"p_{i + 1}"] = prices[:, i]
    columns["xi_norm"] = trajectory.xi_norm
    columns["angle_prev"] = trajectory.angle_prev
    columns["angle_eq"] = trajectory.angle_eq
    columns["A"] = trajectory.scale
    return pd.DataFrame(columns)


def write_trajectory_csv(trajectory: Trajectory, path: Union[str, Path]) -> Path:
    """Write the trajectory with full float precision; missing values are empty fields."""
    path = Path(path)
    trajectory_to_frame(trajectory).to_csv(
        path, index=False, float_format=config.CSV_FLOAT_FORMAT, na_rep="", lineterminator="\n"
    )
    logger.info(f"Wrote {len(trajectory)} states to {path}")
    return path
