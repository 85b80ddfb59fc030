"""JSON and CSV serialisation of analysis results."""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from utils.config import config
from utils.float_utils import complex_to_pair, to_float_list
from analysis.cycles import CycleReport, SweepRow
from analysis.stability import StabilityReport

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["gamma_hat", "alpha_measured", "alpha_predicted", "eq21_residual", "converged"]


def _number(value: Optional[float]) -> Optional[float]:
    """JSON has no NaN; missing and undefined values become null."""
    if value is None:
        return None
    value = float(value)
    return None if math.isnan(value) else value


def stability_report_to_dict(report: StabilityReport) -> Dict[str, Any]:
    return {
        "equilibrium": to_float_list(report.equilibrium),
        "eigenvalues": [complex_to_pair(v) for v in report.eigenvalues],
        "tangent_eigenvalues": [complex_to_pair(v) for v in report.tangent_eigenvalues],
        "zero_mode_residual": report.zero_mode_residual,
        "zero_mode_ok": report.zero_mode_ok,
        "stable": report.stable,
        "complex_modes": report.complex_modes,
        "lambda_m": _number(report.lambda_m),
        "classical_rate": _number(report.classical_rate),
        "predicted_rate": complex_to_pair(report.predicted_rate) if report.predicted_rate is not None else None,
        "fitted_rate": _number(report.fitted_rate),
        "notes": list(report.notes),
    }


def cycle_report_to_dict(report: Optional[CycleReport]) -> Optional[Dict[str, Any]]:
    if report is None:
        return None
    return {
        "a": to_float_list(report.a),
        "b": to_float_list(report.b),
        "alpha": report.alpha,
        "repeats": report.repeats,
        "xi_norm_at_a": report.xi_norm_at_a,
        "xi_hat_norm_at_a": _number(report.xi_hat_norm_at_a),
        "eq21_residual": _number(report.eq21_residual),
        "alpha_predicted": _number(report.alpha_predicted),
    }


def sweep_row_to_dict(row: SweepRow) -> Dict[str, Any]:
    return {
        "gamma_hat": row.gamma_hat,
        "alpha_measured": _number(row.alpha_measured),
        "alpha_predicted": _number(row.alpha_predicted),
        "eq21_residual": _number(row.eq21_residual),
        "converged": row.converged,
        "final_angle_eq": _number(row.final_angle_eq),
        "error": row.error,
    }


def write_json(payload: Dict[str, Any], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n")
    logger.info(f"Wrote {path}")
    return path


def sweep_to_frame(rows: List[SweepRow]) -> pd.DataFrame:
    frame = pd.DataFrame(
        {
            "gamma_hat": [row.gamma_hat for row in rows],
            "alpha_measured": [row.alpha_measured for row in rows],
            "alpha_predicted": [row.alpha_predicted for row in rows],
            "eq21_residual": [row.eq21_residual for row in rows],
            "converged": [str(row.converged).lower() for row in rows],
        },
        columns=SWEEP_COLUMNS,
    )
    return frame


def write_sweep_csv(rows: List[SweepRow], path: Union[str, Path]) -> Path:
    """Sweep table; rows without a cycle leave the alpha columns empty."""
    path = Path(path)
    sweep_to_frame(rows).to_csv(
        path, index=False, float_format=config.CSV_FLOAT_FORMAT, na_rep="", lineterminator="\n"
    )
    logger.info(f"Wrote {len(rows)} sweep rows to {path}")
    return path
