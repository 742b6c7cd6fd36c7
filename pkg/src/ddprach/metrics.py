"""Ranging error statistics: RMSE, LoS bound, CDF and the results CSV."""

import csv
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ErrorSample",
    "SplitRmse",
    "ResultRecord",
    "RESULTS_HEADER",
    "rmse",
    "split_rmse",
    "error_cdf",
    "rmse_los_bound",
    "write_results_csv",
    "read_results_csv",
]


@dataclass
class ErrorSample:
    """One ranging error with its context."""

    error_m: float
    los: bool
    scheme: str = ""


@dataclass
class SplitRmse:
    """RMSE split by LoS condition; a subset with no samples is None."""

    los_m: float | None
    nlos_m: float | None
    total_m: float


def _rmse_values(errors: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.square(errors))))


def rmse(samples) -> float:
    """Root mean square of the sample errors."""
    if len(samples) == 0:
        raise ValueError("rmse needs at least one sample")
    return _rmse_values(np.array([s.error_m for s in samples], dtype=float))


def split_rmse(samples) -> SplitRmse:
    """RMSE over the LoS subset, the NLoS subset and all samples."""
    if len(samples) == 0:
        raise ValueError("split_rmse needs at least one sample")
    los = [s.error_m for s in samples if s.los]
    nlos = [s.error_m for s in samples if not s.los]
    return SplitRmse(
        los_m=_rmse_values(np.asarray(los)) if los else None,
        nlos_m=_rmse_values(np.asarray(nlos)) if nlos else None,
        total_m=rmse(samples),
    )


def error_cdf(samples) -> list[tuple[float, float]]:
    """Empirical CDF of the absolute errors.

    Returns ``(abscissa, probability)`` step points at each distinct
    absolute error, right-continuous and reaching probability 1.0.
    """
    if len(samples) == 0:
        raise ValueError("error_cdf needs at least one sample")
    magnitudes = np.sort(np.abs(np.array([s.error_m for s in samples], dtype=float)))
    n = magnitudes.size
    points = []
    for i, value in enumerate(magnitudes):
        if i + 1 < n and magnitudes[i + 1] == value:
            continue  # keep only the last (highest) step of duplicates
        points.append((float(value), (i + 1) / n))
    return points


def rmse_los_bound(m: int, k: int, p_t_watts: float, h_squared: float) -> float:
    """Lower bound on the LoS ranging RMSE.

    ``sqrt( 6 / (4 pi M K (M^2 - 1) P_t) * 1 / |h|^2 )`` for M subcarriers,
    K symbols, transmit power P_t and squared channel gain |h|^2.  Scales as
    ``1 / |h|``.
    """
    if m < 2 or k < 1:
        raise ValueError("need m >= 2 and k >= 1")
    if p_t_watts <= 0 or h_squared <= 0:
        raise ValueError("p_t_watts and h_squared must be positive")
    return math.sqrt(
        6.0 / (4.0 * math.pi * m * k * (m**2 - 1) * p_t_watts) / h_squared
    )


# ---------------------------------------------------------------------------
# results CSV
# ---------------------------------------------------------------------------

RESULTS_HEADER = [
    "scheme",
    "delta_f_hz",
    "speed_mps",
    "point_index",
    "los_tag",
    "true_d_m",
    "est_d_m",
    "error_m",
    "detected",
]


@dataclass
class ResultRecord:
    """One row of the simulation results CSV."""

    scheme: str
    delta_f_hz: float
    speed_mps: float
    point_index: int
    los_tag: bool
    true_d_m: float
    est_d_m: float | None
    error_m: float | None
    detected: bool


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


def write_results_csv(path, records) -> None:
    """Write result records in the canonical column order."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_HEADER)
        for rec in records:
            writer.writerow(
                [
                    rec.scheme,
                    _fmt(rec.delta_f_hz),
                    _fmt(rec.speed_mps),
                    str(rec.point_index),
                    "los" if rec.los_tag else "nlos",
                    _fmt(rec.true_d_m),
                    _fmt(rec.est_d_m),
                    _fmt(rec.error_m),
                    "1" if rec.detected else "0",
                ]
            )


def read_results_csv(path) -> list[ResultRecord]:
    """Read back a results CSV written by :func:`write_results_csv`."""
    records = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != RESULTS_HEADER:
            raise ValueError(f"{path}: unexpected results header {header}")
        for row in reader:
            records.append(
                ResultRecord(
                    scheme=row[0],
                    delta_f_hz=float(row[1]),
                    speed_mps=float(row[2]),
                    point_index=int(row[3]),
                    los_tag=row[4] == "los",
                    true_d_m=float(row[5]),
                    est_d_m=float(row[6]) if row[6] else None,
                    error_m=float(row[7]) if row[7] else None,
                    detected=row[8] == "1",
                )
            )
    return records
