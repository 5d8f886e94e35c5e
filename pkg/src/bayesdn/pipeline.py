"""Real-data ingestion and preprocessing.

CSV reading with missing-row accounting, trailing moving averages,
rank-based marginal Gaussianization, date-boundary phase splitting, and
the classical homogeneity test for two covariance matrices.

CSV conventions: comma separated, UTF-8, header row required, '.' decimal
separator, dates in ISO-8601.
"""

from __future__ import annotations

import csv
import datetime
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri
from scipy.stats import chi2, rankdata

from .linalg import cholesky_pd, require_symmetric

__all__ = [
    "EmptyDataError",
    "Dataset",
    "PhaseSplit",
    "read_csv",
    "write_csv",
    "moving_average",
    "nonparanormal_transform",
    "boxs_m_test",
    "split_phases",
]


class EmptyDataError(ValueError):
    """The file contains a header but no data rows (or nothing at all)."""


@dataclass(frozen=True)
class Dataset:
    """Numeric columns, optional parsed dates, and the dropped-row count."""

    columns: list[str]
    rows: np.ndarray
    dates: list[datetime.date] | None = None
    n_dropped: int = 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows.shape


@dataclass(frozen=True)
class PhaseSplit:
    """Named contiguous, non-overlapping row ranges ``name -> (start, stop)``."""

    phases: dict[str, tuple[int, int]]

    def rows(self, dataset: Dataset, name: str) -> np.ndarray:
        start, stop = self.phases[name]
        return dataset.rows[start:stop]


def read_csv(path, date_column: str | None = None) -> Dataset:
    """Parse a headed CSV of numeric columns.

    Rows containing any blank cell are dropped and counted.  A non-blank
    cell that does not parse as a number is an error, as is a row with the
    wrong number of fields.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDataError(f"{path}: file is empty") from None
        header = [h.strip() for h in header]
        date_idx = None
        if date_column is not None:
            if date_column not in header:
                raise ValueError(f"{path}: date column {date_column!r} not in header {header}")
            date_idx = header.index(date_column)
        value_idx = [k for k in range(len(header)) if k != date_idx]
        if len(value_idx) < 2:
            raise ValueError(f"{path}: need at least 2 numeric columns, found {len(value_idx)}")

        rows: list[list[float]] = []
        dates: list[datetime.date] = []
        n_dropped = 0
        for ln, record in enumerate(reader, start=2):
            if len(record) != len(header):
                raise ValueError(
                    f"{path}:{ln}: expected {len(header)} fields, got {len(record)}"
                )
            if any(cell.strip() == "" for cell in record):
                n_dropped += 1
                continue
            values = []
            for k in value_idx:
                cell = record[k].strip()
                try:
                    values.append(float(cell))
                except ValueError:
                    raise ValueError(
                        f"{path}:{ln}: non-numeric value {cell!r} in column {header[k]!r}"
                    ) from None
            if date_idx is not None:
                cell = record[date_idx].strip()
                try:
                    dates.append(datetime.date.fromisoformat(cell))
                except ValueError:
                    raise ValueError(f"{path}:{ln}: bad ISO date {cell!r}") from None
            rows.append(values)

    if not rows:
        raise EmptyDataError(f"{path}: no data rows (dropped {n_dropped})")
    columns = [header[k] for k in value_idx]
    return Dataset(
        columns=columns,
        rows=np.asarray(rows, dtype=float),
        dates=dates if date_idx is not None else None,
        n_dropped=n_dropped,
    )


def write_csv(path, columns: list[str], rows: np.ndarray, dates=None, date_column="date") -> None:
    """Write numeric data so that a read-back reproduces it bit for bit.

    Floats are rendered with ``repr``, which round-trips exactly.
    """
    rows = np.asarray(rows)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if dates is not None:
            writer.writerow([date_column] + list(columns))
            for date, row in zip(dates, rows):
                writer.writerow([date.isoformat()] + [repr(float(v)) for v in row])
        else:
            writer.writerow(list(columns))
            for row in rows:
                writer.writerow([repr(float(v)) for v in row])


def moving_average(series: np.ndarray, window: int) -> np.ndarray:
    """Trailing mean over ``window`` points; output shrinks by window - 1."""
    series = np.asarray(series, dtype=float)
    if window < 1:
        raise ValueError("window must be >= 1")
    if series.ndim != 1:
        raise ValueError("series must be 1-d")
    if series.size < window:
        raise ValueError(f"series of length {series.size} shorter than window {window}")
    return np.convolve(series, np.ones(window), mode="valid") / window


def nonparanormal_transform(x: np.ndarray) -> np.ndarray:
    """Map every column through its shrunken empirical CDF to normal scores.

    Ranks (average rank on ties) are scaled by ``1 / (n + 1)`` and pushed
    through the standard normal quantile function, then each column is
    centered.  The result depends on the input only through the column
    orderings, so any strictly increasing per-column transformation of the
    input leaves it unchanged.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError("x must be 2-d")
    n = x.shape[0]
    if n < 3:
        raise ValueError("need at least 3 rows")
    out = np.empty_like(x)
    for j in range(x.shape[1]):
        col = x[:, j]
        if np.all(col == col[0]):
            raise ValueError(f"column {j} is constant")
        scores = ndtri(rankdata(col, method="average") / (n + 1))
        out[:, j] = scores - scores.mean()
    return out


def boxs_m_test(
    s1: np.ndarray, n1: int, s2: np.ndarray, n2: int
) -> tuple[float, float]:
    """Homogeneity test for two covariance matrices (chi-square form).

    ``s1`` and ``s2`` are the unbiased sample covariances of groups of
    sizes ``n1`` and ``n2``.  Returns the scaled statistic and its
    chi-square p-value with p(p+1)/2 degrees of freedom.
    """
    s1 = require_symmetric(s1, "s1")
    s2 = require_symmetric(s2, "s2")
    if s1.shape != s2.shape:
        raise ValueError("covariances must share dimensions")
    p = s1.shape[0]
    if min(n1, n2) <= p:
        raise ValueError(f"group sizes must exceed the dimension {p}")
    f1, f2 = n1 - 1, n2 - 1
    ftot = f1 + f2
    pooled = (f1 * s1 + f2 * s2) / ftot
    logdet1 = cholesky_pd(s1).logdet
    logdet2 = cholesky_pd(s2).logdet
    logdet_pooled = cholesky_pd(pooled).logdet
    m_stat = ftot * logdet_pooled - f1 * logdet1 - f2 * logdet2
    correction = (
        (2.0 * p * p + 3.0 * p - 1.0)
        / (6.0 * (p + 1.0))
        * (1.0 / f1 + 1.0 / f2 - 1.0 / ftot)
    )
    statistic = m_stat * (1.0 - correction)
    dof = p * (p + 1) / 2.0
    p_value = float(chi2.sf(statistic, dof))
    return float(statistic), p_value


def split_phases(
    dataset: Dataset,
    boundaries: list[datetime.date],
    names: list[str] | None = None,
) -> PhaseSplit:
    """Cut the dataset into contiguous phases at the boundary dates.

    Phase k covers rows with date >= boundary[k-1] and < boundary[k]; the
    first phase starts at the first row, the last ends at the last row.
    Boundaries must be sorted and fall inside the observed date range.
    A phase shorter than p + 1 rows triggers a warning, since a sample
    covariance from it cannot be full rank.
    """
    if dataset.dates is None:
        raise ValueError("dataset has no date column")
    dates = dataset.dates
    first, last = dates[0], dates[-1]
    if sorted(boundaries) != list(boundaries):
        raise ValueError("boundaries must be sorted")
    for b in boundaries:
        if b <= first or b > last:
            raise ValueError(f"boundary {b} outside data range ({first} .. {last}]")
    cuts = [0]
    for b in boundaries:
        k = next(i for i, d in enumerate(dates) if d >= b)
        cuts.append(k)
    cuts.append(len(dates))
    if names is None:
        names = [f"phase{k + 1}" for k in range(len(cuts) - 1)]
    if len(names) != len(cuts) - 1:
        raise ValueError(f"need {len(cuts) - 1} names, got {len(names)}")
    p = dataset.rows.shape[1]
    phases: dict[str, tuple[int, int]] = {}
    for name, start, stop in zip(names, cuts[:-1], cuts[1:]):
        if stop - start < p + 1:
            warnings.warn(
                f"phase {name!r} has {stop - start} rows, fewer than p + 1 = {p + 1}",
                stacklevel=2,
            )
        phases[name] = (start, stop)
    return PhaseSplit(phases=phases)
