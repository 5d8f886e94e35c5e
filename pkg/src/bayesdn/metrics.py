"""Loss functions and classification scores for network recovery.

Undefined ratios (empty denominator classes) evaluate to ``NA``, a NaN
marker, rather than raising; downstream writers render it as "NA".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "NA",
    "is_na",
    "LossReport",
    "ConfusionCounts",
    "Scores",
    "matrix_losses",
    "eigen_losses",
    "loss_report",
    "confusion",
    "classification_scores",
]

NA = float("nan")


def is_na(x: float) -> bool:
    return isinstance(x, float) and math.isnan(x)


@dataclass(frozen=True)
class LossReport:
    """Six losses comparing an estimated matrix against the truth."""

    l1: float
    l2: float
    el1: float
    el2: float
    maxel1: float
    minel1: float

    def as_dict(self) -> dict[str, float]:
        return {
            "l1": self.l1,
            "l2": self.l2,
            "el1": self.el1,
            "el2": self.el2,
            "maxel1": self.maxel1,
            "minel1": self.minel1,
        }


@dataclass(frozen=True)
class ConfusionCounts:
    """Edge decisions over the strict upper triangle."""

    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


class Scores(NamedTuple):
    sp: float
    se: float
    fnr: float
    f1: float
    mcc: float


def _check_dims(est: np.ndarray, truth: np.ndarray) -> None:
    if est.shape != truth.shape or est.ndim != 2 or est.shape[0] != est.shape[1]:
        raise ValueError(f"dimension mismatch: {est.shape} vs {truth.shape}")


def matrix_losses(est: np.ndarray, truth: np.ndarray) -> tuple[float, float]:
    """Max absolute column sum and Frobenius norm of the difference."""
    _check_dims(est, truth)
    diff = est - truth
    l1 = float(np.max(np.sum(np.abs(diff), axis=0)))
    l2 = float(np.linalg.norm(diff, "fro"))
    return l1, l2


def eigen_losses(est: np.ndarray, truth: np.ndarray) -> tuple[float, float, float, float]:
    """Eigenvalue losses, spectra paired after ascending sort.

    Returns ``(el1, el2, maxel1, minel1)`` where el1 is the mean absolute
    eigenvalue gap, el2 the mean squared gap, and the last two compare the
    extreme eigenvalues.
    """
    _check_dims(est, truth)
    p = est.shape[0]
    ge = np.linalg.eigvalsh(est)
    gt = np.linalg.eigvalsh(truth)
    el1 = float(np.sum(np.abs(ge - gt)) / p)
    el2 = float(np.sum((ge - gt) ** 2) / p)
    maxel1 = float(abs(ge[-1] - gt[-1]))
    minel1 = float(abs(ge[0] - gt[0]))
    return el1, el2, maxel1, minel1


def loss_report(est: np.ndarray, truth: np.ndarray) -> LossReport:
    l1, l2 = matrix_losses(est, truth)
    el1, el2, maxel1, minel1 = eigen_losses(est, truth)
    return LossReport(l1=l1, l2=l2, el1=el1, el2=el2, maxel1=maxel1, minel1=minel1)


def confusion(est: np.ndarray, truth: np.ndarray) -> ConfusionCounts:
    """Count edge decisions over i < j; diagonals never score."""
    est = np.asarray(est, dtype=bool)
    truth = np.asarray(truth, dtype=bool)
    _check_dims(est, truth)
    iu = np.triu_indices(est.shape[0], k=1)
    e = est[iu]
    t = truth[iu]
    tp = int(np.sum(e & t))
    tn = int(np.sum(~e & ~t))
    fp = int(np.sum(e & ~t))
    fn = int(np.sum(~e & t))
    return ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else NA


def classification_scores(c: ConfusionCounts) -> Scores:
    """Specificity, sensitivity, false-negative rate, F1, and MCC.

    Any score whose denominator class is empty comes back as ``NA``.
    """
    tp, tn, fp, fn = c.tp, c.tn, c.fp, c.fn
    if min(tp, tn, fp, fn) < 0:
        raise ValueError("confusion counts must be non-negative")
    sp = _ratio(tn, tn + fp)
    se = _ratio(tp, tp + fn)
    fnr = _ratio(fn, fn + tp)
    f1 = _ratio(tp, tp + 0.5 * (fp + fn))
    den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    mcc = (tp * tn - fp * fn) / math.sqrt(den) if den > 0 else NA
    return Scores(sp=sp, se=se, fnr=fnr, f1=f1, mcc=mcc)
