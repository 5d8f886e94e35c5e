"""Dense symmetric / positive-definite matrix primitives.

Every matrix handled by this package is a plain ``numpy.ndarray`` that is
*exactly* symmetric: built by mirroring one triangle, never by averaging
``(m + m.T) / 2`` after the fact.  The helpers here validate and produce
such arrays, so symmetry violations surface at the boundary instead of
deep inside a sampler sweep.

Positive definiteness is decided by the Cholesky factorization with a
scale-aware pivot floor: a matrix is accepted iff the factorization
succeeds and every pivot exceeds ``PIVOT_RTOL * max(diag)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, get_lapack_funcs

__all__ = [
    "NotPositiveDefiniteError",
    "PDFactor",
    "PIVOT_RTOL",
    "mirror_lower",
    "require_symmetric",
    "cholesky_pd",
    "invert_pd",
    "partial_correlation",
    "partition_last",
    "assemble_last",
    "eigenvalues_sym",
]

# Relative pivot floor for accepting a Cholesky factorization as PD.
PIVOT_RTOL = 1e-12


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """The matrix is not positive definite.

    Attributes
    ----------
    minor : int or None
        1-based index of the first failing leading principal minor
        (LAPACK convention), when known.
    """

    def __init__(self, message: str, minor: int | None = None):
        super().__init__(message)
        self.minor = minor


@dataclass(frozen=True)
class PDFactor:
    """Lower Cholesky factor of a positive-definite matrix.

    ``lower @ lower.T`` reconstructs the source matrix; ``logdet`` is the
    log-determinant of the source matrix (twice the log of the factor's
    diagonal product).
    """

    lower: np.ndarray
    logdet: float


def mirror_lower(m: np.ndarray) -> np.ndarray:
    """Build an exactly symmetric matrix from the lower triangle of ``m``.

    Parameters
    ----------
    m : ndarray, shape (p, p)
        Square array; entries strictly above the diagonal are ignored.

    Returns
    -------
    ndarray
        New array with ``out[i, j] == out[j, i]`` bitwise.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    out = np.tril(m)
    out = out + np.tril(m, -1).T
    return out


def require_symmetric(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Validate that ``m`` is square and exactly symmetric.

    Returns ``m`` as a float ndarray.  Raises ``ValueError`` otherwise.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.array_equal(m, m.T):
        raise ValueError(f"{name} is not symmetric")
    return m


def cholesky_pd(m: np.ndarray) -> PDFactor:
    """Cholesky-factorize a symmetric positive-definite matrix.

    Parameters
    ----------
    m : ndarray, shape (p, p)
        Symmetric matrix.

    Returns
    -------
    PDFactor

    Raises
    ------
    NotPositiveDefiniteError
        If the factorization breaks down or any pivot falls at or below
        ``PIVOT_RTOL * max(diag(m))``.
    """
    m = require_symmetric(m)
    (potrf,) = get_lapack_funcs(("potrf",), (m,))
    c, info = potrf(m, lower=True, overwrite_a=False, clean=True)
    if info > 0:
        raise NotPositiveDefiniteError(
            f"leading minor of order {info} is not positive definite", minor=int(info)
        )
    if info < 0:
        raise ValueError(f"illegal argument {-info} passed to potrf")
    d = np.diag(c)
    floor = PIVOT_RTOL * float(np.max(np.diag(m)))
    pivots = d * d
    bad = np.nonzero(pivots <= floor)[0]
    if bad.size:
        k = int(bad[0]) + 1
        raise NotPositiveDefiniteError(
            f"pivot {k} ({pivots[bad[0]]:.3e}) at or below floor {floor:.3e}", minor=k
        )
    logdet = 2.0 * float(np.sum(np.log(d)))
    return PDFactor(lower=c, logdet=logdet)


def invert_pd(m: np.ndarray) -> np.ndarray:
    """Invert a symmetric positive-definite matrix via its Cholesky factor.

    The result is exactly symmetric (lower triangle mirrored).
    """
    fac = cholesky_pd(m)
    inv = cho_solve((fac.lower, True), np.eye(m.shape[0]))
    return mirror_lower(inv)


def partial_correlation(theta: np.ndarray) -> np.ndarray:
    """Partial correlation matrix of a positive-definite precision matrix.

    ``rho[i, j] = -theta[i, j] / sqrt(theta[i, i] * theta[j, j])`` off the
    diagonal, with unit diagonal.
    """
    theta = require_symmetric(theta, "theta")
    cholesky_pd(theta)
    d = np.sqrt(np.diag(theta))
    rho = -theta / np.outer(d, d)
    np.fill_diagonal(rho, 1.0)
    return rho


def partition_last(m: np.ndarray, col: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Partition ``m`` after permuting ``col`` to the last position.

    Returns ``(M11, m12, m22)`` where ``M11`` drops row/column ``col``,
    ``m12`` is column ``col`` without its diagonal entry, and ``m22`` is
    the diagonal entry.  ``assemble_last`` is the exact inverse.
    """
    m = require_symmetric(m)
    p = m.shape[0]
    if not 0 <= col < p:
        raise IndexError(f"column {col} out of range for dimension {p}")
    rest = np.r_[0:col, col + 1 : p]
    m11 = m[np.ix_(rest, rest)]
    m12 = m[rest, col]
    m22 = float(m[col, col])
    return m11, m12, m22


def assemble_last(m11: np.ndarray, m12: np.ndarray, m22: float, col: int) -> np.ndarray:
    """Undo :func:`partition_last`, restoring ``col`` to its position."""
    q = m11.shape[0]
    p = q + 1
    if not 0 <= col < p:
        raise IndexError(f"column {col} out of range for dimension {p}")
    rest = np.r_[0:col, col + 1 : p]
    out = np.empty((p, p))
    out[np.ix_(rest, rest)] = m11
    out[rest, col] = m12
    out[col, rest] = m12
    out[col, col] = m22
    return out


def eigenvalues_sym(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, sorted ascending."""
    m = require_symmetric(m)
    return np.linalg.eigvalsh(m)
