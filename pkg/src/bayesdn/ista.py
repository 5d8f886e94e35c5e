"""Frequentist comparator: L1-penalized convex difference estimation.

Minimizes ``0.5 * tr(D' S1 D S2) - tr(D (S1 - S2)) + lam * |D|_1`` over
symmetric matrices by plain proximal gradient descent (iterative
soft-thresholding) with a fixed step ``1 / (eigmax(S1) * eigmax(S2))``,
then picks the penalty on a grid by BIC.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import mirror_lower, require_symmetric

__all__ = [
    "IstaConfig",
    "IstaResult",
    "SolutionPath",
    "dnet_loss",
    "dnet_gradient",
    "soft_threshold",
    "ista_solve",
    "default_penalty_grid",
    "solve_path",
    "bic_select",
    "estimate_dnet",
]


@dataclass(frozen=True)
class IstaConfig:
    """Solver settings; ``penalty_grid=None`` defers to the data-driven default."""

    max_iters: int = 5000
    tol: float = 1e-10
    penalty_grid: np.ndarray | None = None

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be > 0")
        if self.penalty_grid is not None:
            grid = np.asarray(self.penalty_grid, dtype=float)
            if grid.size == 0 or np.any(grid <= 0):
                raise ValueError("penalty grid must be non-empty and strictly positive")
            object.__setattr__(self, "penalty_grid", grid)


@dataclass(frozen=True)
class IstaResult:
    delta: np.ndarray
    objective: float
    loss: float
    iterations: int
    converged: bool
    objective_history: np.ndarray  # penalized objective after every iteration


@dataclass(frozen=True)
class SolutionPath:
    """Per-penalty solutions with their BIC scores and the selected index."""

    lambdas: np.ndarray
    results: list[IstaResult]
    bics: np.ndarray
    selected: int

    @property
    def selected_delta(self) -> np.ndarray:
        return self.results[self.selected].delta


def dnet_loss(delta: np.ndarray, s1: np.ndarray, s2: np.ndarray) -> float:
    """Convex two-sample loss ``0.5 tr(D' S1 D S2) - tr(D (S1 - S2))``."""
    if delta.shape != s1.shape or s1.shape != s2.shape:
        raise ValueError("dimension mismatch")
    quad = 0.5 * float(np.trace(delta.T @ s1 @ delta @ s2))
    lin = float(np.trace(delta @ (s1 - s2)))
    return quad - lin


def dnet_gradient(delta: np.ndarray, s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
    """Gradient over symmetric matrices: ``0.5 (S1 D S2 + S2 D S1) - (S1 - S2)``."""
    if delta.shape != s1.shape or s1.shape != s2.shape:
        raise ValueError("dimension mismatch")
    m = s1 @ delta @ s2
    return 0.5 * (m + m.T) - (s1 - s2)


def soft_threshold(x, t):
    """Shrink toward zero: ``sign(x) * max(|x| - t, 0)``; works elementwise."""
    if np.any(np.asarray(t) < 0):
        raise ValueError("threshold must be >= 0")
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def _penalized_objective(delta, s1, s2, lam):
    return dnet_loss(delta, s1, s2) + lam * float(np.abs(delta).sum())


def ista_solve(
    s1: np.ndarray, s2: np.ndarray, lam: float, cfg: IstaConfig = IstaConfig()
) -> IstaResult:
    """Proximal gradient from the origin until the objective stalls.

    The step is ``1/L`` with ``L = eigmax(S1) * eigmax(S2)``, an upper
    bound on the gradient's Lipschitz constant, so the penalized objective
    never increases.  A result with ``converged=False`` carries the last
    iterate.
    """
    s1 = require_symmetric(s1, "s1")
    s2 = require_symmetric(s2, "s2")
    if lam <= 0:
        raise ValueError("lam must be > 0")
    lip = float(np.linalg.eigvalsh(s1)[-1] * np.linalg.eigvalsh(s2)[-1])
    if lip <= 0:
        raise ValueError("sample matrices must have positive largest eigenvalues")
    step = 1.0 / lip
    delta = np.zeros_like(s1)
    obj = _penalized_objective(delta, s1, s2, lam)
    history = [obj]
    converged = False
    iterations = cfg.max_iters
    for it in range(1, cfg.max_iters + 1):
        grad = dnet_gradient(delta, s1, s2)
        delta = soft_threshold(delta - step * grad, lam * step)
        new_obj = _penalized_objective(delta, s1, s2, lam)
        history.append(new_obj)
        if obj - new_obj < cfg.tol:
            converged = True
            iterations = it
            break
        obj = new_obj
    return IstaResult(
        delta=delta,
        objective=history[-1],
        loss=dnet_loss(delta, s1, s2),
        iterations=iterations,
        converged=converged,
        objective_history=np.asarray(history),
    )


def default_penalty_grid(s1: np.ndarray, s2: np.ndarray, size: int = 20) -> np.ndarray:
    """20 log-spaced penalties spanning [0.01, 1] times max |S1 - S2|."""
    scale = float(np.max(np.abs(s1 - s2)))
    if scale <= 0:
        scale = 1.0
    return scale * np.logspace(-2, 0, size)


def solve_path(
    s1: np.ndarray, s2: np.ndarray, n1: int, n2: int, cfg: IstaConfig = IstaConfig()
) -> SolutionPath:
    """Solve over the penalty grid and select by BIC."""
    grid = cfg.penalty_grid
    if grid is None:
        grid = default_penalty_grid(s1, s2)
    results = [ista_solve(s1, s2, float(lam), cfg) for lam in grid]
    return bic_select(grid, results, n1, n2)


def bic_select(
    lambdas: np.ndarray, results: list[IstaResult], n1: int, n2: int
) -> SolutionPath:
    """Score each solution by ``n L + log(n) df`` and pick the minimizer.

    ``n = n1 + n2``, ``df`` counts nonzero entries on and above the
    diagonal; ties go to the larger penalty.
    """
    if len(results) == 0:
        raise ValueError("empty solution path")
    n = n1 + n2
    bics = np.empty(len(results))
    for k, res in enumerate(results):
        df = int(np.count_nonzero(np.triu(res.delta)))
        bics[k] = n * res.loss + np.log(n) * df
    selected = 0
    for k in range(len(results)):
        if bics[k] <= bics[selected]:
            selected = k
    return SolutionPath(
        lambdas=np.asarray(lambdas, dtype=float),
        results=results,
        bics=bics,
        selected=selected,
    )


def estimate_dnet(
    x1: np.ndarray, x2: np.ndarray, cfg: IstaConfig = IstaConfig()
) -> tuple[np.ndarray, np.ndarray, SolutionPath]:
    """Fit the comparator from raw samples.

    Uses ``S_k = X_k' X_k / n_k`` and returns the selected difference
    estimate, its support as an adjacency matrix, and the full path.
    """
    if x1.shape[1] != x2.shape[1]:
        raise ValueError("samples must share the number of columns")
    s1 = mirror_lower(x1.T @ x1 / x1.shape[0])
    s2 = mirror_lower(x2.T @ x2 / x2.shape[0])
    path = solve_path(s1, s2, x1.shape[0], x2.shape[0], cfg)
    delta = path.selected_delta
    adjacency = np.abs(delta) > 0
    np.fill_diagonal(adjacency, False)
    return delta, adjacency, path
