"""Block Gibbs sampler for the adaptive graphical-lasso precision posterior.

The target is the posterior of a Gaussian precision matrix Theta under a
Laplace prior on off-diagonal entries and an exponential prior on diagonal
entries, written in its scale-mixture form with latent variances tau[i, j]
and, in the adaptive variant, per-entry penalties lam[i, j] carrying gamma
hyperpriors.  One sweep updates every column of Theta as a block (a gamma
draw for the Schur complement plus a Gaussian draw for the off-diagonal
vector) and then refreshes the latent scales and penalties.

The column update keeps Theta positive definite by construction: writing
theta22 = gamma + beta' Theta11^{-1} beta with gamma > 0 forces a positive
Schur complement, so positive definiteness of the trailing block is
inherited sweep after sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_solve, cholesky, solve_triangular

from .linalg import NotPositiveDefiniteError, require_symmetric

__all__ = [
    "GibbsConfig",
    "SamplerState",
    "GibbsChain",
    "sample_gamma_variate",
    "sample_inverse_gaussian",
    "initial_state",
    "update_column",
    "update_hyperparameters",
    "run_chain",
    "posterior_mean",
]


@dataclass(frozen=True)
class GibbsConfig:
    """Sampler settings.

    ``burn_in`` sweeps are discarded, then ``retained`` sweeps are kept.
    ``r`` and ``s`` are the shape and rate of the gamma hyperprior on the
    off-diagonal penalties; ``lambda_diag`` is the fixed diagonal penalty.
    ``adapt_lambda=False`` freezes every off-diagonal penalty at
    ``lambda_init`` (single-penalty model), which is what the quadrature
    cross-checks integrate against.
    """

    burn_in: int = 5000
    retained: int = 10000
    r: float = 1e-2
    s: float = 1e-6
    lambda_diag: float = 1.0
    seed: int = 0
    theta_floor: float = 1e-12
    adapt_lambda: bool = True
    lambda_init: float = 1.0

    def __post_init__(self):
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.retained < 1:
            raise ValueError("retained must be >= 1")
        for name in ("r", "s", "lambda_diag", "theta_floor", "lambda_init"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")


@dataclass
class SamplerState:
    """Mutable state of one chain: current Theta, latents, and the data."""

    theta: np.ndarray
    tau: np.ndarray
    lam: np.ndarray
    scatter: np.ndarray
    n: int
    config: GibbsConfig

    @property
    def dim(self) -> int:
        return self.theta.shape[0]


@dataclass(frozen=True)
class GibbsChain:
    """Retained draws of Theta, in sweep order, plus the config that made them."""

    draws: np.ndarray  # shape (retained, p, p)
    config: GibbsConfig

    def __len__(self) -> int:
        return self.draws.shape[0]


def sample_gamma_variate(shape: float, rate: float, rng: np.random.Generator) -> float:
    """One gamma draw in the shape-rate parameterization.

    Density proportional to ``x**(shape-1) * exp(-rate*x)``; mean is
    ``shape/rate``.
    """
    if shape <= 0 or rate <= 0:
        raise ValueError(f"gamma parameters must be positive, got ({shape}, {rate})")
    return float(rng.gamma(shape, 1.0 / rate))


def sample_inverse_gaussian(mu: float, lam: float, rng: np.random.Generator) -> float:
    """One inverse-Gaussian draw with mean ``mu`` and shape ``lam``.

    The variance is ``mu**3 / lam``.
    """
    if mu <= 0 or lam <= 0:
        raise ValueError(f"inverse-Gaussian parameters must be positive, got ({mu}, {lam})")
    return float(rng.wald(mu, lam))


def initial_state(scatter: np.ndarray, n: int, config: GibbsConfig) -> SamplerState:
    """Diffuse start: Theta = I, unit latent scales, unit penalties."""
    scatter = require_symmetric(scatter, "scatter")
    if n < 1:
        raise ValueError("n must be >= 1")
    p = scatter.shape[0]
    eigmin = float(np.linalg.eigvalsh(scatter)[0])
    if eigmin < -1e-8 * max(1.0, float(np.max(np.abs(scatter)))):
        raise ValueError(f"scatter is not positive semidefinite (min eigenvalue {eigmin:.3e})")
    tau = np.ones((p, p))
    np.fill_diagonal(tau, 0.0)
    lam = np.full((p, p), config.lambda_init)
    np.fill_diagonal(lam, config.lambda_diag)
    return SamplerState(
        theta=np.eye(p), tau=tau, lam=lam, scatter=scatter, n=int(n), config=config
    )


class _SweepWorkspace:
    """Per-chain cache of index arrays so sweeps avoid re-allocating them."""

    def __init__(self, p: int):
        self.eye = np.eye(p - 1)
        self.rest = [np.r_[0:c, c + 1 : p] for c in range(p)]
        self.block = [np.ix_(r, r) for r in self.rest]
        self.diag = np.arange(p - 1)
        self.upper = np.triu_indices(p, k=1)
        self.lower = (self.upper[1], self.upper[0])


def update_column(
    state: SamplerState,
    col: int,
    rng: np.random.Generator,
    _work: _SweepWorkspace | None = None,
) -> SamplerState:
    """Resample row/column ``col`` of Theta from its conditional.

    With the column permuted last, the conditional factorizes as
    gamma ~ GA(n/2 + 1, (s22 + lam_ii)/2) for the Schur complement and
    beta ~ N(-C s21, C) for the off-diagonal block, where
    C = ((s22 + lam_ii) * Theta11^{-1} + Dtau^{-1})^{-1}.  The state is
    modified in place and returned.
    """
    p = state.dim
    if not 0 <= col < p:
        raise IndexError(f"column {col} out of range for dimension {p}")
    work = _work if _work is not None else _SweepWorkspace(p)
    rest = work.rest[col]
    theta11 = state.theta[work.block[col]]
    s12 = state.scatter[rest, col]
    s22 = float(state.scatter[col, col])
    tau12 = state.tau[rest, col]
    lam_ii = float(state.lam[col, col])

    try:
        lower11 = np.linalg.cholesky(theta11)
    except np.linalg.LinAlgError as err:
        raise NotPositiveDefiniteError(
            f"Theta block excluding column {col} lost positive definiteness"
        ) from err
    inv11 = cho_solve((lower11, True), work.eye, check_finite=False)

    # C^{-1} mixes the data scale with 1/tau entries that grow without
    # bound as an entry is shrunk to zero, so it is factored raw: the sum
    # of a PSD matrix and a positive diagonal cannot fail to be PD.
    c_inv = (s22 + lam_ii) * inv11
    c_inv[work.diag, work.diag] += 1.0 / tau12
    try:
        lower_c = cholesky(c_inv, lower=True, check_finite=False)
    except LinAlgError as err:
        raise NotPositiveDefiniteError(
            f"conditional covariance for column {col} broke down"
        ) from err
    mean = -cho_solve((lower_c, True), s12, check_finite=False)
    z = rng.standard_normal(p - 1)
    beta = mean + solve_triangular(lower_c.T, z, lower=False, check_finite=False)

    gamma = sample_gamma_variate(state.n / 2.0 + 1.0, (s22 + lam_ii) / 2.0, rng)

    state.theta[rest, col] = beta
    state.theta[col, rest] = beta
    state.theta[col, col] = gamma + float(beta @ inv11 @ beta)
    return state


def update_hyperparameters(
    state: SamplerState,
    rng: np.random.Generator,
    _work: _SweepWorkspace | None = None,
) -> SamplerState:
    """Refresh the latent scales and (if adapting) the per-entry penalties.

    For each i < j, draws lam[i, j] ~ GA(1 + r, |theta[i, j]| + s) when
    ``adapt_lambda`` is on, then tau[i, j] = 1/delta with
    delta ~ InverseGaussian(lam[i, j]/|theta[i, j]|, lam[i, j]**2).
    |theta[i, j]| is floored at ``theta_floor`` so an exact zero cannot
    fault; the floor only caps the already-divergent mean.
    """
    cfg = state.config
    work = _work if _work is not None else _SweepWorkspace(state.dim)
    iu = work.upper
    abs_theta = np.abs(state.theta[iu])

    if cfg.adapt_lambda:
        lam_off = rng.gamma(1.0 + cfg.r, 1.0 / (abs_theta + cfg.s))
        state.lam[iu] = lam_off
        state.lam[work.lower] = lam_off
    else:
        lam_off = state.lam[iu]

    floored = np.maximum(abs_theta, cfg.theta_floor)
    mu = lam_off / floored
    delta = rng.wald(mu, lam_off**2)
    # the transformation method can underflow to 0 at extreme mu; keep tau finite
    delta = np.maximum(delta, np.finfo(float).tiny)
    tau_off = 1.0 / delta
    state.tau[iu] = tau_off
    state.tau[work.lower] = tau_off
    return state


def run_chain(scatter: np.ndarray, n: int, config: GibbsConfig) -> GibbsChain:
    """Run ``burn_in + retained`` full sweeps and keep the last ``retained``.

    A full sweep updates every column in order 0..p-1 and then the
    hyperparameters.  Deterministic given ``config.seed``.
    """
    state = initial_state(scatter, n, config)
    rng = np.random.default_rng(config.seed)
    p = state.dim
    work = _SweepWorkspace(p)
    total = config.burn_in + config.retained
    draws = np.empty((config.retained, p, p))
    for sweep in range(total):
        try:
            for col in range(p):
                update_column(state, col, rng, _work=work)
            update_hyperparameters(state, rng, _work=work)
        except NotPositiveDefiniteError as err:
            raise NotPositiveDefiniteError(
                f"sweep {sweep}: {err}", minor=err.minor
            ) from err
        if sweep >= config.burn_in:
            draws[sweep - config.burn_in] = state.theta
    return GibbsChain(draws=draws, config=config)


def posterior_mean(chain: GibbsChain) -> np.ndarray:
    """Entrywise average of the retained draws."""
    if len(chain) == 0:
        raise ValueError("chain has no draws")
    return chain.draws.mean(axis=0)
