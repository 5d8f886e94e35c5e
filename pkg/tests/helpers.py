"""Shared independent oracles for the test suite.

Everything here recomputes expected values by routes disjoint from the
library code under test: tensor quadrature for the 2x2 posterior,
characteristic-polynomial root finding for eigenvalues, and plain loops
for matrix norms.
"""

import numpy as np
from numpy.polynomial.legendre import leggauss


def random_symmetric(p, rng, scale=1.0):
    a = rng.standard_normal((p, p)) * scale
    return np.tril(a) + np.tril(a, -1).T


def symmetric_fd_gradient(loss, delta, h=1e-6):
    """Central differences over symmetric perturbations of ``delta``."""
    p = delta.shape[0]
    g = np.zeros_like(delta)
    for i in range(p):
        for j in range(i, p):
            e = np.zeros_like(delta)
            if i == j:
                e[i, i] = 1.0
                scale = 2.0 * h
            else:
                e[i, j] = e[j, i] = 1.0
                scale = 4.0 * h
            g[i, j] = (loss(delta + h * e) - loss(delta - h * e)) / scale
            g[j, i] = g[i, j]
    return g


def l1_kkt_residual(delta, grad, lam):
    """Max violation of the subgradient optimality conditions."""
    nz = delta != 0
    res = 0.0
    if nz.any():
        res = np.abs(grad[nz] + lam * np.sign(delta[nz])).max()
    if (~nz).any():
        res = max(res, max(0.0, (np.abs(grad[~nz]) - lam).max()))
    return res


def random_pd(p, rng, jitter=None):
    a = rng.standard_normal((p, p))
    m = a @ a.T + (jitter if jitter is not None else p) * np.eye(p)
    return np.tril(m) + np.tril(m, -1).T


def charpoly_eigenvalues(m):
    """Eigenvalues as roots of the characteristic polynomial.

    Coefficients come from the Faddeev-LeVerrier recursion, which uses
    only matrix products and traces, keeping the oracle independent of
    any eigensolver.
    """
    m = np.asarray(m, dtype=float)
    p = m.shape[0]
    coeffs = [1.0]
    mk = np.zeros_like(m)
    for k in range(1, p + 1):
        mk = m @ mk + coeffs[-1] * np.eye(p)
        coeffs.append(-np.trace(m @ mk) / k)
    roots = np.roots(coeffs)
    return np.sort(roots.real)


def quad_posterior_mean_2x2(scatter, n, lam, n_ab=200, n_u=160, lo_scale=0.02, hi_scale=6.0):
    """Posterior means of (t11, t12, t22) for the 2x2 single-penalty model.

    Integrates
        (t11*t22 - t12^2)^(n/2) * exp(-0.5*tr(S T))
        * exp(-lam*|t12|) * exp(-0.5*lam*(t11 + t22))
    over the positive-definite cone by Gauss-Legendre quadrature with the
    substitution t12 = sqrt(t11*t22)*u, u in (-1, 1), split at the |t12|
    kink.  Returns the three posterior means.
    """
    s11, s12, s22 = scatter[0, 0], scatter[0, 1], scatter[1, 1]
    mode = n * np.linalg.inv(scatter)
    a_lo, a_hi = mode[0, 0] * lo_scale, mode[0, 0] * hi_scale
    b_lo, b_hi = mode[1, 1] * lo_scale, mode[1, 1] * hi_scale

    xa, wa = leggauss(n_ab)
    a = 0.5 * (a_hi - a_lo) * xa + 0.5 * (a_hi + a_lo)
    wa = wa * 0.5 * (a_hi - a_lo)
    b = 0.5 * (b_hi - b_lo) * xa + 0.5 * (b_hi + b_lo)
    wb = wa.copy() * (b_hi - b_lo) / (a_hi - a_lo)

    xu, wu = leggauss(n_u // 2)
    u = np.concatenate([0.5 * xu - 0.5, 0.5 * xu + 0.5])
    wuu = np.concatenate([0.5 * wu, 0.5 * wu])

    A, B = np.meshgrid(a, b, indexing="ij")
    WA, WB = np.meshgrid(wa, wb, indexing="ij")
    sqab = np.sqrt(A * B)
    log_base = (
        0.5 * n * (np.log(A) + np.log(B))
        - 0.5 * (s11 * A + s22 * B)
        - 0.5 * lam * (A + B)
    )
    log_base -= log_base.max()
    base = np.exp(log_base) * WA * WB * sqab

    z = ma = mb = mc = 0.0
    for uk, wk in zip(u, wuu):
        lw = 0.5 * n * np.log1p(-uk * uk) - s12 * sqab * uk - lam * sqab * abs(uk)
        f = base * np.exp(lw) * wk
        z += f.sum()
        ma += (f * A).sum()
        mb += (f * B).sum()
        mc += (f * sqab * uk).sum()
    return np.array([ma / z, mc / z, mb / z])
