"""Closed-form asymptotic constants for interpolated nearest neighbors.

All quantities here are distribution-free functions of the dimension d and
the interpolation level gamma: the variance and squared-bias coefficient
ratios, the performance ratios under shared-k and per-gamma-optimal-k
policies, the comparison against optimally weighted NN, the matching
classification-instability ratios, the gamma thresholds where the benefit of
interpolation ends, and the integral criterion that certifies first-order
benefit for a general weight family.

Every function accepts a scalar or an ndarray of gamma values. The formulas
are evaluated on [0, d/2): the variance coefficient has a pole at
gamma = d/2 and evaluation at or past it raises DomainError. gamma in
[d/3, d/2) is outside the range the asymptotic theorems cover but the
expressions remain finite there, mirroring how the reference experiments
run gamma/d = 0.35 anyway.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .core import DomainError, QuadratureFailure

_THRESHOLD_SCAN_STEP = 1e-3
_THRESHOLD_TOL = 1e-10
_QUAD_TOL = 1e-9


def _check_domain(d: int, gamma, upper: float, what: str):
    if not (isinstance(d, (int, np.integer)) and d >= 1):
        raise DomainError(f"d must be an integer >= 1, got {d!r}")
    g = np.asarray(gamma, dtype=np.float64)
    if np.any(~np.isfinite(g)) or np.any(g < 0.0) or np.any(g >= upper):
        raise DomainError(f"{what} requires 0 <= gamma < {upper:g}, got {gamma!r}")
    return g


def var_coef(d: int, gamma):
    """Variance inflation factor (d-gamma)^2 / (d(d-2 gamma)); 1 at gamma=0."""
    g = _check_domain(d, gamma, d / 2.0, "var_coef")
    out = (d - g) ** 2 / (d * (d - 2.0 * g))
    return out if out.ndim else float(out)


def bias_coef(d: int, gamma):
    """Squared-bias deflation factor (d-gamma)^2 (d+2)^2 / ((d+2-gamma)^2 d^2)."""
    g = _check_domain(d, gamma, d + 2.0, "bias_coef")
    out = ((d - g) * (d + 2.0) / ((d + 2.0 - g) * d)) ** 2
    return out if out.ndim else float(out)


def pr_same_k(d: int, gamma):
    """Risk ratio interpolated-NN / k-NN when both use k-NN's optimal k.

    At that k the limiting variance:bias split is 1 : d/4, so the ratio is
    the correspondingly weighted mean of the two coefficient ratios.
    """
    g = _check_domain(d, gamma, d / 2.0, "pr_same_k")
    out = (var_coef(d, g) + (d / 4.0) * bias_coef(d, g)) / (1.0 + d / 4.0)
    return out if np.ndim(out) else float(out)


def pr_optimal_k(d: int, gamma):
    """Risk ratio when each estimator uses its own optimal k."""
    g = _check_domain(d, gamma, d / 2.0, "pr_optimal_k")
    out = var_coef(d, g) ** (4.0 / (d + 4.0)) * bias_coef(d, g) ** (d / (d + 4.0))
    return out if np.ndim(out) else float(out)


def ownn_ratio(d: int, gamma):
    """Risk of optimally weighted NN over risk of interpolated-NN, both at
    their own optimal k. Always below 1 and tending to 1 as d grows."""
    g = _check_domain(d, gamma, d / 2.0, "ownn_ratio")
    const = 2.0 ** (4.0 / (d + 4.0)) * ((d + 2.0) / (d + 4.0)) ** ((2.0 * d + 4.0) / (d + 4.0))
    out = const / pr_optimal_k(d, g)
    return out if np.ndim(out) else float(out)


def cis_ratio_same_k(d: int, gamma):
    """Classification-instability ratio under a shared k: sqrt of the
    variance inflation, hence always >= 1."""
    g = _check_domain(d, gamma, d / 2.0, "cis_ratio_same_k")
    out = np.sqrt(var_coef(d, g))
    return out if np.ndim(out) else float(out)


def cis_ratio_optimal_k(d: int, gamma):
    """Classification-instability ratio when k is tuned per gamma:
    sqrt(pr_optimal_k), below 1 wherever the risk ratio is."""
    g = _check_domain(d, gamma, d / 2.0, "cis_ratio_optimal_k")
    out = np.sqrt(pr_optimal_k(d, g))
    return out if np.ndim(out) else float(out)


_RATIO_FUNCS = {
    "same_k": pr_same_k,
    "optimal_k": pr_optimal_k,
}


def gamma_threshold(d: int, which: str = "optimal_k") -> float:
    """Largest gamma below which interpolation strictly beats k-NN.

    Returns min(d/3, second root of ratio(d, gamma) = 1 on (0, d/2)). The
    root is located by a coarse 1e-3 sign-change scan followed by bisection
    to 1e-10; the curve leaves 1 downward at gamma = 0 and diverges at the
    d/2 pole, so a bracket always exists.
    """
    try:
        fn = _RATIO_FUNCS[which]
    except KeyError:
        raise DomainError(f"which must be one of {sorted(_RATIO_FUNCS)}, got {which!r}") from None
    cap = d / 3.0
    hi = d / 2.0 - _THRESHOLD_SCAN_STEP / 2.0
    grid = np.arange(_THRESHOLD_SCAN_STEP, hi, _THRESHOLD_SCAN_STEP)
    vals = fn(d, grid)
    above = np.nonzero(vals > 1.0)[0]
    if above.size == 0:
        return cap
    i = int(above[0])
    lo = grid[i - 1] if i > 0 else 0.0
    hi = grid[i]
    if lo >= cap:
        return cap
    while hi - lo > _THRESHOLD_TOL:
        mid = 0.5 * (lo + hi)
        if fn(d, mid) > 1.0:
            hi = mid
        else:
            lo = mid
    root = 0.5 * (lo + hi)
    return min(cap, root)


@dataclass(frozen=True)
class RatioCurve:
    """A ratio evaluated on a gamma grid, with the in-theory-range flag
    (gamma < d/3) per grid point."""

    d: int
    which: str
    gammas: np.ndarray
    values: np.ndarray
    in_theory_range: np.ndarray


_CURVE_FUNCS = {
    "pr": pr_same_k,
    "pr_opt": pr_optimal_k,
    "cis": cis_ratio_same_k,
    "cis_opt": cis_ratio_optimal_k,
    "ownn": ownn_ratio,
}


def ratio_curve(d: int, gammas, which: str) -> RatioCurve:
    try:
        fn = _CURVE_FUNCS[which]
    except KeyError:
        raise DomainError(f"which must be one of {sorted(_CURVE_FUNCS)}, got {which!r}") from None
    g = np.asarray(gammas, dtype=np.float64)
    vals = np.asarray(fn(d, g), dtype=np.float64)
    return RatioCurve(d=d, which=which, gammas=g, values=vals, in_theory_range=g < d / 3.0)


def delta_criterion(phi_prime_at_zero: Callable, d: int) -> float:
    """First-order benefit criterion for a weight family phi(x, gamma).

    With u = phi'(x, 0) = d/dgamma phi(x, gamma) at gamma = 0,

        Delta = (int_0^1 u x^{d+1} dx)(int_0^1 x^{d-1} dx)
              - (int_0^1 u x^{d-1} dx)(int_0^1 x^{d+1} dx),

    and Delta < 0 certifies that an infinitesimal increase of gamma strictly
    reduces the asymptotic risk. The integrals run through the substitution
    x = e^{-u}, which turns the integrable log-type endpoint singularity at
    0 into plain exponential decay before adaptive quadrature.
    """
    if not (isinstance(d, (int, np.integer)) and d >= 1):
        raise DomainError(f"d must be an integer >= 1, got {d!r}")

    # u is truncated where x = e^{-u} reaches ~1e-304: still normal floats,
    # and for any phi' integrable against x^{d-1} the discarded tail in
    # x-space is below that same magnitude.
    u_max = 700.0

    def moment(m: int):
        def integrand(u):
            return phi_prime_at_zero(np.exp(-u)) * np.exp(-(m + 1.0) * u)

        val, err = quad(integrand, 0.0, u_max, epsabs=1e-13, epsrel=1e-11, limit=400)
        return val, err

    i_hi, e_hi = moment(d + 1)
    i_lo, e_lo = moment(d - 1)
    err_bound = e_hi / d + e_lo / (d + 2.0)
    if err_bound > _QUAD_TOL:
        raise QuadratureFailure(
            f"quadrature error bound {err_bound:.3e} exceeds {_QUAD_TOL:g}"
        )
    return i_hi / d - i_lo / (d + 2.0)
