"""Synthetic data generators with exact conditional-mean oracles.

Each model exposes its true eta(x) (the regression mean or P(Y=1|x)) so
risk can be estimated against the oracle instead of noisy labels, plus the
Bayes rule for classification. Samplers take an explicit numpy Generator;
nothing here holds mutable state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import expit

from .core import Dataset, Task

_LOG_HALF = math.log(0.5)


@dataclass(frozen=True)
class SyntheticModel:
    """Bundle of sampler + oracles for one data-generating process.

    sample(rng, n) returns a Dataset; eta maps an (m, d) matrix to (m,)
    conditional means; bayes_label is 1{eta > 1/2} for classification and
    None for regression; noise_sigma is the conditional noise sd for
    regression and None for classification.
    """

    name: str
    d: int
    task: Task
    sample: Callable
    eta: Callable
    bayes_label: Optional[Callable] = None
    noise_sigma: Optional[Callable] = None


def _as_matrix(X, d: int) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1) if X.shape[0] == d else X.reshape(-1, 1)
    return X


def regression_model(d: int) -> SyntheticModel:
    """Logistic-bump mean on uniform [-1, 1]^d covariates with unit noise.

    eta(x) = e^{x.w} / (e^{x.w} + e^{-x.w}) with w_i = i - d/2 - 0.5, and
    Y = eta(X) + N(0, 1).
    """
    w = np.arange(1, d + 1, dtype=np.float64) - d / 2.0 - 0.5

    def eta(X):
        X = _as_matrix(X, d)
        return expit(2.0 * (X @ w))

    def sample(rng: np.random.Generator, n: int) -> Dataset:
        X = rng.uniform(-1.0, 1.0, size=(n, d))
        y = eta(X) + rng.standard_normal(n)
        return Dataset(points=X, responses=y, task=Task.REGRESSION)

    return SyntheticModel(
        name="regression",
        d=d,
        task=Task.REGRESSION,
        sample=sample,
        eta=eta,
        noise_sigma=lambda X: np.ones(_as_matrix(X, d).shape[0]),
    )


def _log_cauchy(t: np.ndarray) -> np.ndarray:
    return -math.log(math.pi) - np.log1p(t * t)


def _log_laplace(t: np.ndarray) -> np.ndarray:
    return _LOG_HALF - np.abs(t)


def _classification(name: str, d: int, log_f1, log_f2, sample_p1, sample_p2) -> SyntheticModel:
    """Assemble a two-class model with equal priors from per-class
    log-densities and per-class samplers."""

    def eta(X):
        X = _as_matrix(X, d)
        # pi1 = pi2 = 1/2, so eta = f2 / (f1 + f2) = sigmoid(log f2 - log f1).
        return expit(log_f2(X) - log_f1(X))

    def bayes_label(X):
        return (eta(X) > 0.5).astype(np.int64)

    def sample(rng: np.random.Generator, n: int) -> Dataset:
        labels = (rng.random(n) < 0.5).astype(np.float64)
        X = np.empty((n, d))
        mask1 = labels == 0.0
        n1 = int(mask1.sum())
        if n1:
            X[mask1] = sample_p1(rng, n1)
        n2 = n - n1
        if n2:
            X[~mask1] = sample_p2(rng, n2)
        return Dataset(points=X, responses=labels, task=Task.CLASSIFICATION)

    return SyntheticModel(
        name=name, d=d, task=Task.CLASSIFICATION, sample=sample, eta=eta, bayes_label=bayes_label
    )


def classification_model_1(d: int) -> SyntheticModel:
    """Heavy-tailed pair sharing one center: class 0 is d iid standard
    Cauchy coordinates; class 1 keeps Cauchy in the first floor(d/2)
    coordinates and switches to standard Laplace in the rest."""
    n_cauchy = d // 2

    def log_f1(X):
        return _log_cauchy(X).sum(axis=1)

    def log_f2(X):
        return _log_cauchy(X[:, :n_cauchy]).sum(axis=1) + _log_laplace(X[:, n_cauchy:]).sum(axis=1)

    def sample_p1(rng, m):
        return rng.standard_cauchy((m, d))

    def sample_p2(rng, m):
        out = np.empty((m, d))
        out[:, :n_cauchy] = rng.standard_cauchy((m, n_cauchy))
        out[:, n_cauchy:] = rng.laplace(size=(m, d - n_cauchy))
        return out

    return _classification("classification_1", d, log_f1, log_f2, sample_p1, sample_p2)


def sample_gaussian_mixture(
    rng: np.random.Generator,
    size,
    means: tuple[float, float],
    sds: tuple[float, float],
    return_components: bool = False,
):
    """iid draws from 0.5 N(means[0], sds[0]^2) + 0.5 N(means[1], sds[1]^2)."""
    comp = rng.random(size) < 0.5
    z = rng.standard_normal(size)
    x = np.where(comp, means[0] + sds[0] * z, means[1] + sds[1] * z)
    if return_components:
        return x, comp
    return x


def _log_mixture(t: np.ndarray, means, sds) -> np.ndarray:
    def log_norm(t, m, s):
        return -0.5 * ((t - m) / s) ** 2 - math.log(s) - 0.5 * math.log(2.0 * math.pi)

    return np.logaddexp(_LOG_HALF + log_norm(t, means[0], sds[0]), _LOG_HALF + log_norm(t, means[1], sds[1]))


def classification_model_2(d: int, second_param_is_variance: bool = True) -> SyntheticModel:
    """Multi-modal pair: class 0 coordinates iid N(0,1)/2 + N(3,4)/2 and
    class 1 coordinates iid N(1.5,1)/2 + N(4.5,4)/2.

    The second mixture parameter is read as a variance by default (sd 2);
    set second_param_is_variance=False for the sd-4 reading.
    """
    s2 = 2.0 if second_param_is_variance else 4.0
    sds = (1.0, s2)
    means1 = (0.0, 3.0)
    means2 = (1.5, 4.5)

    def log_f1(X):
        return _log_mixture(X, means1, sds).sum(axis=1)

    def log_f2(X):
        return _log_mixture(X, means2, sds).sum(axis=1)

    def sample_p1(rng, m):
        return sample_gaussian_mixture(rng, (m, d), means1, sds)

    def sample_p2(rng, m):
        return sample_gaussian_mixture(rng, (m, d), means2, sds)

    return _classification("classification_2", d, log_f1, log_f2, sample_p1, sample_p2)


TOY_GRID = np.arange(-5.0, 26.0)  # the fixed 1-D design -5, -4, ..., 25


def toy_models() -> tuple[SyntheticModel, SyntheticModel, SyntheticModel]:
    """The three fixed-design 1-D toy studies: pure noise (eta = 0, sd 1),
    noiseless curvature (eta = x^2, sd 0), and the mixed case
    (eta = (x-10)^2/8, sd 5). sample() returns the fixed grid with fresh
    noise; the n argument is ignored."""

    def make(name, mean_fn, sigma):
        def eta(X):
            X = _as_matrix(X, 1)
            return mean_fn(X[:, 0])

        def sample(rng: np.random.Generator, n: int | None = None) -> Dataset:
            x = TOY_GRID.reshape(-1, 1)
            y = mean_fn(TOY_GRID)
            if sigma > 0.0:
                y = y + sigma * rng.standard_normal(TOY_GRID.shape[0])
            return Dataset(points=x, responses=y, task=Task.REGRESSION)

        return SyntheticModel(
            name=name,
            d=1,
            task=Task.REGRESSION,
            sample=sample,
            eta=eta,
            noise_sigma=lambda X: np.full(_as_matrix(X, 1).shape[0], float(sigma)),
        )

    return (
        make("toy_flat", lambda x: np.zeros_like(x), 1.0),
        make("toy_square", lambda x: x * x, 0.0),
        make("toy_shifted", lambda x: (x - 10.0) ** 2 / 8.0, 5.0),
    )
