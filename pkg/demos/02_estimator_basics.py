"""Interpolated-NN mechanics on a tiny 1-D dataset.

Shows how the power weights phi(t) = t^{-gamma} concentrate on close
neighbors as gamma grows, that the fit passes through every training point
for gamma > 0, and that huge gamma degrades gracefully into 1-NN.
"""
import numpy as np

from interpnn import (
    Dataset,
    EstimatorConfig,
    Metric,
    Task,
    brute_force_query,
    compute_weights,
    fit,
    power_scheme,
    predict_regression,
)

train = Dataset(points=[[0.0], [1.0], [3.0]], responses=[1.0, 3.0, 0.0], task=Task.REGRESSION)
x = np.array([0.25])
res = brute_force_query(train, Metric(2.0), x, k=2)
print(f"query x = {x[0]}: neighbor distances {res.distances.tolist()}, R_3 = {res.r_kplus1}")

print("\nweights and prediction as gamma grows:")
for gamma in (0.0, 0.5, 1.0, 2.0, 10.0, 50.0):
    w = compute_weights(res, power_scheme(gamma))
    est = fit(train, EstimatorConfig(k=2, gamma=gamma))
    print(f"  gamma {gamma:5.1f}: weights {np.round(w, 4).tolist()}  ->  "
          f"prediction {predict_regression(est, x):.4f}")
print("gamma = 0 is plain k-NN averaging; gamma -> inf pulls everything onto the nearest neighbor.")

print("\ninterpolation property (predictions AT the training points, gamma = 1):")
est = fit(train, EstimatorConfig(k=2, gamma=1.0))
for xi, yi in zip(train.points, train.responses):
    print(f"  eta_hat({xi[0]:.0f}) = {predict_regression(est, xi):.1f}   (training response {yi})")

rng = np.random.default_rng(0)
X = rng.uniform(-1, 1, (400, 2))
ds = Dataset(points=X, responses=(X.sum(axis=1) > 0).astype(float), task=Task.CLASSIFICATION)
est_hi = fit(ds, EstimatorConfig(k=10, gamma=50.0))
est_1nn = fit(ds, EstimatorConfig(k=1, gamma=0.0))
from interpnn import predict_class

queries = rng.uniform(-1, 1, (500, 2))
agree = np.mean([predict_class(est_hi, q)[0] == predict_class(est_1nn, q)[0] for q in queries])
print(f"\ngamma = 50 vs plain 1-NN on 500 random queries: {agree:.1%} agreement")
