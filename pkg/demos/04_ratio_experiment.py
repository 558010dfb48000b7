"""A scaled-down Monte Carlo ratio experiment against the theory curve.

Runs the d = 2 regression experiment at desk scale (small n, few
repetitions) under both k policies and prints the empirical ratio next to
the closed-form overlay. The acceptance suite runs the full-scale version
(n = 2048, 100 repetitions); this demo keeps the wait under a minute.
"""
import pathlib
import time

import numpy as np

from interpnn import ExperimentSpec, KPolicy, regression_model, run_ratio_experiment
from interpnn.plotting import Series, line_plot_svg

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

for policy in (KPolicy.SHARED_OPTIMAL_AT_GAMMA_ZERO, KPolicy.OPTIMAL_PER_GAMMA):
    spec = ExperimentSpec(
        model=regression_model(2),
        n_train=512,
        n_test=2000,
        n_tune=2000,
        repetitions=15,
        gamma_over_d=(0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30),
        k_policy=policy,
        master_seed=1,
    )
    t0 = time.time()
    res = run_ratio_experiment(spec, threads=2)
    print(f"\n=== {policy.value} policy  ({time.time() - t0:.1f}s, n={spec.n_train}, "
          f"{spec.repetitions} repetitions)")
    print("gamma/d   k(mean)   empirical ratio   theory")
    for i, f in enumerate(spec.gamma_over_d):
        print(f"  {f:.2f}   {res.k_mean[i]:7.1f}   {res.ratio_mean[i]:8.4f} +- {res.ratio_sd[i]:.4f}"
              f"   {res.theory_ratio[i]:8.4f}")
    x = np.asarray(spec.gamma_over_d)
    line_plot_svg(
        OUT / f"ratio_{policy.value}.svg",
        [
            Series(x, res.ratio_mean, label="empirical", yerr=res.ratio_sd),
            Series(x, res.theory_ratio, label="theory", dashed=True, markers=False),
        ],
        title=f"MSE ratio vs theory, {policy.value} k",
        xlabel="gamma / d",
        ylabel="ratio to gamma = 0",
    )
    print(f"  wrote {OUT / f'ratio_{policy.value}.svg'}")

print("\nAt this small scale the curves are noisy but the dip-then-rise shape is")
print("already visible; the full-scale run matches the overlay within 0.05.")
