"""Closed-form performance curves: the U-shaped benefit of interpolation.

Evaluates the asymptotic risk ratio of interpolated-NN against k-NN as a
function of the interpolation level gamma, under the two k policies, plus
the matching classification-instability ratios and the comparison against
optimally weighted NN. Writes one SVG per dimension into demos/output/.
"""
import pathlib

import numpy as np

from interpnn import (
    cis_ratio_optimal_k,
    cis_ratio_same_k,
    gamma_threshold,
    ownn_ratio,
    pr_optimal_k,
    pr_same_k,
)
from interpnn.plotting import Series, line_plot_svg

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

for d in (2, 5, 10):
    gammas = np.linspace(0.0, 0.35 * d, 200)
    fracs = gammas / d
    print(f"\n=== d = {d}")
    print(f"  ratio = 1 thresholds: shared-k gamma_d = {gamma_threshold(d, 'same_k'):.4f}, "
          f"optimal-k gamma_d' = {gamma_threshold(d, 'optimal_k'):.4f} (d/3 = {d / 3:.4f})")
    pr = pr_same_k(d, gammas)
    pro = pr_optimal_k(d, gammas)
    i_min = int(np.argmin(pro))
    print(f"  best per-gamma-k ratio: {pro[i_min]:.4f} at gamma/d = {fracs[i_min]:.3f} "
          f"(shared-k best: {pr.min():.4f})")
    print(f"  OWNN/interpolated at that gamma: {ownn_ratio(d, gammas[i_min]):.4f} (< 1: OWNN still ahead)")
    line_plot_svg(
        OUT / f"theory_d{d}.svg",
        [
            Series(fracs, pr, label="risk ratio, shared k", markers=False),
            Series(fracs, pro, label="risk ratio, per-gamma k", markers=False),
            Series(fracs, cis_ratio_same_k(d, gammas), label="CIS ratio, shared k", markers=False, dashed=True),
            Series(fracs, cis_ratio_optimal_k(d, gammas), label="CIS ratio, per-gamma k", markers=False, dashed=True),
        ],
        title=f"interpolation effect, d = {d}",
        xlabel="gamma / d",
        ylabel="ratio to k-NN",
    )
    print(f"  wrote {OUT / f'theory_d{d}.svg'}")

print("\nBoth risk curves start at 1, dip strictly below 1, and climb back up:")
print("a mild level of interpolation strictly beats plain k-NN. The dip is deepest")
print("around d ~ 5 and flattens out as the dimension grows, where nothing moves")
print("the needle because all neighbor-distance ratios concentrate near 1.")
