"""
Level spacings of the dimer
===========================

Eleven sectors, N = 360, 364, ..., 400, are merged into a single level
list. The gaps are normalized by the largest one and histogrammed, a curve
gamma exp(-beta s) is fitted, and the histogram is rescaled so that the
fit reads exp(-s).
"""

import sys

import numpy as np

from becspectra import experiments, presets, stats, svg

for name in [p.name for p in presets.TABLE_II]:
    coll = experiments.collect(presets.TWO_MODE, presets.get(name).couplings, experiments.DIMER_SECTORS)
    r = experiments.spacing_analysis(coll)
    print(
        f"{name:6s} levels {r.n_levels}  discarded {r.spacing.discarded_count}  "
        f"gamma {r.fit.gamma:8.3f} beta {r.fit.beta:8.3f}  KS Poisson {r.ks_poisson:.3f}"
    )

# one sector on its own has a single degree of freedom and is not Poisson
single = stats.SpectrumCollection([("N=400", coll.sectors[-1][1])])
print("single sector, last preset: KS Poisson", round(experiments.spacing_analysis(single).ks_poisson, 3))

if len(sys.argv) > 1:
    r = experiments.spacing_analysis(experiments.collect(presets.TWO_MODE, presets.get("II.tri").couplings, experiments.DIMER_SECTORS))
    s = r.rescaled.centers
    grid = np.linspace(0, s.max(), 200)
    path = f"{sys.argv[1]}/spacings_two_mode.svg"
    svg.write(
        path,
        [("II.tri", s, r.rescaled.densities, "points"), ("exp(-s)", grid, stats.reference_poisson(grid), "dashed")],
        title="Rescaled spacings, II.tri",
        xlabel="s",
        ylabel="P(s)",
    )
    print("wrote", path)
