"""
Atomic-molecular three-mode model
=================================

H0 conserves the atomic number and the imbalance I = Na - Nb, so each
(atoms, I) block is tridiagonal in the molecule number. With 400 atoms and
I >= 0 there are 201 blocks and 20301 levels.
"""

import numpy as np

from becspectra import experiments, presets
from becspectra.three_mode import ThreeModeSector, restricted_dimension, spectrum_integrable_restricted

print("basis of (6 atoms, I=2):", ThreeModeSector(6, 2).basis)
print("levels at 400 atoms, I >= 0:", restricted_dimension(400))

c = presets.get("III.sq").couplings
blocks = spectrum_integrable_restricted(c, experiments.THREE_MODE_ATOMS)
sizes = [len(v) for _, v in blocks]
print("blocks:", len(blocks), "largest:", max(sizes), "total:", sum(sizes))

coll = experiments.collect(presets.THREE_MODE, c, [experiments.THREE_MODE_ATOMS])
r = experiments.spacing_analysis(coll)
print(f"III.sq  KS Poisson {r.ks_poisson:.3f}  KS Wigner {r.ks_wigner:.3f}")

# gaps inside one block only, for comparison
one = experiments.spacing_analysis(coll, cross_sector=False)
print(f"per-block gaps  KS Poisson {one.ks_poisson:.3f}")
print("spread of block ground energies:", np.ptp([v[0] for _, v in blocks]))
