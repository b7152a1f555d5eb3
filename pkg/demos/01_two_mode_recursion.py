"""
Two-mode dimer: matrix versus recursion
=======================================

The N-particle sector of the dimer is a symmetric tridiagonal matrix. The
same energies are the zeros of the last coefficient of a three-term
recursion, which we also solve here.
"""

import numpy as np

from becspectra import presets
from becspectra.two_mode import alpha_top, build_sector, eigenvector, spectrum, spectrum_via_recursion

c = presets.get("II.dot").couplings
N = 40

H = build_sector(c, N)
print("sector dimension:", H.dim)

E = spectrum(c, N)
E_rec = spectrum_via_recursion(c, N)
width = E[-1] - E[0]
print("lowest five levels:", E[:5])
print("max |matrix - recursion| / width:", np.max(np.abs(E - E_rec)) / width)

# the sign of alpha_{N+1} flips at every level
d = 1e-8 * width
for e in E[:3]:
    print(f"E={e:.6f}  sign below {alpha_top(c, N, e - d)[0]:+.0f}  sign above {alpha_top(c, N, e + d)[0]:+.0f}")

# the coefficients of the recursion give the eigenvector in the Fock basis
v = eigenvector(c, N, E[0])
print("ground state residual:", np.linalg.norm(H.to_dense() @ v - E[0] * v))
print("most likely occupation of mode 2:", int(np.argmax(v**2)))
