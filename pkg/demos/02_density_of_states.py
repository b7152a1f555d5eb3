"""
Density of states of the dimer
==============================

Three coupling sets for 1000 bosons, one deep in each regime. The Rabi
set has a nearly flat profile, the Josephson set departs from it at low
energy, and the Fock set is far from flat.

Pass an output directory to also write an SVG plot.
"""

import sys

from becspectra import experiments, presets, svg
from becspectra.two_mode import classify_regime, spectrum

series = []
for name in ("I.tri", "I.sq", "I.dot"):
    c = presets.get(name).couplings
    E = spectrum(c, experiments.DOS_N)
    prof = experiments.dos_profile(E, experiments.DOS_BINS)
    regime = classify_regime(c, experiments.DOS_N).value
    print(f"{name:6s} {regime:10s} central CV {prof.central_cv:.3f}   low-energy deviation {prof.low_energy_deviation:.2f} sd")
    series.append((name, prof.dos.centers, prof.dos.counts, "steps"))

if len(sys.argv) > 1:
    path = f"{sys.argv[1]}/dos.svg"
    svg.write(path, series, title="Density of states, N=1000", xlabel="E", ylabel="levels per bin")
    print("wrote", path)
