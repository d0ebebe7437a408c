"""Pulse length, comb size and rotation angle, from the RK4 reference.

Fidelity peaks wherever tau lands on a multiple of tau0/2, a larger comb
pushes every tone further from the edge, and smaller rotation angles
suffer less cross-talk because the drive is weaker.
"""

import numpy as np

from fdmqubit.experiments import run_fig6

ratios = np.array([0.4, 0.5, 0.6, 0.9, 1.0, 1.1])
for r in run_fig6("a", tau_ratios=ratios):
    if r.params["k0"] == 1:
        print(f"tau/tau0 = {r.params['tau_ratio']:.1f}: F(k0=1) = {r.values['numeric-full']:.5f}")

for r in run_fig6("b"):
    if r.params["k0"] == 3 and r.params["n"] in (7, 11, 15):
        print(f"N = {r.params['n']:>2}: F(k0=3) = {r.values['numeric-full']:.5f}")

for r in run_fig6("c", phis=np.pi * np.array([0.125, 0.25, 0.5, 1.0])):
    if r.params["k0"] == 7:
        print(f"phi = {r.params['phi'] / np.pi:.3f} pi: F(k0=7) = {r.values['numeric-full']:.5f}")
