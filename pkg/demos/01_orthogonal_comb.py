"""Simultaneous pi/2 gates on a 15-qubit comb with tau equal to one tone period.

Every drive tone completes a whole number of cycles relative to every
other qubit, so the first-order cross-talk cancels. What is left is a
small second-order Z rotation that grows toward the edges of the comb.
"""

import math

from fdmqubit import PulseConfig, analytic_fidelity, gate_fidelity, lambda_orthogonal
from fdmqubit.experiments import reference_comb

comb = reference_comb()
phi = math.pi / 2
pulse = PulseConfig.from_tau_ratio(comb, 1.0, phi)

print(f"tau0 = {comb.tau0 * 1e9:.1f} ns, N = {comb.n}")
print(f"{'k0':>4} {'lambda_z':>12} {'F analytic':>12} {'F numeric':>12}")
for k0 in comb.indices:
    lam = lambda_orthogonal(comb, pulse, int(k0))
    fa = analytic_fidelity(lam, phi).value
    fn = gate_fidelity(comb, pulse, int(k0), "numeric-full")
    print(f"{k0:>4} {lam.lambda_z:>12.6f} {fa:>12.6f} {fn:>12.6f}")

# the centre qubit sees a symmetric comb, so the Z term cancels exactly
