"""Lab frame, exact rotating frame and rotating-wave approximation.

The lab and exact rotating frames describe the same dynamics; the lab
frame just needs finer steps to follow the bare qubit precession. The
rotating-wave model drops terms near twice the qubit frequency, and the
error it makes at the comb edge shrinks as the qubit frequency grows.
"""

import math

from fdmqubit import (
    FrequencyComb,
    HamiltonianModel,
    IntegrationSettings,
    PulseConfig,
    average_gate_fidelity,
    evolve,
    ideal_unitary,
)

phi = math.pi / 2
target = ideal_unitary(phi)


def fidelity(comb, k0, frame, steps=100):
    pulse = PulseConfig.from_tau_ratio(comb, 1.0, phi)
    ev = evolve(HamiltonianModel(frame, comb, pulse, k0), IntegrationSettings(steps))
    return average_gate_fidelity(target, ev.unitary).value, ev


small = FrequencyComb.from_hz(-1, 1, 10e6, 5e9)
f_lab, ev = fidelity(small, 1, "lab", steps=400)
f_rot, _ = fidelity(small, 1, "rotating-full")
print(f"N=3, k0=1: lab {f_lab:.9f}  rotating {f_rot:.9f}  ({ev.n_steps} lab steps)")

for fq in (5e9, 10e9, 20e9):
    comb = FrequencyComb.from_hz(-7, 7, 10e6, fq)
    full, _ = fidelity(comb, 7, "rotating-full")
    rwa, _ = fidelity(comb, 7, "rotating-rwa")
    print(f"f_q = {fq / 1e9:>4.0f} GHz: F_full - F_rwa at k0=7 = {full - rwa:+.2e}")
