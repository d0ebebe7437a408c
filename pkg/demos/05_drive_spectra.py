"""Spectra of rectangular drive pulses.

A pulse of length tau0 puts each of the other comb tones on a spectral
zero. At tau0/2 the zeros only fall on even offsets, so neighbours leak.
"""

from fdmqubit.experiments import reference_comb, run_fig2_spectrum

comb = reference_comb(-2, 2)

for ratio in (1.0, 0.5):
    rows = run_fig2_spectrum(ratio)
    print(f"tau = {ratio} tau0: |spectrum of tone k=0| at each comb frequency, relative to its peak")
    mags = {}
    for w, k, m in rows:
        if k == 0:
            mags[w] = m
    freqs = sorted(mags)
    peak = mags[min(freqs, key=lambda w: abs(w - comb.omega_d(0)))]
    for j in comb.indices:
        w = min(freqs, key=lambda x: abs(x - comb.omega_d(int(j))))
        print(f"  tone {j:+d}: {mags[w] / peak:.3e}")
