"""Frequency comb, pulse configuration and index-set helpers.

All frequencies are angular (rad/s). A comb is the contiguous index set
``K = {l, ..., r}`` with qubit ``k`` sitting at ``omega_q0 + k * delta`` and
driven resonantly by a tone at the same frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError

TWO_PI = 2.0 * math.pi

# below this |x| the sinc series is used instead of sin(x)/x
SINC_SERIES_THRESHOLD = 1e-4


@dataclass(frozen=True)
class FrequencyComb:
    """Regularly spaced drive/qubit frequencies indexed by ``l..r``.

    Parameters
    ----------
    l, r : int
        Leftmost and rightmost qubit index.
    delta : float
        Angular frequency spacing between neighbouring tones, rad/s.
    omega_q0 : float
        Angular frequency of the index-0 qubit, rad/s.
    phases : tuple of float, optional
        Per-tone drive phases (one per index, ordered ``l..r``). Only the
        numerical propagator honours nonzero phases.
    """

    l: int
    r: int
    delta: float
    omega_q0: float
    phases: tuple = field(default=None)

    def __post_init__(self):
        if int(self.l) != self.l or int(self.r) != self.r:
            raise PreconditionError("comb indices must be integers")
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "r", int(self.r))
        if self.r < self.l:
            raise PreconditionError(f"empty comb: r={self.r} < l={self.l}")
        if not self.delta > 0:
            raise PreconditionError("frequency spacing must be positive")
        if not self.delta < self.omega_q0 / 10:
            raise PreconditionError(
                "frequency spacing must satisfy delta < omega_q0/10 "
                f"(delta={self.delta:g}, omega_q0={self.omega_q0:g})"
            )
        if self.phases is None:
            object.__setattr__(self, "phases", (0.0,) * self.n)
        else:
            phases = tuple(float(p) for p in self.phases)
            if len(phases) != self.n:
                raise PreconditionError(
                    f"expected {self.n} tone phases, got {len(phases)}"
                )
            object.__setattr__(self, "phases", phases)

    @classmethod
    def from_hz(cls, l, r, df_hz, fq0_hz, phases=None):
        """Build a comb from ordinary frequencies (Hz)."""
        return cls(l, r, TWO_PI * df_hz, TWO_PI * fq0_hz, phases)

    @classmethod
    def centered(cls, n, delta, omega_q0):
        """Comb of ``n`` tones with ``l = -floor((n-1)/2)``, ``r = floor(n/2)``."""
        if n < 1:
            raise PreconditionError("need at least one tone")
        return cls(-((n - 1) // 2), n // 2, delta, omega_q0)

    @property
    def n(self) -> int:
        return self.r - self.l + 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.l, self.r + 1)

    @property
    def tau0(self) -> float:
        """Orthogonality pulse length ``2*pi/delta``."""
        return TWO_PI / self.delta

    @property
    def has_phases(self) -> bool:
        return any(p != 0.0 for p in self.phases)

    def __contains__(self, k) -> bool:
        return self.l <= k <= self.r

    def omega_q(self, k):
        return self.omega_q0 + k * self.delta

    def omega_d(self, k):
        # resonant drive
        return self.omega_q(k)

    def check_target(self, k0) -> int:
        """Return ``k0`` as an int, raising if it has no drive tone."""
        if int(k0) != k0:
            raise PreconditionError(f"target index must be an integer, got {k0}")
        k0 = int(k0)
        if k0 not in self:
            raise PreconditionError(
                f"k0 outside comb: k0={k0} not in [{self.l}, {self.r}]"
            )
        return k0


@dataclass(frozen=True)
class PulseConfig:
    """Rectangular pulse of length ``tau`` targeting rotation ``phi``.

    ``alpha`` defaults to ``phi / tau`` so that a lone resonant tone gives
    exactly the rotation ``exp(i phi/2 sigma_x)``.
    """

    tau: float
    phi: float
    alpha: float = None

    def __post_init__(self):
        if not self.tau > 0:
            raise PreconditionError(f"pulse length must be positive, got {self.tau}")
        if not 0 < self.phi < TWO_PI:
            raise PreconditionError(f"rotation angle must lie in (0, 2pi), got {self.phi}")
        if self.alpha is None:
            object.__setattr__(self, "alpha", self.phi / self.tau)
        elif not self.alpha > 0:
            raise PreconditionError(f"drive amplitude must be positive, got {self.alpha}")

    @classmethod
    def from_tau_ratio(cls, comb: FrequencyComb, ratio: float, phi: float):
        """Pulse of length ``ratio * tau0`` with the default amplitude rule."""
        return cls(ratio * comb.tau0, phi)

    @property
    def uses_default_amplitude(self) -> bool:
        return math.isclose(self.alpha, self.phi / self.tau, rel_tol=1e-12)


def gamma_set(comb: FrequencyComb, k0: int) -> list[int]:
    """Indices of ``comb`` whose mirror image about ``k0`` is not in the comb.

    Returns the sorted list ``[k for k in K if 2*k0 - k not in K]``.
    """
    k0 = comb.check_target(k0)
    return [int(k) for k in comb.indices if (2 * k0 - k) not in comb]


def detuning(comb: FrequencyComb, k: int, j: int) -> float:
    """Angular frequency offset ``(k - j) * delta`` between tone k and qubit j."""
    return (k - j) * comb.delta


def sinc(x):
    """Unnormalised ``sin(x)/x`` with the removable singularity filled.

    Accepts scalars or arrays; returns the same kind.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SINC_SERIES_THRESHOLD
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return out if out.ndim else float(out)
