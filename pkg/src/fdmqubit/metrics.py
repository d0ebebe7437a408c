"""Gate fidelity, infidelity scaling fits and rectangular-pulse spectra."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .comb import PulseConfig, sinc
from .errors import PreconditionError
from .magnus import MagnusAngles
from .pauli import check_unitary

DIM = 2


@dataclass(frozen=True)
class FidelityResult:
    value: float

    @property
    def infidelity(self) -> float:
        return 1.0 - self.value

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    residual_rms: float


def average_gate_fidelity(u1, u2) -> FidelityResult:
    """Average gate fidelity ``(|Tr(U1^dag U2)|^2 + d) / (d(d+1))`` for d = 2."""
    u1 = check_unitary(u1)
    u2 = check_unitary(u2)
    overlap = np.trace(u1.conj().T @ u2)
    return FidelityResult(float((abs(overlap) ** 2 + DIM) / (DIM * (DIM + 1))))


def analytic_fidelity(angles: MagnusAngles, phi: float) -> FidelityResult:
    """Closed-form fidelity of the Magnus gate against ``exp(i phi/2 X)``.

    Algebraically identical to ``average_gate_fidelity(ideal_unitary(phi),
    magnus_unitary(angles))``; kept separate so the two routes can be
    cross-checked.
    """
    if phi == 0:
        raise PreconditionError("rotation angle must be nonzero")
    norm = angles.lambda_norm
    half = abs(phi) / 2
    amp = math.cos(half) * math.cos(norm) + (
        math.copysign(1.0, phi) * angles.lambda_x * sinc(norm) * math.sin(half)
    )
    return FidelityResult((2 * amp * amp + 1) / 3)


def fit_infidelity_slope(points) -> SlopeFit:
    """Least-squares line through ``(log m, log infidelity)``.

    ``points`` is an iterable of ``(m, infidelity)`` pairs. Zero infidelities
    must be dropped by the caller since they have no logarithm.
    """
    pts = np.asarray(list(points), dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise PreconditionError("need at least 3 (m, infidelity) points")
    m, inf = pts[:, 0], pts[:, 1]
    if np.any(m <= 0) or np.any(inf <= 0):
        raise PreconditionError("m and infidelity must be strictly positive")
    x, y = np.log(m), np.log(inf)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return SlopeFit(float(slope), float(intercept), float(np.sqrt(np.mean(resid**2))))


def spectrum_magnitude(pulse: PulseConfig, omega_d, omega):
    """``|int_0^tau sin(omega_d t) exp(-i omega t) dt|`` in closed form.

    Both the positive- and negative-frequency lobes are kept. Vectorised
    over ``omega``; result is in seconds.
    """
    tau = pulse.tau
    omega = np.asarray(omega, dtype=float)
    lo = omega_d - omega
    hi = omega_d + omega
    # int_0^tau exp(i nu t) dt = tau * exp(i nu tau/2) * sinc(nu tau/2)
    pos = np.exp(0.5j * lo * tau) * sinc(0.5 * lo * tau)
    neg = np.exp(-0.5j * hi * tau) * sinc(0.5 * hi * tau)
    out = 0.5 * tau * np.abs(pos - neg)
    return out if out.ndim else float(out)
