"""Second-order Magnus approximation of a comb-driven single-qubit gate.

Under the rotating-wave Hamiltonian the first two Magnus terms over a
rectangular pulse collapse to ``-(lx X + ly Y)`` and ``-lz Z``; everything
here is expressed through that angle triple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .comb import FrequencyComb, PulseConfig, gamma_set, sinc
from .errors import PreconditionError, UnsupportedConfigurationError
from .pauli import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z

# |tau - m*tau0| must be below this fraction of tau0 for a reduction to apply
TAU_MULTIPLE_RTOL = 1e-9


@dataclass(frozen=True)
class MagnusAngles:
    """Effective rotation ``exp(i(lx X + ly Y + lz Z))`` as three half-angles."""

    lambda_x: float
    lambda_y: float
    lambda_z: float

    @property
    def lambda_norm(self) -> float:
        return math.hypot(self.lambda_x, self.lambda_y, self.lambda_z)

    def as_tuple(self):
        return (self.lambda_x, self.lambda_y, self.lambda_z)


def _require_closed_form(comb: FrequencyComb, k0):
    if comb.has_phases:
        raise UnsupportedConfigurationError(
            "closed-form angles assume all drive phases are zero"
        )
    return comb.check_target(k0)


def _require_default_amplitude(pulse: PulseConfig):
    if not pulse.uses_default_amplitude:
        raise PreconditionError("reduced forms require alpha = phi / tau")


def lambda_general(comb: FrequencyComb, pulse: PulseConfig, k0: int) -> MagnusAngles:
    """Angles for an arbitrary pulse length and amplitude.

    Implements the first-order sums for ``lambda_x``/``lambda_y`` and the
    four-term second-order expression for ``lambda_z`` literally, with the
    ``j != k0`` and ``j != k`` exclusions applied as index masks.
    """
    k0 = _require_closed_form(comb, k0)
    alpha, tau = pulse.alpha, pulse.tau

    ks = comb.indices
    gamma = np.array(gamma_set(comb, k0), dtype=int)
    off = ks[ks != k0]

    d_all = (ks - k0) * comb.delta
    d_off = (off - k0) * comb.delta
    d_gam = (gamma - k0) * comb.delta

    lam_x = 0.5 * alpha * tau * (1.0 + np.sum(sinc(d_off * tau)))
    lam_y = -0.5 * alpha * tau * np.sum(np.sin(d_gam * tau / 2) * sinc(d_gam * tau / 2))

    if gamma.size == 0:
        return MagnusAngles(float(lam_x), float(lam_y), 0.0)

    # gamma and K\{k0} never contain k0, so these denominators are nonzero
    assert np.all(d_gam != 0) and np.all(d_off != 0)

    term1 = np.sum((np.cos(d_gam * tau) - 1.5 * sinc(d_gam * tau)) / d_gam)

    # k over gamma (rows), j over K\{k0} (columns)
    dk = d_gam[:, None]
    dj = d_off[None, :]
    term2 = np.sum(sinc(dj * tau) / dk + sinc((dk + dj) * tau) / (2 * dj))

    # k over all of K including k0 (rows), j over gamma (columns)
    term3 = -np.sum(sinc((d_all[:, None] + d_gam[None, :]) * tau) / (2 * d_gam[None, :]))

    not_same = gamma[:, None] != off[None, :]
    d_kj = (gamma[:, None] - off[None, :]) * comb.delta
    term4 = -np.sum(np.where(not_same, (1 / dk + 1 / dj) * sinc(d_kj * tau) / 2, 0.0))

    lam_z = 0.25 * alpha**2 * tau * (term1 + term2 + term3 + term4)
    return MagnusAngles(float(lam_x), float(lam_y), float(lam_z))


def tau_multiple(comb: FrequencyComb, tau: float, unit: float = 1.0):
    """Return ``m`` if ``tau`` is ``m * unit * tau0`` for a positive integer m, else None."""
    step = unit * comb.tau0
    m = round(tau / step)
    if m >= 1 and abs(tau - m * step) <= TAU_MULTIPLE_RTOL * comb.tau0:
        return int(m)
    return None


def _inverse_offsets(comb, k0):
    return np.array([k - k0 for k in gamma_set(comb, k0)], dtype=float)


def lambda_orthogonal(comb: FrequencyComb, pulse: PulseConfig, k0: int) -> MagnusAngles:
    """Angles for ``tau = m * tau0``: ``(phi/2, 0, phi^2/(8 pi m) * sum 1/(k-k0))``."""
    k0 = _require_closed_form(comb, k0)
    _require_default_amplitude(pulse)
    m = tau_multiple(comb, pulse.tau)
    if m is None:
        raise PreconditionError(
            f"pulse length {pulse.tau:g} s is not an integer multiple of tau0={comb.tau0:g} s"
        )
    phi = pulse.phi
    inv = _inverse_offsets(comb, k0)
    lam_z = phi**2 / (8 * math.pi * m) * float(np.sum(1.0 / inv))
    return MagnusAngles(phi / 2, 0.0, lam_z)


def lambda_quasi_orthogonal(comb: FrequencyComb, pulse: PulseConfig, k0: int) -> MagnusAngles:
    """Angles for ``tau = tau0 / 2``, where only odd offsets feed ``lambda_y``."""
    k0 = _require_closed_form(comb, k0)
    _require_default_amplitude(pulse)
    if abs(pulse.tau - comb.tau0 / 2) > TAU_MULTIPLE_RTOL * comb.tau0:
        raise PreconditionError(
            f"pulse length {pulse.tau:g} s is not tau0/2 = {comb.tau0 / 2:g} s"
        )
    phi = pulse.phi
    d = _inverse_offsets(comb, k0)
    sign = np.where(d.astype(int) % 2 == 0, 1.0, -1.0)
    lam_y = phi / (2 * math.pi) * float(np.sum((sign - 1.0) / d))
    lam_z = phi**2 / (4 * math.pi) * float(np.sum(sign / d))
    return MagnusAngles(phi / 2, lam_y, lam_z)


def lambda_closed_form(comb: FrequencyComb, pulse: PulseConfig, k0: int) -> MagnusAngles:
    """Use the matching reduction when ``tau`` is ``m*tau0`` or ``tau0/2``.

    Any other pulse length (or a non-default amplitude) falls back to
    :func:`lambda_general`.
    """
    if pulse.uses_default_amplitude:
        if tau_multiple(comb, pulse.tau) is not None:
            return lambda_orthogonal(comb, pulse, k0)
        if abs(pulse.tau - comb.tau0 / 2) <= TAU_MULTIPLE_RTOL * comb.tau0:
            return lambda_quasi_orthogonal(comb, pulse, k0)
    return lambda_general(comb, pulse, k0)


def long_pulse_limit(comb: FrequencyComb, phi: float, k0: int) -> MagnusAngles:
    """Limit of the angles as ``tau -> inf`` with ``alpha = phi/tau``."""
    comb.check_target(k0)
    return MagnusAngles(phi / 2, 0.0, 0.0)


def magnus_unitary(angles: MagnusAngles) -> np.ndarray:
    """``cos(L) I + i sin(L)/L (lx X + ly Y + lz Z)`` with ``L`` the angle norm."""
    lx, ly, lz = angles.as_tuple()
    norm = angles.lambda_norm
    gen = lx * SIGMA_X + ly * SIGMA_Y + lz * SIGMA_Z
    return math.cos(norm) * IDENTITY + 1j * sinc(norm) * gen


def ideal_unitary(phi: float) -> np.ndarray:
    """Target gate ``exp(i phi/2 X)``."""
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=complex)
