"""Numerical propagation of the comb-driven target qubit.

The time-ordered evolution is integrated with fixed-step classical RK4.
Because the equation ``dU/dt = -i H(t) U`` is linear, each RK4 step is a
fixed 2x2 matrix that depends only on ``H`` at the step's start, midpoint
and end. Those step matrices are built for all steps at once with numpy
and then multiplied together pairwise, which is the same arithmetic as a
step-by-step loop without the per-step Python overhead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .comb import TWO_PI, FrequencyComb, PulseConfig
from .errors import ConfigurationError, PreconditionError
from .pauli import from_pauli, polar_project, unitarity_error

FRAMES = ("lab", "rotating-full", "rotating-rwa")
MIN_STEPS_PER_PERIOD = 100

# steps per chunk; bounds peak memory for long pulses
_CHUNK = 1 << 17


@dataclass(frozen=True)
class HamiltonianModel:
    """Target qubit ``k0`` of ``comb`` driven by ``pulse``, seen in ``frame``.

    ``lab`` is the full lab-frame Hamiltonian, ``rotating-full`` the exact
    interaction-picture one (counter-rotating terms kept) and
    ``rotating-rwa`` drops the terms near twice the qubit frequency.
    """

    frame: str
    comb: FrequencyComb
    pulse: PulseConfig
    k0: int

    def __post_init__(self):
        if self.frame not in FRAMES:
            raise PreconditionError(f"unknown frame {self.frame!r}; choose from {FRAMES}")
        object.__setattr__(self, "k0", self.comb.check_target(self.k0))

    @property
    def omega_q(self) -> float:
        return self.comb.omega_q(self.k0)

    def fastest_frequency(self) -> float:
        """Largest angular frequency present in this frame's Hamiltonian."""
        comb, k0 = self.comb, self.k0
        if self.frame == "lab":
            w = max(self.omega_q, comb.omega_d(comb.r))
        elif self.frame == "rotating-full":
            w = 2 * self.omega_q + (comb.r - k0) * comb.delta
        else:
            w = max(abs(comb.r - k0), abs(comb.l - k0), 1) * comb.delta
        # the drive strength bounds how fast U itself can turn
        return max(w, self.pulse.alpha * comb.n)


@dataclass(frozen=True)
class IntegrationSettings:
    steps_per_fastest_period: int = 100
    renormalize_every: int = 0

    def __post_init__(self):
        if self.steps_per_fastest_period < MIN_STEPS_PER_PERIOD:
            raise ConfigurationError(
                f"steps_per_fastest_period={self.steps_per_fastest_period} is below the "
                f"resolution bound of {MIN_STEPS_PER_PERIOD}"
            )
        if self.renormalize_every < 0:
            raise ConfigurationError("renormalize_every must be >= 0")


@dataclass(frozen=True)
class Evolution:
    """Result of :func:`evolve`.

    ``unitary`` is the polar-projected rotating-frame propagator and
    ``raw`` the integrator output before projection.
    """

    unitary: np.ndarray
    raw: np.ndarray
    unitarity_error: float
    n_steps: int
    step: float


def pauli_coefficients(model: HamiltonianModel, t):
    """Return ``(hx, hy, hz)`` with ``H(t) = hx X + hy Y + hz Z``."""
    t = np.asarray(t, dtype=float)
    comb, pulse, k0 = model.comb, model.pulse, model.k0
    alpha = pulse.alpha
    envelope = ((t >= 0) & (t <= pulse.tau)).astype(float)

    if model.frame == "lab":
        drive = np.zeros_like(t)
        for k, theta in zip(comb.indices, comb.phases):
            drive = drive + np.sin(comb.omega_d(k) * t + theta)
        hy = alpha * envelope * drive
        hz = np.full_like(t, -0.5 * model.omega_q)
        return np.zeros_like(t), hy, hz

    # S(t) = sum_k exp(i (Delta_{k,k0} t + theta_k))
    slow = np.zeros(t.shape, dtype=complex)
    for k, theta in zip(comb.indices, comb.phases):
        slow = slow + np.exp(1j * ((k - k0) * comb.delta * t + theta))
    half = 0.5 * alpha * envelope
    if model.frame == "rotating-rwa":
        return -half * slow.real, half * slow.imag, np.zeros_like(t)
    fast = np.exp(2j * model.omega_q * t) * slow
    return half * (fast.real - slow.real), half * (fast.imag + slow.imag), np.zeros_like(t)


def hamiltonian_at(model: HamiltonianModel, t: float) -> np.ndarray:
    """The selected frame's Hamiltonian at time ``t`` as a 2x2 matrix."""
    hx, hy, hz = pauli_coefficients(model, float(t))
    return from_pauli(float(hx), float(hy), float(hz))


# 2x2 matrices below are stored as (4, n) arrays of entries [m00, m01, m10, m11]
def _mul(a, b):
    return np.stack(
        (
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        )
    )


def _generator(hx, hy, hz):
    # -i H for H = hx X + hy Y + hz Z
    return np.stack((-1j * hz, -1j * hx - hy, -1j * hx + hy, 1j * hz))


def _identity(n):
    eye = np.zeros((4, n), dtype=complex)
    eye[0] = eye[3] = 1.0
    return eye


def _rk4_steps(model, t0, h, n):
    """Per-step RK4 propagators for steps starting at ``t0 + i*h``."""
    t = t0 + np.arange(2 * n + 1) * (0.5 * h)
    # n*h can round past tau, where the envelope would switch off
    t = np.minimum(t, model.pulse.tau)
    gen = _generator(*pauli_coefficients(model, t))
    a0, am, a1 = gen[:, 0:-1:2], gen[:, 1::2], gen[:, 2::2]
    eye = _identity(n)
    k1 = a0
    k2 = _mul(am, eye + 0.5 * h * k1)
    k3 = _mul(am, eye + 0.5 * h * k2)
    k4 = _mul(a1, eye + h * k3)
    return eye + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _ordered_product(steps):
    """``steps[:, n-1] @ ... @ steps[:, 0]`` by pairwise reduction."""
    while steps.shape[1] > 1:
        if steps.shape[1] % 2:
            steps = np.concatenate((steps, _identity(1)), axis=1)
        steps = _mul(steps[:, 1::2], steps[:, 0::2])
    return steps[:, 0]


def _to_matrix(flat):
    return np.array([[flat[0], flat[1]], [flat[2], flat[3]]], dtype=complex)


def step_count(model: HamiltonianModel, settings: IntegrationSettings) -> int:
    period = TWO_PI / model.fastest_frequency()
    return max(1, math.ceil(model.pulse.tau / (period / settings.steps_per_fastest_period)))


def evolve(model: HamiltonianModel, settings: IntegrationSettings | None = None) -> Evolution:
    """Integrate ``dU/dt = -i H(t) U`` over the pulse, starting from ``U = I``.

    Lab-frame results are rotated into the target qubit's rotating frame,
    so every frame returns the operator that is compared with the ideal
    gate.
    """
    settings = settings or IntegrationSettings()
    tau = model.pulse.tau
    n = step_count(model, settings)
    h = tau / n

    block = settings.renormalize_every or _CHUNK
    u = np.eye(2, dtype=complex)
    start = 0
    while start < n:
        count = min(block, n - start)
        seg = _rk4_steps(model, start * h, h, count)
        u = _to_matrix(_ordered_product(seg)) @ u
        start += count
        if settings.renormalize_every and start < n:
            u = polar_project(u)

    if model.frame == "lab":
        phase = 0.5 * model.omega_q * tau
        u = np.diag([np.exp(-1j * phase), np.exp(1j * phase)]) @ u

    raw = u
    return Evolution(polar_project(raw), raw, unitarity_error(raw), n, h)


def evolve_unitary(model: HamiltonianModel, settings: IntegrationSettings | None = None) -> np.ndarray:
    """Rotating-frame propagator at the end of the pulse (polar-projected)."""
    return evolve(model, settings).unitary
