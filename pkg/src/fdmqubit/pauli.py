"""Pauli matrices and small helpers for 2x2 unitaries."""

import numpy as np

from .errors import PreconditionError

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def from_pauli(hx, hy, hz, h0=0.0):
    """Return ``h0*I + hx*X + hy*Y + hz*Z`` as a 2x2 complex matrix."""
    return h0 * IDENTITY + hx * SIGMA_X + hy * SIGMA_Y + hz * SIGMA_Z


def unitarity_error(u) -> float:
    """Max-entry deviation of ``U^dagger U`` from the identity."""
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - IDENTITY)))


def check_unitary(u, atol=1e-8):
    """Return ``u`` as a complex 2x2 array, raising if it is not unitary."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise PreconditionError(f"expected a 2x2 matrix, got shape {u.shape}")
    err = unitarity_error(u)
    if err > atol:
        raise PreconditionError(f"matrix is not unitary (|U^dag U - I|_max = {err:.3g})")
    return u


def polar_project(u):
    """One Newton step of the polar iteration, ``(U + U^{-dagger}) / 2``.

    Converges quadratically, so a single step is enough when ``U`` is
    already unitary to ~1e-8.
    """
    u = np.asarray(u, dtype=complex)
    return 0.5 * (u + np.linalg.inv(u).conj().T)
