import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fdmqubit import FrequencyComb, PulseConfig, PreconditionError, detuning, gamma_set, sinc

from conftest import DELTA, OMEGA_Q0


def brute_gamma(l, r, k0):
    return [k for k in range(l, r + 1) if not (l <= 2 * k0 - k <= r)]


@pytest.mark.parametrize(
    "k0, expected",
    [
        (0, []),
        (3, [-7, -6, -5, -4, -3, -2]),
        (7, list(range(-7, 7))),
    ],
)
def test_gamma_set_examples(reference_comb, k0, expected):
    assert gamma_set(reference_comb, k0) == expected
    assert gamma_set(reference_comb, k0) == brute_gamma(-7, 7, k0)


def test_gamma_set_rejects_out_of_range(reference_comb):
    with pytest.raises(PreconditionError, match="k0 outside comb"):
        gamma_set(reference_comb, 8)


@given(st.integers(-10, 10), st.integers(0, 20), st.data())
def test_gamma_reflection_symmetry(l, width, data):
    r = l + width
    comb = FrequencyComb(l, r, DELTA, OMEGA_Q0)
    k0 = data.draw(st.integers(l, r))
    g = gamma_set(comb, k0)
    mirrored = sorted(l + r - k for k in g)
    assert mirrored == gamma_set(comb, l + r - k0)
    assert k0 not in g
    assert g == brute_gamma(l, r, k0)


@given(st.integers(-10, 10), st.integers(0, 20), st.data())
def test_gamma_empty_only_at_center(l, width, data):
    r = l + width
    comb = FrequencyComb(l, r, DELTA, OMEGA_Q0)
    k0 = data.draw(st.integers(l, r))
    centered = (r - l) % 2 == 0 and 2 * k0 == l + r
    assert (len(gamma_set(comb, k0)) == 0) == centered


def test_detuning(reference_comb):
    assert detuning(reference_comb, 3, 3) == 0
    assert detuning(reference_comb, 1, 0) == pytest.approx(2 * math.pi * 1e7, rel=1e-15)
    assert detuning(reference_comb, -1, 2) == pytest.approx(-2 * math.pi * 3e7, rel=1e-15)


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_detuning_antisymmetric(k, j):
    comb = FrequencyComb(-20, 20, DELTA, OMEGA_Q0)
    assert detuning(comb, k, j) == -detuning(comb, j, k)


def test_sinc_values():
    assert sinc(0.0) == 1.0
    assert abs(sinc(math.pi)) < 1e-15
    assert sinc(math.pi / 2) == pytest.approx(2 / math.pi, rel=1e-15)
    assert sinc(math.pi / 2) == pytest.approx(0.636619772, abs=1e-9)


def test_sinc_series_branch_matches_direct_formula():
    for x in [1e-5, 5e-5, 9.99e-5, 1.0001e-4]:
        assert sinc(x) == pytest.approx(math.sin(x) / x, rel=1e-15)
    assert sinc(1e-300) == 1.0


def test_sinc_even():
    x = np.random.default_rng(0).uniform(-100, 100, 1000)
    np.testing.assert_array_equal(sinc(x), sinc(-x))


def test_comb_validation():
    with pytest.raises(PreconditionError):
        FrequencyComb(2, 1, DELTA, OMEGA_Q0)
    with pytest.raises(PreconditionError):
        FrequencyComb(0, 1, OMEGA_Q0 / 10, OMEGA_Q0)
    with pytest.raises(PreconditionError):
        FrequencyComb(0, 1, -DELTA, OMEGA_Q0)
    with pytest.raises(PreconditionError):
        FrequencyComb(0, 1, DELTA, OMEGA_Q0, phases=(0.0,))


def test_comb_derived_quantities(reference_comb):
    assert reference_comb.n == 15
    assert reference_comb.tau0 == pytest.approx(100e-9, rel=1e-12)
    assert reference_comb.omega_q(3) == reference_comb.omega_d(3) == OMEGA_Q0 + 3 * DELTA
    assert FrequencyComb.centered(4, DELTA, OMEGA_Q0).indices.tolist() == [-1, 0, 1, 2]
    assert FrequencyComb.centered(7, DELTA, OMEGA_Q0).indices.tolist() == [-3, -2, -1, 0, 1, 2, 3]


def test_pulse_config():
    p = PulseConfig(100e-9, math.pi / 2)
    assert p.alpha == pytest.approx(math.pi / 2 / 100e-9)
    assert p.uses_default_amplitude
    assert not PulseConfig(100e-9, 1.0, alpha=1.0).uses_default_amplitude
    for bad in [dict(tau=0, phi=1), dict(tau=1, phi=0), dict(tau=1, phi=2 * math.pi), dict(tau=1, phi=1, alpha=-1)]:
        with pytest.raises(PreconditionError):
            PulseConfig(**bad)
