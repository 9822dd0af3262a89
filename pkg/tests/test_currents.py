import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abcyl.currents import (GaussianPacket, MixedState, MomentumRule,
                            ResolutionError, TabulatedPacket, chi,
                            circular_current_mode,
                            circular_current_mode_quadrature,
                            circular_current_packet,
                            longitudinal_current_packet_direct,
                            longitudinal_current_packet_formula,
                            packet_energy, packet_grid, packet_norm,
                            packet_polarization, packet_total_flux,
                            packet_velocity_expectation)
from abcyl.params import DimensionlessParams

D = DimensionlessParams(mu=1.0, nu=1.0, beta=0.3)


def test_chi_hand_value():
    d = DimensionlessParams(mu=1.0, nu=1.0)
    assert chi(1, 0.5, d) == pytest.approx(0.5 / math.sqrt(2.25))
    with pytest.raises(ValueError):
        chi(1, 0.5, DimensionlessParams(mu=1.0))


def test_chi_antisymmetry_in_lambda_plus_beta():
    d0 = DimensionlessParams(mu=1.0, nu=1.0)
    for n in (1, 2):
        for lam in (0.5, 1.5, 2.5):
            assert chi(n, lam, d0) == pytest.approx(-chi(n, -lam, d0), rel=1e-15)


def test_mixed_state_normalization():
    MixedState(n=1, lam=0.5, c_plus=1.0, c_minus=0.0)
    MixedState(n=1, lam=0.5, c_plus=1 / math.sqrt(2), c_minus=1j / math.sqrt(2))
    with pytest.raises(ValueError):
        MixedState(n=1, lam=0.5, c_plus=1.0, c_minus=0.5)


def test_circular_current_closed_vs_quadrature():
    for c_plus, c_minus in ((1.0, 0.0), (0.0, 1.0),
                            (1 / math.sqrt(2), 1j / math.sqrt(2))):
        state = MixedState(n=2, lam=1.5, c_plus=c_plus, c_minus=c_minus)
        closed = circular_current_mode(state, D)
        quad = circular_current_mode_quadrature(state, D)
        assert quad == pytest.approx(closed, abs=1e-12)


def test_circular_current_mixing_independent_bitwise():
    values = set()
    for ph in (0.0, 1.0, 2.5):
        state = MixedState(n=1, lam=-0.5,
                           c_plus=0.6 * cmath.exp(1j * ph), c_minus=0.8)
        values.add(circular_current_mode(state, D))
    assert len(values) == 1


def test_packet_grid_normalizes():
    p = GaussianPacket(lam=0.5, k0=1.0, width=0.5)
    k, wk, ap, am = packet_grid(p)
    assert np.sum(wk * (np.abs(ap) ** 2 + np.abs(am) ** 2)) \
        == pytest.approx(1.0, abs=1e-12)


def test_packet_rejects_unnormalized():
    p = GaussianPacket(lam=0.5, k0=1.0, width=0.5, normalize=False)
    with pytest.raises(ValueError):
        packet_grid(p)


def test_packet_validation():
    with pytest.raises(ValueError):
        GaussianPacket(lam=0.5, k0=0.0, width=0.0)
    with pytest.raises(ValueError):
        GaussianPacket(lam=0.5, k0=0.0, width=1.0,
                       weight_plus=0.0, weight_minus=0.0)


def test_tabulated_packet():
    k = np.linspace(-3, 3, 801)
    g = np.exp(-k**2)
    p = TabulatedPacket(lam=0.5, k_grid=tuple(k), a_plus=tuple(g),
                        a_minus=tuple(0 * g))
    d = DimensionlessParams(mu=1.0)
    ref = GaussianPacket(lam=0.5, k0=0.0, width=1 / math.sqrt(2))
    assert circular_current_packet(p, d) == pytest.approx(
        circular_current_packet(ref, d), rel=1e-6)


def test_packet_polarization_pure():
    d = DimensionlessParams(mu=1.0)
    p = GaussianPacket(lam=1.5, k0=0.7, width=0.4)
    assert packet_polarization(p) == pytest.approx(1.5, abs=1e-12)
    m = GaussianPacket(lam=1.5, k0=0.7, width=0.4,
                       weight_plus=1.0, weight_minus=1.0)
    assert packet_polarization(m) == pytest.approx(0.0, abs=1e-12)
    assert packet_energy(p, d) > d.mu


def test_symmetric_packet_has_no_flux_at_origin():
    d = DimensionlessParams(mu=1.0)
    p = GaussianPacket(lam=0.5, k0=0.0, width=0.5)
    i3 = longitudinal_current_packet_direct(p, d, 0.0, [0.0])
    assert abs(i3[0]) < 1e-12


def test_packet_norm_and_flux_conservation():
    d = DimensionlessParams(mu=1.0)
    p = GaussianPacket(lam=0.5, k0=1.0, width=0.5)
    rule = MomentumRule(order=400)
    v = packet_velocity_expectation(p, d, rule)
    for t in (0.0, 2.0):
        assert packet_norm(p, d, t, 20.0, rule, z_order=600) \
            == pytest.approx(1.0, abs=1e-8)
        assert packet_total_flux(p, d, t, 20.0, rule, z_order=600,
                                 phi_points=8) == pytest.approx(v, abs=1e-8)


def test_resolution_error():
    d = DimensionlessParams(mu=1.0)
    p = GaussianPacket(lam=0.5, k0=2.0, width=0.5)
    with pytest.raises(ResolutionError) as exc:
        longitudinal_current_packet_direct(p, d, 100.0, [50.0],
                                           MomentumRule(order=20))
    assert exc.value.min_points > 20
    assert str(exc.value.min_points) in str(exc.value)


def test_appendix_formula_runs_and_deviates_smoothly():
    # the printed double-integral form is tracked for comparison only;
    # it must evaluate to a real, finite profile
    d = DimensionlessParams(mu=1.0)
    p = GaussianPacket(lam=0.5, k0=1.0, width=0.5)
    zs = np.linspace(-3, 3, 7)
    rule = MomentumRule(order=300)
    direct = longitudinal_current_packet_direct(p, d, 0.0, zs, rule)
    formula = longitudinal_current_packet_formula(p, d, 0.0, zs, rule)
    assert np.all(np.isfinite(formula))
    assert np.max(np.abs(direct - formula)) < 0.1


half_odd = st.integers(-5, 4).map(lambda m: m + 0.5)


@given(n=st.integers(1, 8), lam=half_odd, mu=st.floats(0.1, 5.0),
       nu=st.floats(0.1, 3.0), beta=st.floats(-1.5, 1.5))
@settings(max_examples=80, deadline=None)
def test_chi_bounded(n, lam, mu, nu, beta):
    d = DimensionlessParams(mu=mu, nu=nu, beta=beta)
    assert -1.0 < chi(n, lam, d) < 1.0


@given(n=st.integers(1, 6), lam=half_odd, mu=st.floats(0.1, 5.0),
       nu=st.floats(0.1, 3.0), beta=st.floats(-1.5, 1.5))
@settings(max_examples=60, deadline=None)
def test_chi_magnitude_decreases_with_n(n, lam, mu, nu, beta):
    d = DimensionlessParams(mu=mu, nu=nu, beta=beta)
    assert abs(chi(n + 1, lam, d)) <= abs(chi(n, lam, d)) + 1e-15


@given(lam=half_odd, k0=st.floats(-2.0, 2.0), width=st.floats(0.1, 1.0),
       mu=st.floats(0.2, 4.0), beta=st.floats(-0.9, 0.9))
@settings(max_examples=40, deadline=None)
def test_packet_current_bounded_by_saturation(lam, k0, width, mu, beta):
    d = DimensionlessParams(mu=mu, beta=beta)
    p = GaussianPacket(lam=lam, k0=k0, width=width)
    val = 2 * math.pi * circular_current_packet(p, d)
    assert abs(val) <= 1.0
    assert val * (lam + beta) >= 0.0     # sign follows lambda + beta
