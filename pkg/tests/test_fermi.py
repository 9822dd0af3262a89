import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abcyl.currents import chi
from abcyl.fermi import (IntegralSumEstimate, c_coefficient_exact,
                         j_coeff, persistent_all, persistent_compact,
                         persistent_exact, persistent_linearized,
                         persistent_nonrel, persistent_short, sum_lambda_n)
from abcyl.params import DimensionlessParams
from abcyl.spectrum import enumerate_fermi_sea


def test_exact_is_sum_of_mode_currents():
    d = DimensionlessParams(mu=1.0, nu=0.8, beta=0.2, alpha=3.0)
    rep = persistent_exact(d)
    sea = enumerate_fermi_sea(d, "exact")
    manual = sum(chi(n, lam, d) for n, lam in sea.occupied) / (2 * math.pi)
    assert rep.value == pytest.approx(manual, rel=1e-13)
    assert rep.N_e == sea.N_e
    assert rep.method == "exact"


def test_exact_vanishes_without_flux():
    d = DimensionlessParams(mu=1.0, nu=0.5, alpha=4.0)
    assert persistent_exact(d).value == 0.0


def test_exact_odd_in_beta():
    dp = DimensionlessParams(mu=1.0, nu=0.5, beta=0.07, alpha=4.0)
    dm = DimensionlessParams(mu=1.0, nu=0.5, beta=-0.07, alpha=4.0)
    assert persistent_exact(dp).value == pytest.approx(
        -persistent_exact(dm).value, rel=1e-13)


def test_empty_sea_report():
    d = DimensionlessParams(mu=1.0, nu=3.0, beta=0.1, alpha=1.0)
    rep = persistent_exact(d)
    assert rep.value == 0.0 and rep.N_e == 0
    assert "empty-sea" in rep.flags


def test_j_coeff():
    d = DimensionlessParams(mu=1.0, nu=1.0)
    s = 2.0
    assert j_coeff(1, 0.5, d) == pytest.approx(s / (s + 0.25) ** 1.5)
    with pytest.raises(ValueError):
        j_coeff(0, 0.5, d)


def test_linearized_matches_exact_at_small_beta():
    beta = 1e-5
    d = DimensionlessParams(mu=5.0, nu=0.5, beta=beta, alpha=4.0)
    ex = persistent_exact(d).value
    lin = persistent_linearized(d).value
    assert lin == pytest.approx(ex, rel=1e-5)
    # and the c coefficient is beta-independent
    d2 = DimensionlessParams(mu=5.0, nu=0.5, beta=2 * beta, alpha=4.0)
    assert persistent_linearized(d2).c == pytest.approx(
        persistent_linearized(d).c, rel=1e-15)


def test_compact_close_to_linearized():
    d = DimensionlessParams(mu=250.0, nu=1.0, beta=1e-4, alpha=50.0)
    lin = persistent_linearized(d).value
    com = persistent_compact(d).value
    assert com == pytest.approx(lin, rel=0.02)


def test_c_coefficient_positive_lambda_only():
    d = DimensionlessParams(mu=1.0, nu=1.0, alpha=3.0)
    sea = enumerate_fermi_sea(d, "quadratic")
    manual = sum(j_coeff(n, lam, d) for n, lam in sea.occupied if lam > 0)
    assert c_coefficient_exact(d) == pytest.approx(manual, rel=1e-14)


def test_sum_lambda_n_exact_vs_integral():
    d = DimensionlessParams(mu=250.0, nu=1.0, alpha=150.0)
    exact = sum_lambda_n(d, "exact")
    est = sum_lambda_n(d, "integral")
    assert isinstance(est, IntegralSumEstimate)
    assert est.n_F_continuous > 100.0
    assert est.quadrature == pytest.approx(exact, rel=0.01)
    # the printed closed form is reported but may disagree; it must at
    # least be finite and positive here
    assert est.closed_form > 0.0
    with pytest.raises(ValueError):
        sum_lambda_n(d, "bogus")


def test_short_cylinder_formula():
    d = DimensionlessParams(mu=300.0, nu=10.0, beta=1e-4, alpha=15.0)
    rep = persistent_short(d)
    expected = (1e-4 / math.pi) * math.sqrt((15.0**2 - 10.0**2)
                                            / (15.0**2 + 300.0**2))
    assert rep.value == pytest.approx(expected, rel=1e-12)
    assert "short" in rep.flags
    assert rep.n_F == 1


def test_short_ring_substitution():
    d = DimensionlessParams(mu=1.0, nu=5.0, beta=0.1, alpha=3.0)
    rep = persistent_short(d)
    assert any("ring substitution" in note for note in rep.notes)
    assert rep.lambda_F == 2.5
    expected = (0.1 / math.pi) * 2.5 / math.sqrt(2.5**2 + 1.0)
    assert rep.value == pytest.approx(expected, rel=1e-12)


def test_nonrel_report():
    d = DimensionlessParams(mu=1000.0, nu=1.0, beta=1e-4, alpha=20.0)
    rep = persistent_nonrel(d)
    assert rep.value == pytest.approx((1e-4 / math.pi) * rep.N_e / 2000.0,
                                      rel=1e-14)
    assert any("lambda_F variant" in note for note in rep.notes)
    assert rep.value == pytest.approx(persistent_exact(d).value, rel=1e-3)


def test_persistent_all_keys():
    d = DimensionlessParams(mu=10.0, nu=1.0, beta=1e-3, alpha=5.0)
    reps = persistent_all(d)
    assert set(reps) == {"exact", "linearized", "compact", "short", "nonrel"}
    for name, rep in reps.items():
        assert rep.method == name
        assert math.isfinite(rep.value)


@given(beta=st.floats(1e-6, 0.05), alpha=st.floats(1.0, 6.0),
       mu=st.floats(0.5, 20.0), nu=st.floats(0.2, 1.5))
@settings(max_examples=40, deadline=None)
def test_exact_odd_in_beta_property(beta, alpha, mu, nu):
    vp = persistent_exact(
        DimensionlessParams(mu=mu, nu=nu, beta=beta, alpha=alpha)).value
    vm = persistent_exact(
        DimensionlessParams(mu=mu, nu=nu, beta=-beta, alpha=alpha)).value
    assert vp == pytest.approx(-vm, rel=1e-12, abs=1e-300)


@given(alpha=st.floats(1.0, 8.0), mu=st.floats(0.5, 10.0),
       nu=st.floats(0.2, 1.5), beta=st.floats(1e-6, 1e-3))
@settings(max_examples=40, deadline=None)
def test_linearized_sign_matches_beta(alpha, mu, nu, beta):
    d = DimensionlessParams(mu=mu, nu=nu, beta=beta, alpha=alpha)
    rep = persistent_linearized(d)
    if rep.N_e > 0:
        assert rep.value > 0.0
        assert rep.c > 0.0
