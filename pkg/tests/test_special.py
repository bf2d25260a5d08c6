import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relosc.special import (
    LogComplex,
    PoleError,
    gamma,
    generalized_degree,
    log_gamma,
    m_factor,
    neg_rho_degree,
    pochhammer,
    wrap_phase,
)

# mpmath, 40 digits
LOGGAMMA_2_3I = complex(-2.092851753092733349564188625030375261693,
                        2.302396543466867626153707617788581578293)
LOG_ABS_GAMMA_10_5I = 11.54185704843638084304069566178659082391


def _phase_close(a, b, tol):
    return abs(wrap_phase(a - b)) < tol


def test_log_gamma_trivial_values():
    assert log_gamma(1.0).log_mag == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5).log_mag == pytest.approx(0.5723649429247001, rel=1e-14)
    assert log_gamma(0.5).phase == 0.0


def test_log_gamma_frozen_oracle():
    lg = log_gamma(2 + 3j)
    assert lg.log_mag == pytest.approx(LOGGAMMA_2_3I.real, rel=1e-13)
    assert _phase_close(lg.phase, LOGGAMMA_2_3I.imag, 1e-13)


@pytest.mark.parametrize("z", [
    0.1 + 0.2j, 3.7, 2 + 3j, -2.5 + 0.3j, -7.3 - 2j, 0.25 - 40j, 1e3 + 5j,
    -150.5 + 10j, 600j, 0.3 + 1e-12j, -0.5j, 35 - 900j,
])
def test_log_gamma_against_mpmath(z):
    with mp.workdps(40):
        ref = mp.loggamma(mp.mpc(z))
    lg = log_gamma(z)
    ref_re = float(ref.real)
    assert abs(lg.log_mag - ref_re) <= 1e-12 * max(1.0, abs(ref_re))
    assert _phase_close(lg.phase, float(ref.imag), 1e-12 * max(1.0, abs(float(ref.imag))))


def test_log_gamma_vectorized_matches_scalar():
    zs = np.array([0.3 + 1j, -1.5 + 0.1j, 12 - 4j])
    vec = log_gamma(zs)
    for i, z in enumerate(zs):
        assert vec.log_mag[i] == log_gamma(z).log_mag


@pytest.mark.parametrize("z", [0.0, -1.0, -7.0])
def test_log_gamma_pole(z):
    with pytest.raises(PoleError):
        log_gamma(z)


@pytest.mark.parametrize("rho", [0.05, 0.7, 3.0, 12.5, 40.0])
def test_reflection_modulus_of_gamma_on_imaginary_axis(rho):
    # |Gamma(i rho)|^2 = pi / (rho sinh(pi rho))
    lhs = 2.0 * log_gamma(1j * rho).log_mag
    rhs = math.log(math.pi) - math.log(rho) - (math.pi * rho + math.log1p(-math.exp(-2 * math.pi * rho)) - math.log(2))
    assert math.exp(lhs - rhs) == pytest.approx(1.0, rel=1e-11)


def test_gamma_recurrence_direct():
    z = 0.4 + 2.2j
    assert gamma(z + 1) == pytest.approx(z * gamma(z), rel=1e-13)


class TestLogComplex:
    @given(st.complex_numbers(min_magnitude=1e-20, max_magnitude=1e20, allow_nan=False,
                              allow_infinity=False))
    def test_round_trip(self, z):
        back = LogComplex.from_complex(z).to_complex()
        assert abs(back - z) <= 1e-14 * abs(z)

    @given(st.complex_numbers(min_magnitude=1e-300, max_magnitude=1e300, allow_nan=False,
                              allow_infinity=False))
    def test_round_trip_extreme_magnitudes(self, z):
        # rounding of log|z| itself limits the relative accuracy to ~eps * |log|z||
        back = LogComplex.from_complex(z).to_complex()
        bound = 4e-16 * max(1.0, abs(math.log(abs(z)))) + 1e-15
        assert abs(back - z) <= bound * abs(z)

    @given(st.complex_numbers(min_magnitude=1e-100, max_magnitude=1e100, allow_nan=False,
                              allow_infinity=False),
           st.complex_numbers(min_magnitude=1e-100, max_magnitude=1e100, allow_nan=False,
                              allow_infinity=False))
    def test_multiplication_adds_fields(self, a, b):
        la, lb = LogComplex.from_complex(a), LogComplex.from_complex(b)
        prod = la * lb
        assert prod.log_mag == pytest.approx(la.log_mag + lb.log_mag, abs=1e-12)
        assert -math.pi < prod.phase <= math.pi
        assert abs(prod.to_complex() - a * b) <= 1e-13 * abs(a * b)

    def test_zero(self):
        zero = LogComplex.from_complex(0.0)
        assert zero.log_mag == -math.inf
        assert zero.to_complex() == 0
        assert (zero * LogComplex.from_complex(3.0)).to_complex() == 0

    def test_phase_principal_interval(self):
        assert LogComplex(0.0, -math.pi).phase == math.pi
        assert LogComplex(0.0, 3 * math.pi).phase == pytest.approx(math.pi)


class TestGeneralizedDegree:
    def test_degree_two_example(self):
        rho = 1.0
        assert generalized_degree(rho, 2.0).to_complex() == pytest.approx(1 + 1j, rel=1e-14)

    def test_degree_one_is_rho(self):
        assert generalized_degree(3.0, 1.0).to_complex() == pytest.approx(3.0, rel=1e-14)

    def test_zero_at_origin(self):
        assert generalized_degree(0.0, 1.5).to_complex() == 0
        assert neg_rho_degree(0.0, 1.0).to_complex() == 0

    def test_pochhammer_expansion(self):
        # i^2 Gamma(2 - i rho)/Gamma(-i rho) = -(1 - i rho)(-i rho)
        for rho in (0.3, 2.0, 17.0):
            expected = -(1 - 1j * rho) * (-1j * rho)
            assert generalized_degree(rho, 2.0).to_complex() == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("rho", np.linspace(0.01, 100.0, 37))
    def test_identity_degree_two(self, rho):
        val = generalized_degree(rho, 2.0).to_complex()
        assert abs(val - rho * (rho + 1j)) <= 1e-12 * abs(rho * (rho + 1j))

    @pytest.mark.parametrize("delta", [0.5, 1.0, 1.7, 2.0])
    def test_recurrence_in_delta(self, delta):
        rho = np.linspace(0.1, 50.0, 60)
        ratio = (generalized_degree(rho, delta + 1) / generalized_degree(rho, delta)).to_complex()
        expected = 1j * (delta - 1j * rho)
        assert np.max(np.abs(ratio / expected - 1)) < 1e-11

    @pytest.mark.parametrize("delta", [0.5, 1.3, 2.0, 3.75])
    def test_conjugation_symmetry(self, delta):
        rho = np.linspace(0.2, 20.0, 25)
        plus = generalized_degree(rho, delta).to_complex()
        minus = generalized_degree(-rho, delta).to_complex()
        expected = np.exp(1j * math.pi * delta) * np.conj(plus)
        assert np.max(np.abs(minus - expected) / np.abs(plus)) < 1e-12

    def test_neg_rho_degree_examples(self):
        assert neg_rho_degree(1.0, 1.0).to_complex() == pytest.approx(-1.0, rel=1e-14)
        for rho in (0.5, 4.0):
            expected = -(1 + 1j * rho) * (1j * rho)
            assert neg_rho_degree(rho, 2.0).to_complex() == pytest.approx(expected, rel=1e-13)

    def test_complex_argument_shift(self):
        # e^{i d/drho} rho^(1) = rho + i
        rho = 2.5 + 1j
        assert generalized_degree(rho, 1.0).to_complex() == pytest.approx(rho, rel=1e-13)


class TestMFactor:
    def test_real_positive_at_origin(self):
        val = m_factor(0.0, 3.2, 0.7).to_complex()
        assert val.imag == pytest.approx(0.0, abs=1e-15)
        assert val.real == pytest.approx(math.gamma(3.2), rel=1e-13)

    @pytest.mark.parametrize("omega0", [0.01, 0.5, 1.0, 7.0])
    def test_unit_modulus_prefactor(self, omega0):
        rho = np.linspace(0.0, 30.0, 11)
        assert np.allclose(m_factor(rho, 4.5, omega0).log_mag, log_gamma(4.5 + 1j * rho).log_mag,
                           rtol=0, atol=1e-13)

    def test_frozen_oracle(self):
        assert m_factor(5.0, 10.0, 0.3).log_mag == pytest.approx(LOG_ABS_GAMMA_10_5I, rel=1e-13)

    def test_large_nu_does_not_overflow(self):
        val = m_factor(200.0, 1e6, 1e-6)
        assert np.isfinite(val.log_mag) and val.log_mag > 700


def test_pochhammer():
    assert pochhammer(3.3, 0) == 1
    assert pochhammer(1, 6) == math.factorial(6)
    assert pochhammer(0.5, 3) == pytest.approx(1.875)
    assert pochhammer(1 + 1j, 2) == pytest.approx((1 + 1j) * (2 + 1j))
