"""Relativistic isotropic 3D singular oscillator: exponents, spectrum, wavefunctions.

Units: physical parameters live in :class:`PhysicalParams`; everything
else works in the dimensionless variables

    omega0 = hbar omega / (m c^2),   g0 = m g / hbar^2,   rho = r / lambda,

with lambda = hbar / (m c) the Compton wavelength.

Regimes at fixed (omega0, g0, l), with D = 1 - 8 g0 omega0^2 - 4 omega0^2 l(l+1):

* ``"real"``: D >= 0 and alpha_l real. Everything is real.
* ``"conjugate"``: D < 0. alpha_l and nu_l are complex conjugates, the energy
  stays real and the wavefunctions are normalizable.
* ``"collapse"``: g0 below :func:`collapse_threshold`. alpha_l is complex
  while nu_l is real, so the energy acquires an imaginary part.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import sph_harm_y

from .cdhahn import cdh_sum
from .special import LogComplex, log_gamma, m_factor, neg_rho_degree

__all__ = [
    "RegimeError",
    "PhysicalParams",
    "DimensionlessParams",
    "QuantumNumbers",
    "SpectrumEntry",
    "to_dimensionless",
    "discriminant",
    "alpha_l",
    "nu_l",
    "regime",
    "energy",
    "norm_constant",
    "log_radial_wavefunction",
    "radial_wavefunction",
    "collapse_threshold",
    "collapse_threshold_physical",
    "conjugate_threshold",
    "spherical_harmonic",
    "wavefunction_3d",
]


class RegimeError(ValueError):
    """Raised when an operation needs a real spectrum but the model has collapsed."""


@dataclass(frozen=True)
class PhysicalParams:
    m: float = 1.0
    omega: float = 1.0
    c: float = 1.0
    g: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.m <= 0 or self.omega <= 0 or self.c <= 0 or self.hbar <= 0:
            raise ValueError("m, omega, c and hbar must be positive")

    @property
    def compton(self):
        return self.hbar / (self.m * self.c)

    @property
    def mc2(self):
        return self.m * self.c ** 2

    @property
    def hbar_omega(self):
        return self.hbar * self.omega


@dataclass(frozen=True)
class DimensionlessParams:
    omega0: float
    g0: float = 0.0

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError("omega0 must be positive")

    @property
    def mu(self):
        return 1.0 / self.omega0

    @classmethod
    def from_mu(cls, mu, g0=0.0):
        return cls(1.0 / mu, g0)


@dataclass(frozen=True)
class QuantumNumbers:
    n: int = 0
    l: int = 0

    def __post_init__(self):
        if self.n < 0 or self.l < 0:
            raise ValueError("quantum numbers must be non-negative")


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    l: int
    alpha: complex
    nu: complex
    energy: complex
    is_real_regime: bool
    regime: str

    @property
    def energy_is_real(self):
        return self.regime != "collapse"


def to_dimensionless(p):
    omega0 = p.hbar * p.omega / (p.m * p.c ** 2)
    return DimensionlessParams(omega0=omega0, g0=p.m * p.g / p.hbar ** 2)


def discriminant(d, l):
    w2 = d.omega0 ** 2
    return 1.0 - 8.0 * d.g0 * w2 - 4.0 * w2 * l * (l + 1)


def _outer_radicand(d, l, sign):
    sqrt_d = np.sqrt(complex(discriminant(d, l)))
    return 1.0 + 2.0 / d.omega0 ** 2 * (1.0 + sign * sqrt_d)


def alpha_l(d, l):
    """Exponent governing the behaviour at rho = 0 (principal square roots)."""
    return 0.5 + 0.5 * complex(np.sqrt(_outer_radicand(d, l, -1.0)))


def nu_l(d, l):
    """Exponent governing the behaviour at rho -> infinity."""
    return 0.5 + 0.5 * complex(np.sqrt(_outer_radicand(d, l, +1.0)))


def regime(d, l):
    if discriminant(d, l) < 0:
        return "conjugate"
    if _outer_radicand(d, l, -1.0).real < 0:
        return "collapse"
    return "real"


def _exponents(d, l):
    kind = regime(d, l)
    a, v = alpha_l(d, l), nu_l(d, l)
    if kind == "real":
        a, v = complex(a.real, 0.0), complex(v.real, 0.0)
    elif kind == "conjugate":
        v = a.conjugate()
    return a, v, kind


def energy(d, q, mc2=1.0):
    """Energy level E_nl = hbar omega (2n + alpha_l + nu_l), rest energy included.

    hbar omega is taken as ``mc2 * omega0``.
    """
    a, v, kind = _exponents(d, q.l)
    e = mc2 * d.omega0 * (2 * q.n + a + v)
    return SpectrumEntry(q.n, q.l, a, v, e, kind == "real", kind)


def _require_bound(d, l):
    a, v, kind = _exponents(d, l)
    if kind == "collapse":
        raise RegimeError(
            f"g0={d.g0} is below the collapse threshold {collapse_threshold(d, l)} for l={l}")
    return a, v


def _log_norm(n, a, v):
    lg = (log_gamma(n + a + v).log_mag + log_gamma(n + a + 0.5).log_mag
          + log_gamma(n + v + 0.5).log_mag + math.lgamma(n + 1))
    # |i^alpha| = exp(-pi Im(alpha) / 2) is not 1 once alpha is complex.
    return 0.5 * (math.log(2.0) - lg) + 0.5 * math.pi * complex(a).imag


def norm_constant(d, q):
    """Normalization C_nl (real, positive) as a :class:`LogComplex`.

    C_nl = sqrt(2 / (n! Gamma(n+alpha+nu) Gamma(n+alpha+1/2) Gamma(n+nu+1/2))),
    times exp(pi Im(alpha) / 2) to cancel the modulus of i^alpha in the
    conjugate regime (the extra factor is 1 when alpha is real).
    """
    a, v = _require_bound(d, q.l)
    return LogComplex(_log_norm(q.n, a, v), 0.0)


def _log_radial(n, a, v, omega0, rho):
    rho = np.asarray(rho, dtype=complex)
    poly = LogComplex.from_complex(cdh_sum(n, rho * rho, (a, v, 0.5)))
    out = neg_rho_degree(rho, a) * m_factor(rho, v, omega0) * poly
    return LogComplex(np.asarray(out.log_mag) + _log_norm(n, a, v), out.phase)


def log_radial_wavefunction(d, q, rho):
    """R_nl(rho) = C_nl (-rho)^(alpha_l) M_nu(rho) S_n(rho^2; alpha_l, nu_l, 1/2), in log space.

    ``rho`` may be complex; the finite-difference checks need rho +- i.
    """
    a, v = _require_bound(d, q.l)
    return _log_radial(q.n, a, v, d.omega0, rho)


def radial_wavefunction(d, q, rho):
    return log_radial_wavefunction(d, q, rho).to_complex()


def collapse_threshold(d, l):
    """Dimensionless coupling g0 below which the energy becomes complex.

    Follows from requiring 1 + 2(1 - sqrt(D))/omega0^2 >= 0.
    """
    return -0.125 - d.omega0 ** 2 / 32.0 - 0.5 * l * (l + 1)


def collapse_threshold_physical(p, l):
    return collapse_threshold(to_dimensionless(p), l) * p.hbar ** 2 / p.m


def conjugate_threshold(d, l):
    """g0 above which D < 0 and alpha_l, nu_l become a complex-conjugate pair."""
    w2 = d.omega0 ** 2
    return (1.0 - 4.0 * w2 * l * (l + 1)) / (8.0 * w2)


def spherical_harmonic(l, m, theta, phi):
    """Orthonormal Y_lm with the Condon-Shortley phase; theta polar, phi azimuth."""
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    return sph_harm_y(l, m, theta, phi)


def wavefunction_3d(d, q, m, rho, theta, phi):
    """Full psi = R_l(rho) Y_lm(theta, phi) / rho in dimensionless radius."""
    rho = np.asarray(rho, dtype=float)
    return radial_wavefunction(d, q, rho) / rho * spherical_harmonic(q.l, m, theta, phi)
