"""Complex gamma machinery, generalized degrees and the gamma factor M_nu.

Everything is vectorized over numpy arrays and returns :class:`LogComplex`
so that products of gamma functions with arguments of order 1e4 can be
formed without overflow.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PoleError",
    "BranchError",
    "LogComplex",
    "log_gamma",
    "gamma",
    "generalized_degree",
    "neg_rho_degree",
    "m_factor",
    "pochhammer",
    "wrap_phase",
]

LOG_2PI_HALF = 0.5 * np.log(2.0 * np.pi)

# Godfrey's coefficients, g = 607/128, 15 terms.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_P = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])


class PoleError(ValueError):
    """Raised when a gamma function is evaluated at one of its poles."""


class BranchError(ValueError):
    """Raised when a complex power cannot be represented in log space."""


def wrap_phase(phase):
    """Map angles onto the principal interval (-pi, pi]."""
    phase = np.asarray(phase, dtype=float)
    out = np.pi - np.mod(np.pi - phase, 2.0 * np.pi)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class LogComplex:
    """A complex number (or array) stored as ``exp(log_mag + 1j * phase)``.

    ``log_mag = -inf`` encodes an exact zero. Fields may be floats or numpy
    arrays of a common shape.
    """

    log_mag: object
    phase: object

    def __post_init__(self):
        object.__setattr__(self, "phase", wrap_phase(self.phase))

    @classmethod
    def from_complex(cls, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore"):
            log_mag = np.log(np.abs(z))
        phase = np.where(z == 0, 0.0, np.angle(z))
        if z.ndim == 0:
            return cls(float(log_mag), float(phase))
        return cls(log_mag, phase)

    @classmethod
    def from_log(cls, log_z):
        """Build from a complex logarithm ``log z`` (any branch)."""
        log_z = np.asarray(log_z, dtype=complex)
        if log_z.ndim == 0:
            return cls(float(log_z.real), float(log_z.imag))
        return cls(log_z.real, log_z.imag)

    def to_complex(self):
        with np.errstate(over="ignore", invalid="ignore"):
            mag = np.exp(self.log_mag)
            out = mag * np.cos(self.phase) + 1j * mag * np.sin(self.phase)
        out = np.where(np.isneginf(self.log_mag), 0j, out)
        return complex(out) if np.ndim(out) == 0 else out

    def scaled_complex(self, ref_log_mag):
        """Return ``self * exp(-ref_log_mag)`` as an ordinary complex value."""
        shifted = LogComplex(np.asarray(self.log_mag) - ref_log_mag, self.phase)
        return shifted.to_complex()

    def __mul__(self, other):
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        return LogComplex(np.add(self.log_mag, other.log_mag),
                          np.add(self.phase, other.phase))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        return LogComplex(np.subtract(self.log_mag, other.log_mag),
                          np.subtract(self.phase, other.phase))

    def __pow__(self, k):
        # Real exponents only; the phase is scaled on the principal branch.
        return LogComplex(np.multiply(self.log_mag, k), np.multiply(self.phase, k))

    def conj(self):
        return LogComplex(self.log_mag, np.negative(self.phase))

    def __abs__(self):
        return np.exp(self.log_mag)

    def __getitem__(self, idx):
        return LogComplex(np.asarray(self.log_mag)[idx], np.asarray(self.phase)[idx])


def _nonpositive_integer(z):
    near = np.round(z.real)
    return (z.imag == 0) & (near <= 0) & (np.abs(z.real - near) < 1e-300)


def _lanczos_log_gamma(z):
    # Valid for Re(z) >= 0.5.
    z = z - 1.0
    series = np.full(z.shape, _LANCZOS_P[0], dtype=complex)
    for k in range(1, len(_LANCZOS_P)):
        series = series + _LANCZOS_P[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return LOG_2PI_HALF + (z + 0.5) * np.log(t) - t + np.log(series)


def _log_sin_pi(z):
    """log(sin(pi z)) modulo 2*pi*i, stable for large |Im z|."""
    upper = z.imag >= 0
    w = np.where(upper, z, np.conj(z))
    # sin(pi w) = exp(-i pi w) * (exp(2 i pi w) - 1) / (2i), |exp(2 i pi w)| <= 1
    val = -1j * np.pi * w + np.log(np.expm1(2j * np.pi * w)) - np.log(2j)
    return np.where(upper, val, np.conj(val))


def _log_gamma_array(z):
    z = np.asarray(z, dtype=complex)
    if np.any(_nonpositive_integer(z)):
        raise PoleError("gamma function pole at a non-positive integer")
    reflect = z.real < 0.5
    out = np.empty(z.shape, dtype=complex)
    if np.any(~reflect):
        out[~reflect] = _lanczos_log_gamma(z[~reflect])
    if np.any(reflect):
        zr = z[reflect]
        out[reflect] = np.log(np.pi) - _log_sin_pi(zr) - _lanczos_log_gamma(1.0 - zr)
    return out


def log_gamma(z):
    """Logarithm of the gamma function for complex arguments.

    Lanczos approximation for ``Re z >= 1/2`` and the reflection formula
    below that. Returns a :class:`LogComplex` with the phase wrapped onto
    (-pi, pi].
    """
    return LogComplex.from_log(_log_gamma_array(z))


def gamma(z):
    """Gamma function as an ordinary complex number (may overflow)."""
    return log_gamma(z).to_complex()


def _i_power(delta):
    # i**delta = exp(i pi delta / 2) on the principal branch.
    delta = np.asarray(delta, dtype=complex)
    log_mag = -0.5 * np.pi * delta.imag
    if not np.all(np.isfinite(log_mag)):
        raise BranchError("i**delta is not representable for this delta")
    return LogComplex(log_mag if log_mag.ndim else float(log_mag),
                      0.5 * np.pi * delta.real)


def _gamma_ratio(num_arg, den_arg):
    """Gamma(num_arg) / Gamma(den_arg), with 1/Gamma at a pole taken as 0."""
    num_arg, den_arg = np.broadcast_arrays(np.asarray(num_arg, dtype=complex),
                                           np.asarray(den_arg, dtype=complex))
    den_pole = _nonpositive_integer(den_arg)
    if np.any(den_pole & _nonpositive_integer(num_arg)):
        raise PoleError("numerator and denominator both at gamma poles")
    log_mag = np.full(num_arg.shape, -np.inf)
    phase = np.zeros(num_arg.shape)
    ok = ~den_pole
    if np.any(ok):
        val = _log_gamma_array(num_arg[ok]) - _log_gamma_array(den_arg[ok])
        log_mag[ok] = val.real
        phase[ok] = val.imag
    if log_mag.ndim == 0:
        return LogComplex(float(log_mag), float(phase))
    return LogComplex(log_mag, phase)


def generalized_degree(rho, delta):
    """Generalized degree ``rho^(delta) = i^delta Gamma(delta - i rho) / Gamma(-i rho)``.

    At ``rho = 0`` the reciprocal gamma vanishes and the result is an exact
    zero. ``rho^(2)`` reduces to ``rho (rho + i)``.
    """
    rho = np.asarray(rho, dtype=complex)
    return _i_power(delta) * _gamma_ratio(delta - 1j * rho, -1j * rho)


def neg_rho_degree(rho, alpha):
    """``(-rho)^(alpha) = i^alpha Gamma(alpha + i rho) / Gamma(i rho)``."""
    rho = np.asarray(rho, dtype=complex)
    return _i_power(alpha) * _gamma_ratio(alpha + 1j * rho, 1j * rho)


def m_factor(rho, nu, omega0):
    """``M_nu(rho) = omega0^(i rho) Gamma(nu + i rho)`` in log space."""
    if omega0 <= 0:
        raise ValueError("omega0 must be positive")
    rho = np.asarray(rho, dtype=complex)
    log_w = np.log(omega0)
    # omega0^(i rho) = exp(i rho log omega0)
    prefactor = LogComplex(-rho.imag * log_w, rho.real * log_w)
    return prefactor * log_gamma(nu + 1j * rho)


def pochhammer(a, n):
    """Rising factorial ``(a)_n = a (a + 1) ... (a + n - 1)``; ``(a)_0 = 1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = np.ones_like(np.asarray(a) * 1.0)
    for k in range(n):
        out = out * (a + k)
    return out if np.ndim(out) else out.item()
