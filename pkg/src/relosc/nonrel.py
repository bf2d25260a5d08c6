"""Non-relativistic singular oscillator and c -> infinity convergence sweeps."""

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    PhysicalParams,
    RegimeError,
    energy,
    log_radial_wavefunction,
    regime,
    to_dimensionless,
)

__all__ = [
    "NonRelParams",
    "singular_index",
    "nonrel_energy",
    "laguerre",
    "nonrel_radial_wavefunction",
    "energy_limit_sweep",
    "wavefunction_limit_sweep",
    "loglog_slope",
]


@dataclass(frozen=True)
class NonRelParams:
    m: float = 1.0
    omega: float = 1.0
    g: float = 0.0
    hbar: float = 1.0

    @classmethod
    def from_physical(cls, p):
        return cls(m=p.m, omega=p.omega, g=p.g, hbar=p.hbar)

    def radicand(self, l):
        return (2 * l + 1) ** 2 + 8.0 * self.m * self.g / self.hbar ** 2


def singular_index(p, l):
    """The index s defined by 2s + 1 = 1/2 + sqrt((2l+1)^2 + 8mg/hbar^2) / 2."""
    rad = p.radicand(l)
    if rad < 0:
        raise ValueError(f"(2l+1)^2 + 8mg/hbar^2 = {rad} < 0: no real s")
    return 0.5 * (-0.5 + 0.5 * math.sqrt(rad))


def nonrel_energy(p, n, l, allow_complex=False):
    """E = hbar omega (2n + 1 + sqrt((2l+1)^2 + 8mg/hbar^2) / 2).

    With ``allow_complex`` a negative radicand yields a complex energy
    instead of raising.
    """
    rad = p.radicand(l)
    if rad < 0:
        if not allow_complex:
            raise ValueError(f"(2l+1)^2 + 8mg/hbar^2 = {rad} < 0: no real spectrum")
        return p.hbar * p.omega * (2 * n + 1 + 0.5j * math.sqrt(-rad))
    return p.hbar * p.omega * (2 * n + 1 + 0.5 * math.sqrt(rad))


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^alpha(x) by upward recurrence."""
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def nonrel_radial_wavefunction(p, n, l, r):
    """Normalized radial function N xi^(2s+1) exp(-xi^2/2) L_n^(2s+1/2)(xi^2), xi = sqrt(m omega/hbar) r.

    N^2 = 2 n! sqrt(m omega/hbar) / Gamma(n + 2s + 3/2), so that int_0^inf R^2 dr = 1.
    """
    s = singular_index(p, l)
    beta = math.sqrt(p.m * p.omega / p.hbar)
    xi = beta * np.asarray(r, dtype=float)
    if np.any(xi < 0):
        raise ValueError("r must be non-negative")
    log_norm = 0.5 * (math.log(2.0) + math.lgamma(n + 1) + math.log(beta)
                      - math.lgamma(n + 2 * s + 1.5))
    out = (np.exp(log_norm - 0.5 * xi ** 2) * xi ** (2 * s + 1)
           * laguerre(n, 2 * s + 0.5, xi ** 2))
    return out if np.ndim(out) else float(out)


def _physical_at_mu(template, mu):
    # Fix m, omega, hbar, g; choose c so that m c^2 / (hbar omega) = mu.
    c = math.sqrt(mu * template.hbar * template.omega / template.m)
    return PhysicalParams(m=template.m, omega=template.omega, c=c, g=template.g,
                          hbar=template.hbar)


def energy_limit_sweep(template, q, mu_values):
    """Gap |E - m c^2 - E_nonrel| for each mu = m c^2 / (hbar omega)."""
    nr = NonRelParams.from_physical(template)
    if nr.radicand(q.l) < 0:
        raise RegimeError(f"g={template.g} lies in the collapse regime for l={q.l}")
    e_nr = nonrel_energy(nr, q.n, q.l)
    out = []
    for mu in mu_values:
        phys = _physical_at_mu(template, mu)
        d = to_dimensionless(phys)
        if regime(d, q.l) == "collapse":
            raise RegimeError(f"mu={mu} lies in the collapse regime for l={q.l}")
        e = energy(d, q, mc2=phys.mc2).energy
        out.append((float(mu), abs(e - phys.mc2 - e_nr)))
    return out


def wavefunction_limit_sweep(template, q, mu_values, xi_grid):
    """Sup-norm distance between relativistic and non-relativistic |R| in the xi variable.

    rho = sqrt(mu) xi, so a function normalized in rho becomes
    mu^(1/4) |R(sqrt(mu) xi)| when normalized in xi. Both sides are compared
    in that measure.
    """
    xi = np.asarray(xi_grid, dtype=float)
    nr = NonRelParams.from_physical(template)
    beta = math.sqrt(template.m * template.omega / template.hbar)
    ref = np.abs(nonrel_radial_wavefunction(nr, q.n, q.l, xi / beta)) / math.sqrt(beta)
    out = []
    for mu in mu_values:
        d = to_dimensionless(_physical_at_mu(template, mu))
        log_r = log_radial_wavefunction(d, q, math.sqrt(mu) * xi)
        rel = np.exp(np.asarray(log_r.log_mag) + 0.25 * math.log(mu))
        out.append((float(mu), float(np.max(np.abs(rel - ref)))))
    return out


def loglog_slope(xs, ys):
    """Least-squares slope of log(y) against log(x)."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])

