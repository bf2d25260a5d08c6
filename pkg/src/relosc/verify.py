"""Numerical checks of the closed-form solution.

Shift operators act exactly: ``exp(+-i d/drho) f(rho) = f(rho +- i)`` and
``cosh(i d/drho) f = (f(rho+i) + f(rho-i)) / 2``, evaluated by analytic
continuation of the closed forms. No lattice discretization is involved.
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .cdhahn import cdh_sum
from .model import _log_radial, _require_bound, energy
from .special import generalized_degree

__all__ = [
    "CutoffError",
    "ResidualReport",
    "QuadratureSpec",
    "OrthonormalityReport",
    "radial_equation_residual",
    "omega_equation_residual",
    "orthonormality_matrix",
    "generalized_degree_identity_check",
]

_PANEL_ORDER = 16
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_PANEL_ORDER)


class CutoffError(RuntimeError):
    """Quadrature cutoff leaves a non-negligible integrand tail."""


@dataclass
class ResidualReport:
    grid: np.ndarray
    residuals: np.ndarray
    relative: np.ndarray
    max_abs_residual: float
    max_relative_residual: float
    skipped: list = field(default_factory=list)

    @classmethod
    def build(cls, grid, residuals, scale, skipped=()):
        grid = np.asarray(grid, dtype=float)
        residuals = np.asarray(residuals, dtype=complex)
        relative = np.abs(residuals) / scale
        return cls(grid, residuals, relative,
                   float(np.max(np.abs(residuals), initial=0.0)),
                   float(np.max(relative, initial=0.0)),
                   list(skipped))

    def rows(self):
        for rho, res, rel in zip(self.grid, self.residuals, self.relative):
            yield float(rho), float(res.real), float(res.imag), float(rel)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["rho", "re_residual", "im_residual", "rel_residual"])
        for row in self.rows():
            writer.writerow(["%.17e" % v for v in row])
        return buf.getvalue()

    def summary(self):
        return {"max_abs_residual": self.max_abs_residual,
                "max_rel_residual": self.max_relative_residual,
                "points": int(len(self.grid)),
                "skipped": [float(x) for x in self.skipped]}


@dataclass(frozen=True)
class QuadratureSpec:
    rho_max: float = None
    node_count: int = 256
    scheme: str = "adaptive"

    def __post_init__(self):
        if self.rho_max is not None and self.rho_max <= 0:
            raise ValueError("rho_max must be positive")
        if self.node_count < 16:
            raise ValueError("node_count must be at least 16")
        if self.scheme not in ("adaptive", "fixed-composite"):
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")


def _resolve(d, q, alpha, nu, energy_ratio):
    """Exponents and E/(hbar omega), with optional overrides for probing."""
    if alpha is None or nu is None:
        a0, v0 = _require_bound(d, q.l)
        alpha = a0 if alpha is None else alpha
        nu = v0 if nu is None else nu
    if energy_ratio is None:
        entry = energy(d, q)
        energy_ratio = entry.energy / d.omega0
    return complex(alpha), complex(nu), complex(energy_ratio)


def _near_poly_zero(n, x_params, grid, width=1e-6):
    if n == 0:
        return np.zeros(len(grid), dtype=bool)
    lo = np.real(cdh_sum(n, (grid - width) ** 2, x_params))
    hi = np.real(cdh_sum(n, (grid + width) ** 2, x_params))
    return np.sign(lo) != np.sign(hi)


def _common_scale(*values):
    log_mags = np.vstack([np.asarray(v.log_mag, dtype=float) for v in values])
    return np.max(log_mags, axis=0)


def radial_equation_residual(d, q, grid, *, alpha=None, nu=None, energy_ratio=None):
    """Residual of the dimensionless radial finite-difference equation.

    LHS = (R(rho+i) + R(rho-i))/2 + [omega0^2 rho^(2)/2 + (2 g0 + l(l+1))/(2 rho^(2))] R(rho+i),
    RHS = E/(m c^2) R(rho).

    ``alpha``, ``nu`` and ``energy_ratio`` (E / hbar omega) override the exact
    values; used to check that the test has power.
    """
    a, v, e_ratio = _resolve(d, q, alpha, nu, energy_ratio)
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0):
        raise ValueError("grid points must be positive")
    skip = _near_poly_zero(q.n, (a, v, 0.5), grid)
    rho = grid[~skip]

    r0 = _log_radial(q.n, a, v, d.omega0, rho)
    r_up = _log_radial(q.n, a, v, d.omega0, rho + 1j)
    r_dn = _log_radial(q.n, a, v, d.omega0, rho - 1j)
    ref = _common_scale(r0, r_up, r_dn)
    f0, f_up, f_dn = (r.scaled_complex(ref) for r in (r0, r_up, r_dn))

    deg2 = generalized_degree(rho, 2.0).to_complex()
    coupling = 2.0 * d.g0 + q.l * (q.l + 1)
    terms = np.vstack([
        0.5 * f_up,
        0.5 * f_dn,
        0.5 * d.omega0 ** 2 * deg2 * f_up,
        coupling / (2.0 * deg2) * f_up,
    ])
    lhs = terms.sum(axis=0)
    rhs = e_ratio * d.omega0 * f0
    scale = np.max(np.abs(terms), axis=0)
    residual = (lhs - rhs) * np.exp(ref)
    return ResidualReport.build(rho, residual, scale * np.exp(ref), grid[skip])


def omega_equation_residual(d, q, grid, *, alpha=None, nu=None, energy_ratio=None):
    """Residual of the difference equation for the polynomial factor.

    (alpha + i rho)(nu + i rho) W(rho - i) - (alpha - i rho)(nu - i rho) W(rho + i)
        - 2 i rho (E / hbar omega) W(rho),   W(rho) = S_n(rho^2; alpha, nu, 1/2).
    """
    a, v, e_ratio = _resolve(d, q, alpha, nu, energy_ratio)
    rho = np.asarray(grid, dtype=float)
    params = (a, v, 0.5)
    w0 = cdh_sum(q.n, rho.astype(complex) ** 2, params)
    w_dn = cdh_sum(q.n, (rho - 1j) ** 2, params)
    w_up = cdh_sum(q.n, (rho + 1j) ** 2, params)
    terms = np.vstack([
        (a + 1j * rho) * (v + 1j * rho) * w_dn,
        -(a - 1j * rho) * (v - 1j * rho) * w_up,
        -2j * rho * e_ratio * w0,
    ])
    scale = np.max(np.abs(terms), axis=0)
    return ResidualReport.build(rho, terms.sum(axis=0), scale)


def generalized_degree_identity_check(grid):
    """Residual rho^(2) - rho(rho + i) on a grid of positive rho."""
    rho = np.asarray(grid, dtype=float)
    expected = rho * (rho + 1j)
    residual = generalized_degree(rho, 2.0).to_complex() - expected
    scale = np.where(expected == 0, 1.0, np.abs(expected))
    return ResidualReport.build(rho, residual, scale)


@dataclass
class OrthonormalityReport:
    matrix: np.ndarray
    deviation: float
    rho_max: float
    node_count: int
    history: list

    def summary(self):
        return {"gram_deviation": self.deviation, "rho_max": self.rho_max,
                "node_count": self.node_count,
                "history": [[int(k), float(dev)] for k, dev in self.history]}


def _log_states(d, l, n_max, rho):
    a, v = _require_bound(d, l)
    return [_log_radial(n, a, v, d.omega0, rho) for n in range(n_max + 1)]


def _choose_cutoff(d, l, n_max, tail=1e-12):
    rho_max = 8.0
    while True:
        rho = np.linspace(0.0, rho_max, 801)[1:]
        log_dens = np.max([2.0 * np.asarray(s.log_mag) for s in _log_states(d, l, n_max, rho)],
                          axis=0)
        if log_dens[-1] - np.max(log_dens) < np.log(tail) and np.argmax(log_dens) < 0.8 * len(rho):
            return rho_max
        rho_max *= 1.5


def _composite_nodes(rho_max, panels):
    edges = np.linspace(0.0, rho_max, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    weights = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


def _gram(d, l, n_max, rho_max, panels):
    nodes, weights = _composite_nodes(rho_max, panels)
    states = np.array([s.to_complex() for s in _log_states(d, l, n_max, nodes)])
    return (states * weights) @ states.conj().T


def _tail_ratio(d, l, n_max, rho_max):
    probe = np.linspace(0.0, rho_max, 801)[1:]
    dens = np.max([np.abs(s.to_complex()) ** 2 for s in _log_states(d, l, n_max, probe)], axis=0)
    return dens[-1] / np.max(dens)


def orthonormality_matrix(d, l, n_max, spec=QuadratureSpec(), *, tol=1e-10, max_panels=4096):
    """Gram matrix G[n, m] = int_0^inf R_nl conj(R_ml) drho by composite Gauss-Legendre.

    The adaptive scheme picks the cutoff so that the densest state's tail is
    below 1e-12 of its peak, then doubles the panel count until successive
    matrices agree to ``tol``. ``history`` records (node_count, |G - I|_max).
    """
    identity = np.eye(n_max + 1)
    panels = max(1, spec.node_count // _PANEL_ORDER)
    if spec.scheme == "fixed-composite":
        if spec.rho_max is None:
            raise ValueError("fixed-composite quadrature needs rho_max")
        if _tail_ratio(d, l, n_max, spec.rho_max) > 1e-10:
            raise CutoffError(f"integrand tail at rho_max={spec.rho_max} is too large")
        g = _gram(d, l, n_max, spec.rho_max, panels)
        dev = float(np.max(np.abs(g - identity)))
        return OrthonormalityReport(g.real, dev, spec.rho_max, panels * _PANEL_ORDER,
                                    [(panels * _PANEL_ORDER, dev)])

    rho_max = spec.rho_max if spec.rho_max is not None else _choose_cutoff(d, l, n_max)
    if _tail_ratio(d, l, n_max, rho_max) > 1e-10:
        raise CutoffError(f"integrand tail at rho_max={rho_max} is too large")
    g = _gram(d, l, n_max, rho_max, panels)
    history = [(panels * _PANEL_ORDER, float(np.max(np.abs(g - identity))))]
    while panels < max_panels:
        panels *= 2
        g_next = _gram(d, l, n_max, rho_max, panels)
        history.append((panels * _PANEL_ORDER, float(np.max(np.abs(g_next - identity)))))
        converged = np.max(np.abs(g_next - g)) < tol
        g = g_next
        if converged:
            break
    return OrthonormalityReport(g.real, history[-1][1], rho_max, panels * _PANEL_ORDER, history)

