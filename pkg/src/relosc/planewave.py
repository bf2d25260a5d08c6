"""Relativistic plane wave xi(p, r) = ((p0 - p.n)/mc)^(-1 - i r/lambda) and its c -> infinity limit."""

from dataclasses import dataclass

import numpy as np

from .model import PhysicalParams

__all__ = ["MomentumPoint", "xi_eval", "euclidean_limit_check"]


@dataclass(frozen=True)
class MomentumPoint:
    p: np.ndarray
    p0: float

    @classmethod
    def on_shell(cls, p, m, c):
        p = np.asarray(p, dtype=float)
        return cls(p, float(np.sqrt(p @ p + (m * c) ** 2)))


def _log_base(mp, n_vec, params):
    # log((p0 - p.n)/mc) without cancellation: p0 - mc = p^2 / (p0 + mc).
    mc = params.m * params.c
    kinetic = (mp.p @ mp.p) / (mp.p0 + mc)
    return np.log1p((kinetic - mp.p @ n_vec) / mc)


def xi_eval(mp, r_vec, params, direction=None):
    """Evaluate the relativistic plane wave at position ``r_vec``.

    At the origin the unit vector n is undefined; pass ``direction`` there.
    """
    r_vec = np.asarray(r_vec, dtype=float)
    r = float(np.linalg.norm(r_vec))
    if r == 0.0:
        if direction is None:
            raise ValueError("direction must be given at r = 0")
        n_vec = np.asarray(direction, dtype=float)
        n_vec = n_vec / np.linalg.norm(n_vec)
    else:
        n_vec = r_vec / r
    exponent = -1.0 - 1j * r / params.compton
    return complex(np.exp(exponent * _log_base(mp, n_vec, params)))


def euclidean_limit_check(p_vec, r_vec, c_values, m=1.0, hbar=1.0):
    """Deviation |xi - exp(i p.r / hbar)| for each speed of light in ``c_values``."""
    p_vec = np.asarray(p_vec, dtype=float)
    r_vec = np.asarray(r_vec, dtype=float)
    target = np.exp(1j * (p_vec @ r_vec) / hbar)
    out = []
    for c in c_values:
        params = PhysicalParams(m=m, c=c, hbar=hbar)
        mp = MomentumPoint.on_shell(p_vec, m, c)
        out.append((float(c), float(abs(xi_eval(mp, r_vec, params) - target))))
    return out
