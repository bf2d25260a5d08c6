"""Continuous dual Hahn polynomials S_n(x^2; a, b, c).

Two independent evaluation routes are provided: the terminating 3F2 sum
and the three-term recurrence in n. Both use the conventional (non-monic)
normalization

    S_n(x^2) = (a+b)_n (a+c)_n 3F2(-n, a+ix, a-ix; a+b, a+c; 1),

whose leading coefficient in x^2 is (-1)^n.
"""

import math
from typing import NamedTuple

import numpy as np

from .special import log_gamma, pochhammer

__all__ = ["CdhParams", "cdh_sum", "cdh_recurrence", "cdh_weight", "cdh_norm"]


class CdhParams(NamedTuple):
    a: complex
    b: complex
    c: complex


def _as_params(p):
    return p if isinstance(p, CdhParams) else CdhParams(*p)


def cdh_sum(n, x_sq, p):
    """Evaluate S_n(x_sq; a, b, c) from its hypergeometric sum.

    Written without divisions, term k is

        (-n)_k / k! * prod_{j<k} ((a+j)^2 + x^2) * (a+b+k)_{n-k} (a+c+k)_{n-k},

    so complex parameters and complex ``x_sq`` are both fine.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    a, b, c = _as_params(p)
    x_sq = np.asarray(x_sq)
    out_dtype = np.result_type(x_sq, np.asarray(a), np.asarray(b), np.asarray(c), float)
    # Alternating terms cancel near the roots; accumulate in extended precision.
    wide = np.clongdouble if np.issubdtype(out_dtype, np.complexfloating) else np.longdouble
    a, b, c = wide(a), wide(b), wide(c)
    x_sq = x_sq.astype(wide)
    total = np.zeros(x_sq.shape, dtype=wide)
    upper = np.ones(x_sq.shape, dtype=wide)  # prod_{j<k} ((a+j)^2 + x^2)
    for k in range(n + 1):
        coeff = (wide(pochhammer(-n, k)) / math.factorial(k)
                 * pochhammer(a + b + k, n - k) * pochhammer(a + c + k, n - k))
        total = total + coeff * upper
        upper = upper * ((a + k) ** 2 + x_sq)
    total = total.astype(out_dtype)
    return total if total.ndim else total.item()


def cdh_recurrence(n, x_sq, p):
    """Evaluate S_n(x_sq; a, b, c) by forward three-term recurrence.

    S_{k+1} = (A_k + C_k - a^2 - x^2) S_k - C_k A_{k-1} S_{k-1}
    with A_k = (k+a+b)(k+a+c), C_k = k(k+b+c-1). Real parameters only.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    a, b, c = _as_params(p)
    if any(np.iscomplexobj(v) and np.imag(v) != 0 for v in (a, b, c)):
        raise ValueError("cdh_recurrence requires real parameters")
    a, b, c = float(np.real(a)), float(np.real(b)), float(np.real(c))
    x_sq = np.asarray(x_sq)
    prev = np.zeros(x_sq.shape, dtype=np.result_type(x_sq, float))
    cur = np.ones_like(prev)
    for k in range(n):
        a_k = (k + a + b) * (k + a + c)
        c_k = k * (k + b + c - 1)
        a_prev = (k - 1 + a + b) * (k - 1 + a + c)
        prev, cur = cur, (a_k + c_k - a * a - x_sq) * cur - c_k * a_prev * prev
    return cur if cur.ndim else cur.item()


def cdh_weight(x, p):
    """Orthogonality weight |Gamma(a+ix) Gamma(b+ix) Gamma(c+ix) / Gamma(2ix)|^2.

    With this weight, ``(1/2pi) int_0^inf w S_n S_m dx = cdh_norm(n, p) delta_nm``
    for positive a, b, c.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("weight is defined for x > 0 only")
    a, b, c = _as_params(p)
    log_w = 2.0 * (log_gamma(a + 1j * x).log_mag + log_gamma(b + 1j * x).log_mag
                   + log_gamma(c + 1j * x).log_mag - log_gamma(2j * x).log_mag)
    out = np.exp(log_w)
    return out if np.ndim(out) else float(out)


def cdh_norm(n, p):
    """Squared norm n! Gamma(n+a+b) Gamma(n+a+c) Gamma(n+b+c) under (1/2pi) w(x) dx."""
    a, b, c = _as_params(p)
    lg = (log_gamma(n + a + b).log_mag + log_gamma(n + a + c).log_mag
          + log_gamma(n + b + c).log_mag + math.lgamma(n + 1))
    return math.exp(lg)
