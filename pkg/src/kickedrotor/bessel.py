"""Bessel functions of the first kind, evaluated in-house.

Two classical algorithms cover the working range:

* ascending power series for |x| <= 9 (term growth is mild there, so the
  straightforward sum keeps ~1e-14 absolute accuracy), and
* Miller's downward recurrence with the normalization
  J0(x) + 2*sum_k J_{2k}(x) = 1 for larger arguments, which is
  backward-stable and also yields the whole row J_0..J_m in one pass.

The public entry point enforces the supported domain (order 0..8,
|x| <= 50); the row evaluator is used internally for kick coefficients,
which need higher orders.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_SERIES_CUTOFF = 9.0
MAX_ORDER = 8
MAX_ARG = 50.0


def _series_j(order: int, x: float) -> float:
    """Ascending power series, summed to convergence (|x| small)."""
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    half = 0.5 * x
    term = half ** order / math.factorial(order)
    acc = term
    quarter_sq = half * half
    for k in range(1, 200):
        term *= -quarter_sq / (k * (k + order))
        acc += term
        if abs(term) <= 1e-18 * abs(acc) + 5e-324:
            break
    return acc


def bessel_row(x: float, m_max: int) -> np.ndarray:
    """J_0(x)..J_{m_max}(x) for x >= 0 by Miller's downward recurrence."""
    if x < 0:
        raise ValueError("bessel_row expects x >= 0")
    out = np.zeros(m_max + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    # start far enough above both the requested order and the turning point
    start = int(max(m_max, x) + 16 + 11.0 * x ** (1.0 / 3.0))
    start += start % 2  # even start keeps the normalization sum aligned
    jp = 0.0            # j_{m+1}
    jc = 1e-30          # j_m (arbitrary seed; normalization fixes the scale)
    norm = 0.0
    for m in range(start, 0, -1):
        jm = (2.0 * m / x) * jc - jp
        jp, jc = jc, jm
        if m - 1 <= m_max:
            out[m - 1] = jc
        if (m - 1) % 2 == 0 and m - 1 > 0:
            norm += 2.0 * jc
        if abs(jc) > 1e250:  # rescale to dodge overflow (tiny x, high orders)
            jc *= 1e-250
            jp *= 1e-250
            norm *= 1e-250
            out *= 1e-250
    norm += out[0]
    out /= norm
    return out


def _bessel_scalar(order: int, x: float) -> float:
    ax = abs(x)
    if ax <= _SERIES_CUTOFF:
        val = _series_j(order, ax)
    else:
        val = bessel_row(ax, order)[order]
    if x < 0.0 and order % 2 == 1:
        val = -val
    return val


def bessel_j(order: int, x):
    """Bessel function J_order(x) for order 0..8 and |x| <= 50.

    ``x`` may be a float or an ndarray; the result matches its shape.
    Absolute accuracy is ~1e-14, comfortably within the 1e-12 contract.
    """
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool):
        raise DomainError("order", f"must be an integer, got {order!r}")
    if order < 0 or order > MAX_ORDER:
        raise DomainError("order", f"supported range is 0..{MAX_ORDER}, got {order}")
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > MAX_ARG):
        raise DomainError("x", f"|x| <= {MAX_ARG} required")
    if arr.ndim == 0:
        return _bessel_scalar(int(order), float(arr))
    flat = [_bessel_scalar(int(order), float(v)) for v in arr.ravel()]
    return np.array(flat).reshape(arr.shape)
