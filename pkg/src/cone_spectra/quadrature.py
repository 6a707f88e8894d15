"""Adaptive composite-Simpson quadrature used by the Lawlor-neck machinery.

Improper integrals are first mapped through x = sinh(t), which turns the
x^-4 tails of the angle integrands into exponential decay; the resulting
finite interval is integrated by panel-doubling Simpson with Richardson
error control.  Integrands take numpy arrays.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import QuadratureFailure

MAX_LEVELS = 22  # 4M panels at the deepest level; smooth integrands stop far earlier
TINY = 1e-16


def simpson_doubling(
    f,
    a: float,
    b: float,
    tol_abs: float = 1e-10,
    tol_rel: float = 1e-12,
    min_levels: int = 4,
) -> tuple[float, float]:
    """Integrate f over [a, b]; returns (value, error_estimate).

    Panels double each level and convergence requires the Simpson update to
    fall below max(tol_abs, tol_rel * |value|) on two consecutive levels.
    """
    if not b > a:
        return 0.0, 0.0
    h = b - a
    fa, fb = f(np.array([a]))[0], f(np.array([b]))[0]
    trap = 0.5 * h * (fa + fb)
    simpson_prev = None
    good_streak = 0
    n = 1
    for level in range(MAX_LEVELS):
        mids = a + h * (np.arange(n) + 0.5)
        mid_sum = float(np.sum(f(mids)))
        trap_next = 0.5 * trap + 0.5 * h * mid_sum
        simpson = (4.0 * trap_next - trap) / 3.0
        if simpson_prev is not None and level + 1 >= min_levels:
            err = abs(simpson - simpson_prev)
            if err <= max(tol_abs, tol_rel * abs(simpson)):
                good_streak += 1
                if good_streak >= 2:
                    # one Richardson step on the h^4 Simpson error
                    return simpson + (simpson - simpson_prev) / 15.0, err
            else:
                good_streak = 0
        simpson_prev = simpson
        trap = trap_next
        h *= 0.5
        n *= 2
    raise QuadratureFailure(
        f"no convergence to tol_abs={tol_abs:g} on [{a:g}, {b:g}] "
        f"after {MAX_LEVELS} doublings"
    )


def decay_truncation(f, start: float = 4.0, step: float = 2.0, cap: float = 80.0) -> float:
    """Smallest T (scanned in steps) with |f(+-T)| below 1e-16."""
    t = start
    while t <= cap:
        vals = np.abs(f(np.array([-t, t])))
        if float(vals.max()) < TINY:
            return t
        t += step
    raise QuadratureFailure("integrand does not decay below 1e-16 by |t| = 80")


def integrate_real_line(f, tol_abs: float = 1e-10) -> float:
    """Integral of f over R after the x = sinh(t) substitution (f gets x)."""

    def g(t):
        x = np.sinh(t)
        return f(x) * np.cosh(t)

    big = decay_truncation(g)
    value, _ = simpson_doubling(g, -big, big, tol_abs=tol_abs)
    return value


def integrate_tail(f, lower: float, tol_abs: float = 1e-16, tol_rel: float = 1e-10) -> float:
    """Integral of f over [lower, infinity) via x = sinh(t) (relative control)."""

    def g(t):
        x = np.sinh(t)
        return f(x) * np.cosh(t)

    big = decay_truncation(g)
    lo = math.asinh(lower)
    if lo >= big:
        # the entire tail is below the truncation threshold
        return 0.0
    value, _ = simpson_doubling(g, lo, big, tol_abs=tol_abs, tol_rel=tol_rel)
    return value
