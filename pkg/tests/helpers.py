"""Shared test oracles: finite differences and an RK4 integrator for the
Jacobi ODE system (independent of the Landen-ladder implementation)."""

import numpy as np


def central_diff(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def rk4_jacobi(t_end, k2, n_steps=4000):
    """Integrate (sn, cn, dn)' = (cn dn, -sn dn, -k2 sn cn) from (0, 1, 1).

    Direct ODE oracle for the defining equation of sn; returns the state at
    t_end.  Error is O(h^4) ~ 1e-12 at the default step count for t ~ 2.
    """
    y = np.array([0.0, 1.0, 1.0])

    def rhs(y):
        s, c, d = y
        return np.array([c * d, -s * d, -k2 * s * c])

    h = t_end / n_steps
    for _ in range(n_steps):
        k1 = rhs(y)
        k2_ = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2_)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2_ + 2 * k3 + k4)
    return y


def brute_smallest_denominator(lo, hi, qmax=5000):
    """Exhaustive small-q oracle for the rational with minimal denominator."""
    for q in range(1, qmax + 1):
        p = int(np.floor(lo * q)) + 1
        if lo < p / q < hi:
            return (p, q)
    return None
