"""Complete elliptic integrals K, E and the Jacobi functions sn, cn, dn.

K and E come from the arithmetic-geometric mean, which converges
quadratically; sn/cn/dn come from a descending Landen (Gauss) ladder that
bottoms out in circular functions once the modulus drops below
LANDEN_CUTOFF.  The ladder recurrences preserve sn^2+cn^2=1 and
dn^2=1-k^2 sn^2 algebraically, so the identities hold to rounding error.

Accuracy is ~1e-12 absolute away from k=1.  As k -> 1, K diverges like
log(4/k') and precision degrades gracefully; k=1 itself is only served by
the tanh/sech closed forms (sn(t,1)=tanh t).

All functions are pure and reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import VALUE_TOL

# Descend the modulus ladder until the residual modulus is below this;
# the neglected correction to the circular base case is O(cutoff^2).
LANDEN_CUTOFF = 1e-12

_MAX_AGM_ITER = 64


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus k in [0, 1) with cached k^2 and complementary 1-k^2."""

    k: float
    k2: float
    kprime2: float

    def __post_init__(self):
        if not 0.0 <= self.k < 1.0:
            raise ValueError(f"modulus must satisfy 0 <= k < 1, got {self.k}")

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        k = float(k)
        # (1-k)(1+k) keeps the complementary parameter accurate near k=1
        return cls(k, k * k, (1.0 - k) * (1.0 + k))

    @classmethod
    def from_k2(cls, k2: float) -> "Modulus":
        k2 = float(k2)
        if not 0.0 <= k2 < 1.0:
            raise ValueError(f"k^2 must lie in [0, 1), got {k2}")
        return cls(math.sqrt(k2), k2, 1.0 - k2)


def _as_modulus(k) -> Modulus:
    if isinstance(k, Modulus):
        return k
    return Modulus.from_k(k)


def _agm(k2: float, kprime2: float):
    """AGM chain for (1, k'); returns (final a, sum 2^{n-1} c_n^2)."""
    a, b = 1.0, math.sqrt(kprime2)
    csum = 0.5 * k2  # n = 0 term, c_0 = k
    f = 0.5
    for _ in range(_MAX_AGM_ITER):
        c = 0.5 * (a - b)
        if abs(c) <= 1e-17 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        f *= 2.0
        csum += f * c * c
    return a, csum


def complete_K(k) -> float:
    """Complete elliptic integral of the first kind, modulus convention.

    Strictly increasing on [0, 1), K(0) = pi/2, divergent as k -> 1.
    """
    m = _as_modulus(k)
    a, _ = _agm(m.k2, m.kprime2)
    return math.pi / (2.0 * a)


def complete_E(k) -> float:
    """Complete elliptic integral of the second kind on [0, 1].

    Strictly decreasing, E(0) = pi/2, E(1) = 1 (handled exactly).
    """
    if not isinstance(k, Modulus) and float(k) == 1.0:
        return 1.0
    m = _as_modulus(k)
    a, csum = _agm(m.k2, m.kprime2)
    return math.pi / (2.0 * a) * (1.0 - csum)


def dE_dk(k) -> float:
    """dE/dk = (E - K)/k, valid for 0 < k < 1 (negative there)."""
    m = _as_modulus(k)
    if m.k == 0.0:
        raise ValueError("dE/dk formula requires 0 < k < 1")
    return (complete_E(m) - complete_K(m)) / m.k


def dK_dk(k) -> float:
    """dK/dk = (E - k'^2 K) / (k k'^2), valid for 0 < k < 1 (positive there)."""
    m = _as_modulus(k)
    if m.k == 0.0:
        raise ValueError("dK/dk formula requires 0 < k < 1")
    return (complete_E(m) - m.kprime2 * complete_K(m)) / (m.k * m.kprime2)


def _landen_ladder(m: Modulus):
    """Moduli m_1 > m_2 > ... descending from m until below LANDEN_CUTOFF."""
    ladder = []
    k2, kprime2 = m.k2, m.kprime2
    while k2 > LANDEN_CUTOFF * LANDEN_CUTOFF and len(ladder) < 64:
        kp = math.sqrt(kprime2)
        knext = (1.0 - kp) / (1.0 + kp)
        ladder.append(knext)
        k2 = knext * knext
        kprime2 = 4.0 * kp / ((1.0 + kp) ** 2)  # 1 - knext^2, cancellation-free
    return ladder


def jacobi_sn_cn_dn(t, k):
    """Jacobi sn, cn, dn of real argument t (scalar or ndarray).

    k may be a Modulus, a float in [0, 1), or exactly 1.0, in which case the
    hyperbolic closed forms (tanh, sech, sech) are returned.  sn and cn have
    period 4K(k), dn has period 2K(k).
    """
    scalar = np.isscalar(t)
    u = np.asarray(t, dtype=float)
    if not isinstance(k, Modulus) and float(k) == 1.0:
        s = np.tanh(u)
        c = 1.0 / np.cosh(u)
        out = (s, c, c.copy())
        return tuple(float(v) for v in out) if scalar else out
    m = _as_modulus(k)
    ladder = _landen_ladder(m)
    scale = 1.0
    for kappa in ladder:
        scale *= 1.0 + kappa
    v = u / scale
    s, c = np.sin(v), np.cos(v)
    d = np.ones_like(v)
    for kappa in reversed(ladder):
        denom = 1.0 + kappa * s * s
        s, c, d = (1.0 + kappa) * s / denom, c * d / denom, (1.0 - kappa * s * s) / denom
    if scalar:
        return float(s), float(c), float(d)
    return s, c, d


def check_identities(t, k, tol: float = VALUE_TOL) -> float:
    """Max residual of sn^2+cn^2-1 and dn^2-1+k^2 sn^2 over t; raises past tol."""
    m = _as_modulus(k)
    s, c, d = jacobi_sn_cn_dn(np.asarray(t, dtype=float), m)
    res = max(float(np.abs(s * s + c * c - 1.0).max()),
              float(np.abs(d * d - 1.0 + m.k2 * s * s).max()))
    if res > tol:
        raise ArithmeticError(f"Jacobi identity residual {res:.3e} exceeds {tol:.1e}")
    return res
