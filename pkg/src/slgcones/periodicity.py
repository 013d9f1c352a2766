"""Double periodicity: J sweeps for closure ratios, period lattices, rationals.

An immersion u_{alpha,J} is doubly periodic iff alpha is rational and
Theta/2pi = (theta_2(T) - alpha theta_1(T))/2pi is rational.  Because the
monotonicity of Theta in J is only conjectured, the J search never assumes
it: Theta is sampled on a dense grid over (0, 1/(3 sqrt 3)) and every
sign-change bracket is bisected independently.

Period lattices follow the three explicit cases:

  * J = 0, alpha = m/n:  omega_1 = (2 n pi, 0) and
    omega_2 = (0, 4K/r) if mn even, (n pi, 2K/r) if mn odd;
  * alpha = 0, theta_2(T) = 2 pi M/N:  omega_1 = (2 pi, 0) and
    omega_2 = (0, N T) if M even, (pi, N T) if M odd;
  * general alpha = m/n, Theta = 2 pi M/N:  with f = hcf(n, N),
    omega_1 = (2 (n/f) pi, 0) and omega_2 = (N/f) (-theta_1(T), T).

Every lattice this module hands out is certified numerically by evaluating
u at sampled base points translated by each generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .config import (J_CLOSED_FORM_SWITCH, J_MAX, RATIONAL_DENOMINATOR_CAP,
                     RATIONAL_TOL)
from .elliptic import complete_K
from .errors import NotDoublyPeriodicError, RootNotFoundError
from .torus import (ClosureData, FamilyParams, GammaSolution, build_family,
                    closure_angle, closure_theta_fast, immersion_at, solve_gamma)


@dataclass(frozen=True)
class PeriodLattice:
    """Two generators of the (s, t) period lattice, tagged by the theorem case."""

    omega1: tuple[float, float]
    omega2: tuple[float, float]
    case_tag: str  # "J0_mn" | "alpha0_J" | "general"


@lru_cache(maxsize=64)
def _theta_sweep(alpha: float, bracket_grid: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    js = np.linspace(1e-3 * J_MAX, (1.0 - 1e-4) * J_MAX, bracket_grid)
    thetas = [closure_theta_fast(build_family(alpha, float(j))) for j in js]
    return tuple(float(j) for j in js), tuple(thetas)


def find_J_for_ratio(alpha: float, M: int, N: int,
                     bracket_grid: int = 512, tol: float = 1e-10) -> list[float]:
    """All J with Theta(alpha, J) = 2 pi M/N found by grid scan + bisection.

    Monotonicity of Theta in J is NOT assumed; every sign-change bracket on
    the grid is bisected to |Theta - 2 pi M/N| < tol.  Raises
    RootNotFoundError (reporting the observed Theta range) when no bracket
    contains the target.
    """
    if math.gcd(M, N) != 1:
        raise ValueError(f"target ratio {M}/{N} must be in lowest terms")
    target = 2.0 * math.pi * M / N
    js, thetas = _theta_sweep(float(alpha), int(bracket_grid))
    resid = [th - target for th in thetas]
    roots = []
    for i in range(len(js) - 1):
        if resid[i] == 0.0:
            roots.append(js[i])
            continue
        if resid[i] * resid[i + 1] < 0.0:
            lo, hi, flo = js[i], js[i + 1], resid[i]
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fmid = closure_theta_fast(build_family(alpha, mid)) - target
                if abs(fmid) < tol:
                    roots.append(mid)
                    break
                if flo * fmid < 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fmid
                if hi - lo < 1e-16:
                    raise RootNotFoundError(
                        f"bisection stalled at J = {mid}; residual {fmid:.3e}")
            else:
                raise RootNotFoundError("bisection iteration cap reached")
    if not roots:
        lo_t, hi_t = min(thetas) / (2 * math.pi), max(thetas) / (2 * math.pi)
        raise RootNotFoundError(
            f"no bracket for Theta/2pi = {M}/{N} = {M/N:.6f}; "
            f"observed range [{lo_t:.6f}, {hi_t:.6f}]")
    return sorted(roots)


def rationalize_angle(theta: float, tol: float = RATIONAL_TOL,
                      cap: int = RATIONAL_DENOMINATOR_CAP) -> tuple[int, int]:
    """Certify theta = 2 pi M/N with N <= cap; raises NotDoublyPeriodicError."""
    frac = Fraction(theta / (2.0 * math.pi)).limit_denominator(cap)
    M, N = frac.numerator, frac.denominator
    if abs(theta * N / (2.0 * math.pi) - M) > tol:
        raise NotDoublyPeriodicError(
            f"theta/2pi = {theta/(2*math.pi):.12f} is not rational within "
            f"{tol:.1e} at denominators <= {cap}")
    return M, N


def certify_lattice(params: FamilyParams, sol: GammaSolution | None,
                    lattice: PeriodLattice, n_points: int = 10,
                    tol: float = 1e-7) -> float:
    """Max of |u(p + omega_i) - u(p)| over sampled base points; raises past tol."""
    rng = np.random.default_rng(20231212)
    w1, w2 = lattice.omega1, lattice.omega2
    worst = 0.0
    for _ in range(n_points):
        s = float(rng.uniform(0.0, abs(w1[0]) + 1.0))
        t = float(rng.uniform(0.0, abs(w2[1]) + 1.0))
        base = immersion_at(params, sol, s, t)
        for w in (w1, w2):
            shifted = immersion_at(params, sol, s + w[0], t + w[1])
            worst = max(worst, float(np.abs(shifted - base).max()))
    if worst > tol:
        raise NotDoublyPeriodicError(
            f"lattice certificate failed: max |u(p+omega)-u(p)| = {worst:.3e}")
    return worst


def period_lattice(params: FamilyParams, sol: GammaSolution | None,
                   closure: ClosureData | None, m: int, n: int,
                   certify: bool = True) -> PeriodLattice:
    """Period lattice of a doubly periodic u_{m/n, J}.

    For J > 0, `closure` supplies theta_i(T) and Theta, whose 2 pi
    rationality is certified here (|Theta N/2pi - M| < RATIONAL_TOL with N
    capped).  The returned generators follow the matching theorem case and
    are numerically certified unless certify=False.
    """
    if math.gcd(m, n) != 1:
        raise ValueError(f"alpha = {m}/{n} must be in lowest terms")
    if abs(params.alpha - m / n) > 1e-12:
        raise ValueError(f"params.alpha = {params.alpha} is not {m}/{n}")

    if params.uses_closed_form:
        if not 0 < m < n:
            raise NotDoublyPeriodicError("J = 0 tori need 0 < m < n")
        if sol is None:
            sol = solve_gamma(params)
        K = complete_K(sol.k)
        if (m * n) % 2 == 0:
            lat = PeriodLattice((2.0 * n * math.pi, 0.0), (0.0, 4.0 * K / sol.r), "J0_mn")
        else:
            lat = PeriodLattice((2.0 * n * math.pi, 0.0),
                                (n * math.pi, 2.0 * K / sol.r), "J0_mn")
    else:
        if sol is None:
            sol = solve_gamma(params)
        if closure is None:
            closure = closure_angle(params, sol)
        M, N = rationalize_angle(closure.Theta)
        if params.alpha == 0.0:
            omega2 = (0.0, N * sol.T) if M % 2 == 0 else (math.pi, N * sol.T)
            lat = PeriodLattice((2.0 * math.pi, 0.0), omega2, "alpha0_J")
        else:
            f = math.gcd(n, N)
            Ntil = N // f
            lat = PeriodLattice((2.0 * math.pi * (n // f), 0.0),
                                (-Ntil * closure.theta_T[0], Ntil * sol.T), "general")
    if certify:
        certify_lattice(params, sol, lat)
    return lat


def smallest_denominator_rational(lo, hi) -> tuple[int, int]:
    """The rational p/q in the open interval (lo, hi) with minimal q.

    Stern-Brocot / continued-fraction descent on exact Fractions.  Ties at
    the minimal denominator (only possible at q = 1) resolve to smaller p.
    """
    a, b = Fraction(lo), Fraction(hi)
    if not 0 < a < b:
        raise ValueError(f"need 0 < lo < hi, got ({lo}, {hi})")

    # continued-fraction descent: the simplest x in (a, b) is either the
    # smallest integer > a, or i + 1/simplest(1/(b-i), 1/(a-i)) with i = floor(a)
    prefix = []
    while True:
        i = a.numerator // a.denominator  # floor(a)
        if a < i + 1 < b:
            result = Fraction(i + 1)
            break
        if a == i:
            # interval (i, b) with b <= i+1: interior fractions are i + 1/y,
            # and the smallest admissible denominator is floor(1/(b-i)) + 1
            inv = 1 / (b - i)
            y = inv.numerator // inv.denominator + 1
            result = i + Fraction(1, y)
            break
        prefix.append(i)
        a, b = 1 / (b - i), 1 / (a - i)
    for i in reversed(prefix):
        result = i + 1 / result
    return result.numerator, result.denominator
