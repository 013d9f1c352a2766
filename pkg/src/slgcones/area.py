"""Areas of the S^1-invariant tori: closed elliptic form, quadrature, limits.

The per-period area A(alpha, J) = integral of the conformal factor y over
one basic period T has the closed form

    A = 2 (y_2 K(k) / r + r E(k)),

with (y_1, y_2, y_3), r, k from the conformal-factor cubic.  At J = 0 the
family reduces to a single-variable form: with p = 1 + alpha + alpha^2 and
r = (4p - 3)^{1/4},

    y_2 = (1 - r^2)/2,   k^2 = (1 + r^2)(3 - r^2)/(4 r^2),
    A(r) = (1/r - r) K + 2 r E,

monotone in r on r^4 in (1, 9) with range [2, 2 pi/sqrt 3].  The quantity
dA_dr below is the derivative of A/2 (the half-period normalization in
which it exceeds 1/2 everywhere on the domain).

Total torus areas: Area(T_{m,n}) = 4 n pi A(m/n) for mn even and
2 n pi A(m/n) for mn odd; the (0, 1) row is the Clifford torus with area
4 pi^2 / sqrt 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import CROSS_TOL, J_CLOSED_FORM_SWITCH, J_MAX
from .elliptic import Modulus, complete_E, complete_K
from .errors import QuadratureError
from .torus import (FamilyParams, GammaSolution, build_family, conformal_factor,
                    conformal_y_at, solve_gamma)

CLIFFORD_AREA = 4.0 * math.pi ** 2 / math.sqrt(3.0)

# slope of the chord of A(alpha) between alpha = 0 and alpha = 1
LINEAR_SLOPE = 2.0 * math.pi / math.sqrt(3.0) - 2.0


def area_per_period(params: FamilyParams, sol: GammaSolution | None = None) -> float:
    """A(alpha, J) via the closed elliptic-integral form.

    Degenerate boundaries return their exact limits: 2 pi / sqrt 3 at
    alpha = 1, (2 pi / 3) sqrt(1 + alpha + alpha^2) at J = 1/(3 sqrt 3),
    and A = 2 at the alpha = J = 0 corner.
    """
    alpha, J = params.alpha, params.J
    if alpha >= 1.0 - 1e-12:
        return 2.0 * math.pi / math.sqrt(3.0)
    if J >= J_MAX * (1.0 - 1e-12):
        return (2.0 * math.pi / 3.0) * math.sqrt(1.0 + alpha + alpha * alpha)
    if alpha < 1e-12 and J < J_CLOSED_FORM_SWITCH:
        return 2.0
    cf = conformal_factor(params)
    _, y2, _ = cf.y_roots
    return 2.0 * (y2 * complete_K(cf.k_y) / cf.r_y + cf.r_y * complete_E(cf.k_y))


def area_quadrature(params: FamilyParams, sol: GammaSolution | None = None,
                    tol: float = 1e-12, max_doublings: int = 14) -> float:
    """A(alpha, J) by trapezoid sums of y over one period, Richardson refined.

    Independent of the K/E route; the two must agree to CROSS_TOL.  The
    integrand is smooth and periodic, so the trapezoid rule converges
    superalgebraically and the doubling loop ends quickly.
    """
    if sol is None:
        sol = solve_gamma(params)
    T = sol.T

    def trap(n):
        ts = np.linspace(0.0, T, n + 1)
        ys = conformal_y_at(params, sol, ts)
        return float(np.trapezoid(ys, ts))

    n = 64
    prev = trap(n)
    for _ in range(max_doublings):
        n *= 2
        cur = trap(n)
        rich = (4.0 * cur - prev) / 3.0
        if abs(cur - prev) < tol * max(1.0, abs(cur)):
            return rich
        prev = cur
    raise QuadratureError("trapezoid refinement for the area did not converge")


def area_J0(alpha: float) -> float:
    """A(alpha, 0) in the single-variable J = 0 form; A(0) = 2 exactly."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    p = 1.0 + alpha + alpha * alpha
    r = (4.0 * p - 3.0) ** 0.25
    if r == 1.0:
        return 2.0
    k2 = (1.0 + r * r) * (3.0 - r * r) / (4.0 * r * r)
    m = Modulus.from_k2(min(max(k2, 0.0), 1.0 - 1e-16))
    return (1.0 / r - r) * complete_K(m) + 2.0 * r * complete_E(m)


@dataclass(frozen=True)
class TorusArea:
    m: int
    n: int
    area: float
    area_over_4pi: float
    parity: str  # "even" | "odd" | "clifford"


def _check_coprime(m: int, n: int):
    if not (isinstance(m, int) and isinstance(n, int) and 0 <= m < n):
        raise ValueError(f"need integers 0 <= m < n, got ({m}, {n})")
    if math.gcd(m, n) != 1:
        raise ValueError(f"(m, n) = ({m}, {n}) are not coprime")


def area_Tmn(m: int, n: int) -> TorusArea:
    """Total area of the torus at alpha = m/n, J = 0.

    (0, 1) is the Clifford torus row with the exact area 4 pi^2 / sqrt 3;
    otherwise 4 n pi A(m/n) for mn even and 2 n pi A(m/n) for mn odd.
    """
    _check_coprime(m, n)
    if m == 0:
        return TorusArea(0, 1, CLIFFORD_AREA, CLIFFORD_AREA / (4.0 * math.pi), "clifford")
    A = area_J0(m / n)
    if (m * n) % 2 == 0:
        total = 4.0 * n * math.pi * A
        parity = "even"
    else:
        total = 2.0 * n * math.pi * A
        parity = "odd"
    return TorusArea(m, n, total, total / (4.0 * math.pi), parity)


def area_bounds_Tmn(m: int, n: int) -> tuple[float, float]:
    """Strict bounds on Area/4pi: (2n, 2 pi n/sqrt 3) even, (n, pi n/sqrt 3) odd.

    Asserts that the computed area actually lies strictly inside.
    """
    _check_coprime(m, n)
    if m == 0:
        raise ValueError("the (0, 1) Clifford row has no two-sided T_{m,n} bound")
    if (m * n) % 2 == 0:
        lo, hi = 2.0 * n, 2.0 * math.pi * n / math.sqrt(3.0)
    else:
        lo, hi = float(n), math.pi * n / math.sqrt(3.0)
    val = area_Tmn(m, n).area_over_4pi
    if not lo < val < hi:
        raise ArithmeticError(f"area/4pi = {val} escapes ({lo}, {hi}) for ({m}, {n})")
    return lo, hi


def area_linear_approx(m: int, n: int) -> float:
    """Chord approximation of Area/4pi: 2n + M m (even), n + M m/2 (odd)."""
    _check_coprime(m, n)
    if m == 0:
        raise ValueError("no linear approximation for the (0, 1) Clifford row")
    if (m * n) % 2 == 0:
        return 2.0 * n + LINEAR_SLOPE * m
    return n + 0.5 * LINEAR_SLOPE * m


def _d_series(k2: float) -> float:
    """(K - E)/k^2, stable for all k^2 in [0, 1); series below 1e-4."""
    if k2 < 1e-4:
        return math.pi / 4.0 * (1.0 + 0.375 * k2 + (15.0 / 64.0) * k2 * k2)
    m = Modulus.from_k2(k2)
    return (complete_K(m) - complete_E(m)) / k2


def dA_dr(r: float) -> float:
    """d(A/2)/dr on the J = 0 slice, r^4 in (1, 9); always exceeds 1/2.

    Evaluated as (1+r^2)/(3+r^2) E + (r^4-1)/(4 r^2) (K-E)/k^2, which is the
    combined form of the two textbook expressions and is regular through
    r^2 = 3 (where k = 0 makes the raw (K-E)/(3-r^2) term 0/0).
    """
    r = float(r)
    r2 = r * r
    if not 1.0 < r2 * r2 < 9.0:
        raise ValueError(f"dA/dr needs r^4 in (1, 9), got r = {r}")
    k2 = (1.0 + r2) * (3.0 - r2) / (4.0 * r2)
    k2 = min(max(k2, 0.0), 1.0 - 1e-16)
    E = complete_E(Modulus.from_k2(k2))
    return (1.0 + r2) / (3.0 + r2) * E + (r2 * r2 - 1.0) / (4.0 * r2) * _d_series(k2)


def r_of_alpha(alpha: float) -> float:
    """The J = 0 radial parameter r = (4p - 3)^{1/4}, p = 1 + alpha + alpha^2."""
    return (4.0 * (1.0 + alpha + alpha * alpha) - 3.0) ** 0.25


def area_J0_of_r(r: float) -> float:
    """A as a function of r on the J = 0 slice (for derivative cross-checks)."""
    r = float(r)
    if not 1.0 <= r * r <= 3.0:
        raise ValueError(f"r^2 must lie in [1, 3], got r = {r}")
    if r == 1.0:
        return 2.0
    k2 = (1.0 + r * r) * (3.0 - r * r) / (4.0 * r * r)
    m = Modulus.from_k2(min(max(k2, 0.0), 1.0 - 1e-16))
    return (1.0 / r - r) * complete_K(m) + 2.0 * r * complete_E(m)


@dataclass(frozen=True)
class Lambda1Bounds:
    yang_yau: float   # 16 pi / Area, genus-1 Yang-Yau
    coarse: float     # 2/n for T_{m,2n'}, 4/n for odd n


def lambda1_upper_Tmn(m: int, n: int) -> Lambda1Bounds:
    """Upper bounds for the first eigenvalue of T_{m,n}.

    Yang-Yau for genus 1 gives lambda_1 <= 16 pi / Area; combining with the
    strict area lower bound gives the coarse forms lambda_1 < 1/n' on
    T_{m,2n'} and lambda_1 < 4/(2n'+1) on T_{2m'+1,2n'+1}.
    """
    res = area_Tmn(m, n)
    yang = 16.0 * math.pi / res.area
    coarse = 2.0 / n if (m * n) % 2 == 0 else 4.0 / n
    return Lambda1Bounds(yang, coarse)


def area_u0J(J: float, N: int) -> float:
    """Total area 2 pi N A(0, J) of a doubly periodic u_{0,J} with ratio M/N."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    return 2.0 * math.pi * N * area_per_period(build_family(0.0, J))


def cross_validate_area(params: FamilyParams, sol: GammaSolution | None = None,
                        tol: float = CROSS_TOL) -> float:
    """|closed form - quadrature|; raises past tol, returns the residual."""
    closed = area_per_period(params, sol)
    quad = area_quadrature(params, sol)
    res = abs(closed - quad)
    if res > tol:
        raise ArithmeticError(f"area routes disagree by {res:.3e} at "
                              f"(alpha, J) = ({params.alpha}, {params.J})")
    return res
