"""The two-parameter family of S^1-invariant minimal Legendrian immersions.

For (alpha, J) in [0,1] x [0, 1/(3*sqrt 3)] the immersion R^2 -> S^5 is

    u(s, t) = e^{As} (z_1(t), z_2(t), z_3(t)),   A = i diag(lambda),

with lambda = (1, alpha, -1-alpha), mu = (1,1,1) x lambda, and the profile
driven by the planar ODE

    gamma'^2 / 4 + J^2 = P gamma^3 + (sigma_2/3) gamma^2 + 1/27,

P = mu_1 mu_2 mu_3, sigma_2 = sum_{i<j} mu_i mu_j.  The three stationary
values Gamma_2 <= 0 <= Gamma_1 <= Gamma_3 of gamma turn the ODE into a
Jacobi sn-squared orbit

    gamma(t) = Gamma_2 + (Gamma_1 - Gamma_2) sn^2(r t, k),
    r^2 = P (Gamma_3 - Gamma_2),   k^2 = (Gamma_1 - Gamma_2)/(Gamma_3 - Gamma_2),

periodic with basic period T = 2 K(k)/r.  The nine profile functions are
R_i^2 = gamma mu_i + 1/3, theta_i' = J mu_i / R_i^2 (theta_i(0) = 0) and
z_i = R_i e^{i theta_i}.  Angles are always kept as continuous lifts; no
mod-2pi reduction happens anywhere, so the closure angle
Theta = theta_2(T) - alpha theta_1(T) is well defined.

J = 0 (and any J below J_CLOSED_FORM_SWITCH) uses the explicit profile

    (c_1 cn(rt, k), i c_2 sn(rt, k), c_3 dn(rt, k)),

r^2 = 1+2 alpha, k^2 = (1-alpha^2)/(1+2 alpha), in which the first two
components are signed; their constant phases stand in for theta.  At
alpha = 0 that closed form runs at k = 1 through the tanh/sech limits.

alpha = 1 and J = 1/(3*sqrt 3) are the degenerate-family boundary (the
immersion is the Clifford torus); solve_gamma refuses them and callers
special-case the known constant limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .config import J_CLOSED_FORM_SWITCH, J_MAX, ROOT_COLLISION_TOL
from .elliptic import Modulus, complete_K, jacobi_sn_cn_dn
from .errors import DegenerateFamilyError, QuadratureError


@dataclass(frozen=True)
class FamilyParams:
    """One member (alpha, J) of the family with its derived weight vectors."""

    alpha: float
    J: float
    lambda_vec: tuple[float, float, float]
    mu_vec: tuple[float, float, float]

    @property
    def uses_closed_form(self) -> bool:
        return self.J < J_CLOSED_FORM_SWITCH

    def generator_phases(self, s):
        """e^{i lambda_i s} for the diagonal generator A = i diag(lambda)."""
        lam = np.asarray(self.lambda_vec)
        return np.exp(1j * np.multiply.outer(lam, np.asarray(s, dtype=float)))


@dataclass(frozen=True)
class GammaSolution:
    """Stationary values, elliptic parameters and basic period of gamma."""

    roots: tuple[float, float, float]  # (Gamma_1, Gamma_2, Gamma_3)
    r: float
    k: Modulus
    T: float


@dataclass(frozen=True)
class ProfileState:
    """The nine profile functions at one t.

    For J > 0 all R_i are positive, theta_i is the continuous lift from
    theta_i(0) = 0 and z_i = R_i e^{i theta_i}.  On the J = 0 closed-form
    path R_1, R_2 are the signed cn/sn profiles and theta holds the fixed
    phases (0, pi/2, 0) of (c_1 cn, i c_2 sn, c_3 dn).
    """

    t: float
    gamma: float
    R: tuple[float, float, float]
    theta: tuple[float, float, float]
    z: tuple[complex, complex, complex]


@dataclass(frozen=True)
class ConformalFactor:
    """Stationary values of the conformal factor y = -P gamma + sum(lambda^2)/3."""

    y_roots: tuple[float, float, float]  # (y_1, y_2, y_3), y_2 <= 0 <= y_1 <= y_3
    r_y: float
    k_y: Modulus


@dataclass(frozen=True)
class ClosureData:
    """Period angles theta_i(T) and the closure angle Theta."""

    theta_T: tuple[float, float, float]
    Theta: float


def build_family(alpha: float, J: float) -> FamilyParams:
    """Validate (alpha, J) and derive lambda, mu = (1,1,1) x lambda."""
    alpha, J = float(alpha), float(J)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if not 0.0 <= J <= J_MAX * (1.0 + 1e-12):
        raise ValueError(f"J must lie in [0, 1/(3 sqrt 3)] = [0, {J_MAX:.6f}], got {J}")
    lam = (1.0, alpha, -1.0 - alpha)
    mu = (lam[2] - lam[1], lam[0] - lam[2], lam[1] - lam[0])
    return FamilyParams(alpha, J, lam, mu)


def _three_real_roots(a2: float, a0: float):
    """Ascending real roots of x^3 + a2 x^2 + a0 (no linear term here)."""
    p = -a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 + a0
    # trigonometric method; the discriminant is nonpositive in the valid range
    mag = 2.0 * math.sqrt(max(-p / 3.0, 0.0))
    if mag == 0.0:
        return sorted([-a2 / 3.0] * 3)
    arg = 3.0 * q / (p * mag)
    arg = min(1.0, max(-1.0, arg))
    phi = math.acos(arg)
    xs = [mag * math.cos((phi + 2.0 * math.pi * j) / 3.0) - a2 / 3.0 for j in range(3)]
    return sorted(xs)


def _invariants(params: FamilyParams):
    mu = params.mu_vec
    P = mu[0] * mu[1] * mu[2]
    sigma2 = mu[0] * mu[1] + mu[0] * mu[2] + mu[1] * mu[2]
    return P, sigma2


def _w_cubic_coeffs(params: FamilyParams, mu: float):
    """Coefficients of the cubic satisfied by w = mu gamma + 1/3.

    A3 w^3 + A2 w^2 + A1 w - J^2 = 0.  The constant term is exactly -J^2:
    the naive combination -P/(27 mu^3) + sigma2/(27 mu^2) + 1/27 collapses
    to (sum mu_i)/(27 mu) = 0 symbolically, so no cancellation survives.
    """
    P, sigma2 = _invariants(params)
    mu2, mu3 = mu * mu, mu * mu * mu
    a3 = P / mu3
    a2 = sigma2 / (3.0 * mu2) - P / mu3
    a1 = P / (3.0 * mu3) - 2.0 * sigma2 / (9.0 * mu2)
    return a3, a2, a1


def _w_root(params: FamilyParams, mu: float, seed: float) -> float:
    """The w-cubic root nearest `seed`, to full relative precision.

    Used for roots that are O(J^2) or O(J) small, where evaluating
    mu Gamma + 1/3 in doubles would lose all relative accuracy.  The seed
    (the plain double value) is within ~1e-13 absolute of the root, so
    Newton converges; a final residual check guards against escapes.
    """
    a3, a2, a1 = _w_cubic_coeffs(params, mu)
    J2 = params.J * params.J

    def g(w):
        return ((a3 * w + a2) * w + a1) * w - J2

    if J2 == 0.0 and abs(seed) < 1e-10:
        return 0.0  # w = 0 is an exact root: Gamma = -1/(3 mu) at J = 0
    w = seed
    for _ in range(60):
        dg = (3.0 * a3 * w + 2.0 * a2) * w + a1
        if dg == 0.0:
            break
        step = g(w) / dg
        w -= step
        if abs(step) <= 2e-16 * abs(w):
            break
    if abs(w - seed) > 1e-9 * (1.0 + abs(seed)):
        raise ArithmeticError(f"w-root refinement escaped its seed: {seed} -> {w}")
    return w


def solve_gamma(params: FamilyParams) -> GammaSolution:
    """Stationary values of gamma, elliptic parameters (r, k) and period T.

    The cubic P g^3 + (sigma_2/3) g^2 + (1/27 - J^2) has no linear term
    because the roots satisfy sum Gamma_i Gamma_j = 0 identically.  Raw
    trigonometric roots are refined through the w = mu gamma + 1/3 cubics,
    which keeps the root gap Gamma_3 - Gamma_1 (hence k'^2) fully accurate
    even where the two nearly collide (alpha -> 0, J -> 0).  Raises
    DegenerateFamilyError at alpha = 1 and J = 1/(3 sqrt 3) (collided
    roots, Clifford torus) and at the k = 1 corner alpha = J = 0.
    """
    alpha, J = params.alpha, params.J
    if alpha >= 1.0 - 1e-12:
        raise DegenerateFamilyError("alpha = 1: constant-profile Clifford torus")
    if J >= J_MAX * (1.0 - 1e-12):
        raise DegenerateFamilyError("J = 1/(3 sqrt 3): constant-profile Clifford torus")
    P, sigma2 = _invariants(params)
    raw2, raw1, raw3 = _three_real_roots(sigma2 / (3.0 * P), (1.0 / 27.0 - J * J) / P)
    if not (raw2 <= 1e-10 and raw1 >= -1e-10):
        raise ArithmeticError(f"gamma roots violate ordering: {(raw2, raw1, raw3)}")
    mu1, mu2 = params.mu_vec[0], params.mu_vec[1]
    # w-roots: mu2 > 0 anchors Gamma_2; mu1 < 0 anchors both Gamma_1 and Gamma_3
    w_g2 = _w_root(params, mu2, mu2 * raw2 + 1.0 / 3.0)
    w_g1 = _w_root(params, mu1, mu1 * raw1 + 1.0 / 3.0)
    w_g3 = _w_root(params, mu1, mu1 * raw3 + 1.0 / 3.0)
    g2 = (w_g2 - 1.0 / 3.0) / mu2
    g1 = (w_g1 - 1.0 / 3.0) / mu1
    g3 = (w_g3 - 1.0 / 3.0) / mu1
    amp = g1 - g2                   # Gamma_1 - Gamma_2, O(1) on the whole range
    gap = (w_g1 - w_g3) / (-mu1)    # Gamma_3 - Gamma_1, cancellation-free
    span = amp + gap                # Gamma_3 - Gamma_2
    if span <= ROOT_COLLISION_TOL:
        raise DegenerateFamilyError("gamma cubic roots collided")
    k2 = min(max(amp / span, 0.0), 1.0)
    kprime2 = max(gap / span, 0.0)
    if kprime2 < 1e-15:
        raise DegenerateFamilyError(
            "k = 1 (alpha = J = 0 corner): gamma orbit is the tanh limit, not periodic")
    k = Modulus(math.sqrt(k2), k2, kprime2)
    r = math.sqrt(P * span)
    T = 2.0 * complete_K(k) / r
    return GammaSolution((g1, g2, g3), r, k, T)


def gamma_at(sol: GammaSolution, t):
    """gamma(t) = Gamma_2 + (Gamma_1 - Gamma_2) sn^2(rt, k)."""
    g1, g2, _ = sol.roots
    s, _, _ = jacobi_sn_cn_dn(np.asarray(t, dtype=float) * sol.r, sol.k)
    out = g2 + (g1 - g2) * s * s
    return float(out) if np.isscalar(t) else out


def gamma_dot_at(sol: GammaSolution, t):
    """d gamma/dt = 2 r (Gamma_1 - Gamma_2) sn cn dn at rt."""
    g1, g2, _ = sol.roots
    s, c, d = jacobi_sn_cn_dn(np.asarray(t, dtype=float) * sol.r, sol.k)
    out = 2.0 * sol.r * (g1 - g2) * s * c * d
    return float(out) if np.isscalar(t) else out


def _r_squared(params: FamilyParams, sol: GammaSolution, ts: np.ndarray) -> np.ndarray:
    mu = np.asarray(params.mu_vec)
    return np.multiply.outer(mu, gamma_at(sol, ts)) + 1.0 / 3.0


def _min_radius_sq(params: FamilyParams, sol: GammaSolution, i: int) -> float:
    """min_t R_i^2 to full relative precision (it is O(J^2) as J -> 0).

    The minimum sits at the stationary gamma value anchored by the sign of
    mu_i; evaluating mu_i Gamma + 1/3 directly would cancel, so the value
    is taken as the corresponding small root of the w-cubic.
    """
    mu = params.mu_vec[i]
    anchor = sol.roots[1] if mu >= 0.0 else sol.roots[0]
    return max(_w_root(params, mu, mu * anchor + 1.0 / 3.0), 0.0)


def _theta_rate(params: FamilyParams, sol: GammaSolution, i: int):
    """Vectorized d theta_i/dt = J mu_i / R_i^2, cancellation-free.

    R_i^2 is anchored at its own minimum: mu_i > 0 bottoms out at the sn
    zeros, so R_i^2 = min(R_i^2) + mu_i (Gamma_1 - Gamma_2) sn^2; mu_i < 0
    bottoms out at sn^2 = 1, so the cn^2-anchored form is used.  The tiny
    anchor constant comes from _min_radius_sq, keeping the pointwise
    evaluation smooth enough for 1e-13 quadrature targets at any J.
    """
    J, mu = params.J, params.mu_vec[i]
    g1, g2, _ = sol.roots
    amp = g1 - g2
    const = _min_radius_sq(params, sol, i)

    if mu >= 0.0:
        def rate(t):
            s, _, _ = jacobi_sn_cn_dn(np.asarray(t, dtype=float) * sol.r, sol.k)
            return J * mu / (const + mu * amp * s * s)
    else:
        def rate(t):
            _, c, _ = jacobi_sn_cn_dn(np.asarray(t, dtype=float) * sol.r, sol.k)
            return J * mu / (const - mu * amp * c * c)

    return rate


def theta_at(params: FamilyParams, sol: GammaSolution, ts) -> np.ndarray:
    """Continuous lifts theta_i over an ascending grid; shape (3, len(ts)).

    theta_i(t) = integral of J mu_i / R_i^2 from 0; evaluated by cumulative
    Gauss-Kronrod panels on the closed-form gamma (no ODE stepping).
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if ts.size == 0:
        return np.zeros((3, 0))
    grid = ts
    prepend_zero = False
    if grid[0] != 0.0:
        grid = np.concatenate(([0.0], grid))
        prepend_zero = True
    if np.any(np.diff(grid) < 0):
        raise ValueError("theta grid must ascend from 0")
    atol = _theta_atol(params.J)
    out = np.empty((3, grid.size))
    for i in range(3):
        out[i] = quadrature.cumulative_integral(_theta_rate(params, sol, i), grid,
                                                atol=atol)
    return out[:, 1:] if prepend_zero else out


def _theta_atol(J: float) -> float:
    # Lorentzian layers of width ~J in the rates push the conservative
    # |K15-G7| estimator toward an eps/J noise floor; budget for it.  The
    # true error stays two or more orders below the estimate.
    return 1e-13 + 2e-16 / max(J, 1e-12)


def _theta_single_period(params: FamilyParams, sol: GammaSolution, i: int) -> float:
    # The rates are symmetric about T/2 and develop layers of width ~J at
    # t = 0 (mu_i > 0) or t = T/2 (mu_i < 0) when J is small.  Integrating
    # the half period under t = (T/4)(1 - cos pi x) puts both layer sites at
    # interval endpoints where the substitution clusters quadrature nodes.
    T = sol.T
    rate = _theta_rate(params, sol, i)

    def g(x):
        t = 0.25 * T * (1.0 - np.cos(np.pi * x))
        return rate(t) * 0.25 * T * np.pi * np.sin(np.pi * x)

    half = quadrature.integrate(g, 0.0, 1.0, rtol=1e-12, atol=_theta_atol(params.J))
    return 2.0 * half


def closed_form_coefficients(alpha: float):
    """(c_1, c_2, c_3), r, k^2 of the J=0 profile (c_1 cn, i c_2 sn, c_3 dn)."""
    mu = build_family(alpha, 0.0).mu_vec
    c = (math.sqrt((mu[1] - mu[0]) / (3.0 * mu[1])),
         math.sqrt((mu[0] - mu[1]) / (3.0 * mu[0])),
         math.sqrt((mu[1] - mu[2]) / (3.0 * mu[1])))
    r = math.sqrt(1.0 + 2.0 * alpha)
    k2 = (1.0 - alpha * alpha) / (1.0 + 2.0 * alpha)
    return c, r, k2


def _profile_z_closed_form(alpha: float, ts: np.ndarray) -> np.ndarray:
    c, r, k2 = closed_form_coefficients(alpha)
    kk = 1.0 if k2 >= 1.0 - 1e-15 else Modulus.from_k2(k2)
    s, cn, dn = jacobi_sn_cn_dn(ts * r, kk)
    return np.vstack([c[0] * cn + 0j, 1j * c[1] * s, c[2] * dn + 0j])


def profile_z(params: FamilyParams, sol: GammaSolution | None, ts) -> np.ndarray:
    """Profile curve z(t) = (z_1, z_2, z_3), shape (3, len(ts)).

    Vectorized core used by immersion evaluation, certificates and the
    nodal grid oracle.  ts must ascend when J > 0 (theta integration).
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if params.uses_closed_form:
        return _profile_z_closed_form(params.alpha, ts)
    if sol is None:
        sol = solve_gamma(params)
    R = np.sqrt(np.maximum(_r_squared(params, sol, ts), 0.0))
    theta = theta_at(params, sol, ts)
    return R * np.exp(1j * theta)


def profile_at(params: FamilyParams, sol: GammaSolution | None, t: float) -> ProfileState:
    """Full ProfileState at a single t."""
    t = float(t)
    if params.uses_closed_form:
        z = _profile_z_closed_form(params.alpha, np.array([t]))[:, 0]
        c, r, k2 = closed_form_coefficients(params.alpha)
        kk = 1.0 if k2 >= 1.0 - 1e-15 else Modulus.from_k2(k2)
        s, cn, dn = jacobi_sn_cn_dn(t * r, kk)
        R = (c[0] * cn, c[1] * s, c[2] * dn)
        theta = (0.0, math.pi / 2.0, 0.0)
        P, _ = _invariants(params)
        # recover gamma from R_2^2 = gamma mu_2 + 1/3 (mu_2 > 0 always)
        gam = (R[1] * R[1] - 1.0 / 3.0) / params.mu_vec[1]
        return ProfileState(t, gam, R, theta, tuple(z))
    if sol is None:
        sol = solve_gamma(params)
    gam = gamma_at(sol, t)
    R = tuple(math.sqrt(max(m * gam + 1.0 / 3.0, 0.0)) for m in params.mu_vec)
    th = tuple(float(v) for v in theta_at(params, sol, np.array([abs(t)]))[:, 0])
    if t < 0.0:
        # integrand is even in t about 0 (gamma even), so theta is odd
        th = tuple(-v for v in th)
    z = tuple(R[i] * complex(math.cos(th[i]), math.sin(th[i])) for i in range(3))
    return ProfileState(t, gam, R, th, z)


def immersion_at(params: FamilyParams, sol: GammaSolution | None, s: float, t: float):
    """u(s, t) = e^{As} z(t) as a complex 3-vector with |u| = 1."""
    state = profile_at(params, sol, t)
    lam = params.lambda_vec
    return np.array([np.exp(1j * lam[i] * s) * state.z[i] for i in range(3)])


def immersion_grid(params: FamilyParams, sol: GammaSolution | None,
                   s_vals, t_vals) -> np.ndarray:
    """u on a grid; shape (3, len(t_vals), len(s_vals))."""
    zeta = profile_z(params, sol, t_vals)
    phases = params.generator_phases(s_vals)
    return zeta[:, :, None] * phases[:, None, :]


def conformal_y_at(params: FamilyParams, sol: GammaSolution, t):
    """Conformal factor y(t) = -P gamma(t) + sum(lambda^2)/3 (positive)."""
    P, _ = _invariants(params)
    S = sum(l * l for l in params.lambda_vec)
    return -P * gamma_at(sol, t) + S / 3.0


def conformal_factor(params: FamilyParams) -> ConformalFactor:
    """Stationary values of y from its own cubic y^3 - (S/2) y^2 + Q = 0.

    Q = prod(lambda^2) + J^2 prod(mu)^2.  This is an independent route to
    (r, k): r_y^2 = y_3 - y_2 and k_y^2 = (y_3 - y_1)/(y_3 - y_2) must
    reproduce the gamma-side values.
    """
    if params.alpha >= 1.0 - 1e-12 or params.J >= J_MAX * (1.0 - 1e-12):
        raise DegenerateFamilyError("constant conformal factor on the Clifford boundary")
    lam, mu = params.lambda_vec, params.mu_vec
    S = sum(l * l for l in lam)
    Q = (lam[0] * lam[1] * lam[2]) ** 2 + (params.J * mu[0] * mu[1] * mu[2]) ** 2
    y2, y1, y3 = _three_real_roots(-S / 2.0, Q)
    if not (y2 <= 1e-10 <= y3 and y1 >= -1e-10):
        raise ArithmeticError(f"conformal cubic roots violate ordering: {(y2, y1, y3)}")
    y1 = max(y1, 0.0)
    span = y3 - y2
    if span <= ROOT_COLLISION_TOL:
        raise DegenerateFamilyError("conformal cubic roots collided")
    k2 = min(max((y3 - y1) / span, 0.0), 1.0 - 1e-15)
    return ConformalFactor((y1, y2, y3), math.sqrt(span), Modulus.from_k2(k2))


def closure_angle(params: FamilyParams, sol: GammaSolution | None = None) -> ClosureData:
    """theta_i(T) over one basic period and Theta = theta_2(T) - alpha theta_1(T).

    Requires J > 0 (below the closed-form switch every theta_i(T) is 0 and
    the closure question is trivial).  The three angles are integrated
    independently; |sum theta_i(T)| > 1e-7 is treated as quadrature failure.
    """
    if params.uses_closed_form:
        raise ValueError("closure angle needs J > 0; the J = 0 family closes for rational alpha")
    if sol is None:
        sol = solve_gamma(params)
    th = tuple(_theta_single_period(params, sol, i) for i in range(3))
    if abs(sum(th)) > 1e-7:
        raise QuadratureError(f"sum theta_i(T) = {sum(th):.3e}; quadrature did not converge")
    return ClosureData(th, th[1] - params.alpha * th[0])


def closure_theta_fast(params: FamilyParams, sol: GammaSolution | None = None) -> float:
    """Theta only (skips theta_3); used by the J sweep where speed matters."""
    if sol is None:
        sol = solve_gamma(params)
    theta2 = _theta_single_period(params, sol, 1)
    if params.alpha == 0.0:
        return theta2
    return theta2 - params.alpha * _theta_single_period(params, sol, 0)
