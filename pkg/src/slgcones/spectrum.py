"""Exact Laplace spectra of flat tori and round spheres, and index reports.

A flat torus R^d / Gamma has spectrum {4 pi^2 |x|^2 : x in Gamma*}; the
dual-lattice points inside the cutoff ball are enumerated with a
Cholesky-pruned depth-first search, so the returned multiset is complete
up to the cutoff by construction.  The Clifford torus T^{n-1} in S^{2n-1}
is served by a second, independent code path with the exact integer form

    lambda(k) = n sum k_i^2 - (sum k_i)^2,   k in Z^{n-1}.

Sphere spectra are the harmonic-polynomial ladder lambda = l(l + dim - 1).

Index data for a cone link with the spectrum in hand:

  * l-ind   = number of eigenvalues in the open interval (0, 2n);
  * N(beta) = number of eigenvalues in [0, beta (beta + n - 2)], beta >= 0;
  * s-ind   = N(2) - b0 - 2n - (dim SU(n) - dim G);
  * rigid  <=> multiplicity of 2n equals dim SU(n) - dim G.

Exact-integer spectra are compared exactly; floating spectra are merged
into multiplicities with a 1e-9 clustering tolerance.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import POINT_BUDGET
from .errors import IncompleteSpectrumError, PointBudgetError

_CLUSTER_TOL = 1e-9


@dataclass(frozen=True)
class FlatSpectrum:
    """Sorted (eigenvalue, multiplicity) pairs, complete up to `cutoff`."""

    entries: tuple[tuple[float, int], ...]
    cutoff: float
    source: str

    def count_upto(self, x: float) -> int:
        """Number of eigenvalues (with multiplicity) <= x, cluster-tolerant."""
        tol = _CLUSTER_TOL * max(1.0, abs(x))
        return sum(m for lam, m in self.entries if lam <= x + tol)

    def count_open_interval(self, a: float, b: float) -> int:
        tol = _CLUSTER_TOL * max(1.0, abs(a), abs(b))
        return sum(m for lam, m in self.entries if a + tol < lam < b - tol)

    def multiplicity(self, x: float) -> int:
        tol = _CLUSTER_TOL * max(1.0, abs(x))
        return sum(m for lam, m in self.entries if abs(lam - x) <= tol)

    def eigenvalues(self):
        return [lam for lam, _ in self.entries]


def _cluster(values, tol=_CLUSTER_TOL):
    out = []
    for v in sorted(values):
        if out and abs(v - out[-1][0]) <= tol * max(1.0, abs(v)):
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return tuple((v, m) for v, m in out)


def _enumerate_quadratic_form(H: np.ndarray, bound: float, budget: int):
    """Integer vectors q with q^T H q <= bound (H SPD), Cholesky-pruned DFS.

    The bound is used as given; callers inflate it slightly and re-filter,
    so no point below their true cutoff can be missed by float roundoff.
    """
    d = H.shape[0]
    U = np.linalg.cholesky(H).T  # q^T H q = |U q|^2
    q = [0] * d
    visited = 0

    def rec(i, acc):
        nonlocal visited
        if i < 0:
            yield tuple(q)
            return
        t = 0.0
        for j in range(i + 1, d):
            t += U[i, j] * q[j]
        rad = math.sqrt(max(bound - acc, 0.0))
        lo = math.ceil((-rad - t) / U[i, i] - 1e-12)
        hi = math.floor((rad - t) / U[i, i] + 1e-12)
        visited += max(hi - lo + 1, 0)
        if visited > budget:
            raise PointBudgetError(
                f"lattice enumeration exceeded the point budget {budget}")
        for v in range(lo, hi + 1):
            q[i] = v
            term = U[i, i] * v + t
            nxt = acc + term * term
            if nxt <= bound + 1e-9:
                yield from rec(i - 1, nxt)
        q[i] = 0

    yield from rec(d - 1, 0.0)


def _is_exact(basis) -> bool:
    try:
        return all(isinstance(x, (int, Fraction)) for row in basis for x in row)
    except TypeError:
        return False


def _fraction_inverse(G):
    """Inverse of a square Fraction matrix by Gauss-Jordan elimination."""
    d = len(G)
    aug = [[Fraction(G[i][j]) for j in range(d)] + [Fraction(int(i == j)) for j in range(d)]
           for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("basis vectors are linearly dependent")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[d:] for row in aug]


def flat_torus_spectrum(basis, cutoff: float, *,
                        point_budget: int = POINT_BUDGET) -> FlatSpectrum:
    """Laplace spectrum of R^d / Gamma for the lattice spanned by `basis`.

    `basis` is a sequence of 2..11 linearly independent real vectors (any
    ambient dimension >= d).  Eigenvalues are 4 pi^2 m^T G^{-1} m over
    integer coefficient vectors m of the dual basis, G the Gram matrix.
    Exact (int/Fraction) bases go through exact rational Gram arithmetic so
    multiplicities can never split spuriously.
    """
    rows = [list(row) for row in basis]
    d = len(rows)
    if not 2 <= d <= 11:
        raise ValueError(f"need 2..11 basis vectors, got {d}")
    B = np.asarray(rows, dtype=float)
    if B.ndim != 2 or B.shape[1] < d:
        raise ValueError("basis vectors live in ambient dimension >= their count")
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    G = B @ B.T
    if abs(np.linalg.det(G)) < 1e-12:
        raise ValueError("basis vectors are linearly dependent")
    H = np.linalg.inv(G)
    four_pi2 = 4.0 * math.pi ** 2
    bound = cutoff / four_pi2 * (1.0 + 1e-12) + 1e-15

    exact = _is_exact(rows)
    if exact:
        Gf = [[sum(Fraction(a) * Fraction(b) for a, b in zip(ri, rj)) for rj in rows]
              for ri in rows]
        Hf = _fraction_inverse(Gf)

    values = []
    keytol = _CLUSTER_TOL
    exact_counts: dict[Fraction, int] = {}
    for q in _enumerate_quadratic_form(H, bound, point_budget):
        if exact:
            qv = [Fraction(x) for x in q]
            val = sum(qv[i] * Hf[i][j] * qv[j] for i in range(d) for j in range(d))
            lam = four_pi2 * float(val)
            if lam <= cutoff + keytol * max(1.0, cutoff):
                exact_counts[val] = exact_counts.get(val, 0) + 1
        else:
            qv = np.asarray(q, dtype=float)
            lam = four_pi2 * float(qv @ H @ qv)
            if lam <= cutoff + keytol * max(1.0, cutoff):
                values.append(lam)
    if exact:
        entries = tuple(sorted((four_pi2 * float(v), m) for v, m in exact_counts.items()))
    else:
        entries = _cluster(values)
    return FlatSpectrum(entries, float(cutoff), f"lattice basis ({d} vectors)")


def clifford_torus_lattice_basis(n: int) -> np.ndarray:
    """A Z-basis of the Clifford torus lattice: rows (2 pi/sqrt n)(e_i - e_{i+1})."""
    if n < 3:
        raise ValueError("need n >= 3")
    B = np.zeros((n - 1, n))
    for i in range(n - 1):
        B[i, i], B[i, i + 1] = 1.0, -1.0
    return 2.0 * math.pi / math.sqrt(n) * B


def clifford_spectrum(n: int, cutoff: float, *,
                      point_budget: int = POINT_BUDGET) -> FlatSpectrum:
    """Spectrum of the Clifford torus T^{n-1} by exact integer enumeration.

    lambda(k) = n sum k_i^2 - (sum k_i)^2 over k in Z^{n-1}; all comparisons
    and multiplicities are exact integers.
    """
    if not 3 <= n <= 12:
        raise ValueError(f"need 3 <= n <= 12, got {n}")
    d = n - 1
    H = n * np.eye(d) - np.ones((d, d))
    counts: dict[int, int] = {}
    for k in _enumerate_quadratic_form(H, cutoff * (1.0 + 1e-12) + 1e-9, point_budget):
        lam = n * sum(x * x for x in k) - sum(k) ** 2
        if lam <= cutoff:
            counts[lam] = counts.get(lam, 0) + 1
    entries = tuple(sorted((float(l), m) for l, m in counts.items()))
    return FlatSpectrum(entries, float(cutoff), f"clifford torus T^{n-1} in S^{2*n-1}")


def lambda_pq(n: int, p: int, q: int) -> int:
    """The Clifford eigenvalue (p+q) n - (p-q)^2 of the (1_p, -1_q, 0_...) vector."""
    if p < 0 or q < 0 or p + q > n - 1:
        raise ValueError(f"need p, q >= 0 with p + q <= n - 1, got ({p}, {q})")
    return (p + q) * n - (p - q) ** 2


def _harmonic_dim(N: int, k: int) -> int:
    # dim of degree-k harmonic homogeneous polynomials on R^N
    if k == 0:
        return 1
    if k == 1:
        return N
    return math.comb(N + k - 1, k) - math.comb(N + k - 3, k - 2)


def sphere_spectrum(dim: int, kmax: int) -> FlatSpectrum:
    """Spectrum of the round S^dim: lambda = l(l + dim - 1) for l = 0..kmax.

    Multiplicities are the classical harmonic homogeneous polynomial
    dimensions on R^{dim+1}.
    """
    if dim < 2:
        raise ValueError("need dim >= 2")
    if kmax < 1:
        raise ValueError("need kmax >= 1")
    entries = tuple((float(l * (l + dim - 1)), _harmonic_dim(dim + 1, l))
                    for l in range(kmax + 1))
    return FlatSpectrum(entries, float(kmax * (kmax + dim - 1)), f"round sphere S^{dim}")


def growth_rates(lam: float, n: int) -> tuple[float, float]:
    """The two homogeneity orders alpha^{+-} = -(n-2)/2 +- sqrt((n-2)^2/4 + lambda)."""
    h = 0.5 * (n - 2)
    root = math.sqrt(h * h + lam)
    return (-h + root, -h - root)


@dataclass(frozen=True)
class IndexReport:
    """Legendrian/stability index data for a cone link in C^n."""

    n_ambient: int
    dim_G: int
    b0: int
    l_ind: int
    s_ind: int
    N_of: dict[int, int]          # beta -> N(beta) for beta = 0, 1, 2
    m_of: dict[int, int]          # alpha -> multiplicity of lambda = alpha(alpha+n-2)
    D_elements: tuple[float, ...]  # growth orders in the window
    mult_2n: int
    legendrian_stable: bool
    rigid: bool
    strictly_stable: bool
    spectrum: FlatSpectrum = field(repr=False)

    def N(self, beta: float) -> int:
        """N(beta): eigenvalue count in [0, beta(beta + n - 2)] for beta >= 0,
        minus the count of growth orders in (beta, 0) for beta < 0."""
        n = self.n_ambient
        if beta >= 0:
            return self.spectrum.count_upto(beta * (beta + n - 2))
        total = 0
        for lam, m in self.spectrum.entries:
            a_minus = growth_rates(lam, n)[1]
            if beta < a_minus < 0:
                total += m
        return -total

    def m(self, alpha: float) -> int:
        return self.spectrum.multiplicity(alpha * (alpha + self.n_ambient - 2))


def index_report(spec: FlatSpectrum, n_ambient: int, dim_G: int,
                 b0: int = 1, window: tuple[float, float] = (0.0, 2.0)) -> IndexReport:
    """Compute l-ind, s-ind, N(beta), m(alpha) and growth orders from a spectrum.

    Requires the spectrum complete to at least 2 n_ambient.  dim_G is the
    dimension of the SU(n) subgroup preserving the cone (an input: 2 for the
    T^2-symmetric Clifford link with n = 3, n - 1 in general for Clifford,
    1 for S^1-invariant tori, 0 generically).
    """
    n = n_ambient
    if spec.cutoff < 2 * n - _CLUSTER_TOL:
        raise IncompleteSpectrumError(
            f"spectrum cutoff {spec.cutoff} is below 2n = {2*n}")
    dim_sun = n * n - 1
    l_ind = spec.count_open_interval(0.0, 2.0 * n)
    N_of = {b: spec.count_upto(b * (b + n - 2)) for b in (0, 1, 2)}
    m_of = {a: spec.multiplicity(a * (a + n - 2)) for a in (0, 1, 2)}
    s_ind = N_of[2] - b0 - 2 * n - (dim_sun - dim_G)
    mult_2n = spec.multiplicity(2.0 * n)
    d_elems = []
    for lam, mult in spec.entries:
        for a in growth_rates(lam, n):
            if window[0] <= a <= window[1]:
                d_elems.extend([a] * mult)
    rigid = mult_2n == dim_sun - dim_G
    return IndexReport(
        n_ambient=n, dim_G=dim_G, b0=b0, l_ind=l_ind, s_ind=s_ind,
        N_of=N_of, m_of=m_of, D_elements=tuple(sorted(d_elems)),
        mult_2n=mult_2n, legendrian_stable=(l_ind == 2 * n), rigid=rigid,
        strictly_stable=(s_ind == 0), spectrum=spec)


def spectrum_to_csv(spec: FlatSpectrum) -> str:
    """CSV export: eigenvalue, multiplicity, cumulative count (LF endings)."""
    buf = io.StringIO()
    buf.write("eigenvalue,multiplicity,cumulative\n")
    cum = 0
    for lam, m in spec.entries:
        cum += m
        buf.write(f"{lam:.12g},{m},{cum}\n")
    return buf.getvalue()
