"""Planar wedges: Dirichlet eigen-data, heat kernel, polyharmonic
polynomials, and the Laplace-transform functional equations for reflected
Brownian kernels with general covariance.

The spectral side (eigenfunctions, Bessel series, asymptotic expansion of
the transition density) is float numerics with explicit truncation bounds;
the polynomial side (harmonic polynomials in Cartesian form, Almansi
decomposition) is exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lgamma
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from .polynomials import Poly1, Poly2

__all__ = [
    "Wedge",
    "QUADRANT",
    "EigenData",
    "HeatKernelParams",
    "m_j_eval",
    "laplacian_check_fmuj",
    "f2jj_cartesian",
    "continuous_laplacian",
    "almansi_decompose",
    "almansi_recompose",
    "bessel_i",
    "heat_kernel",
    "heat_kernel_expansion",
    "exponent_set",
    "CovMatrix",
    "bm_kernel_gamma",
    "bm_roots",
    "laplace_h",
    "laplace_h_on_root",
    "big_f",
    "laplace_v",
    "verify_functional_eqs",
    "laplace_numeric",
    "survival_quadrature",
]


class BesselOverflowError(OverflowError):
    """Raised when the series prefactor overflows; rescale the evaluation."""


@dataclass(frozen=True)
class Wedge:
    """Planar cone of opening xi, 0 < xi < 2 pi; the quadrant is xi = pi/2."""

    xi: float

    def __post_init__(self):
        if not (0.0 < self.xi < 2.0 * math.pi) or not math.isfinite(self.xi):
            raise ValueError("wedge opening must lie in (0, 2*pi)")

    def eigen(self, j: int) -> "EigenData":
        if j < 1:
            raise ValueError("eigenindex starts at 1")
        beta = j * math.pi / self.xi
        return EigenData(j=j, lambda_j=beta * beta, beta_j=beta, b_j=beta)

    def contains(self, r: float, theta: float) -> bool:
        return r > 0.0 and 0.0 < theta < self.xi


QUADRANT = Wedge(math.pi / 2.0)


@dataclass(frozen=True)
class EigenData:
    """Angular eigenvalue data; in two dimensions b_j = beta_j = j*pi/xi."""

    j: int
    lambda_j: float
    beta_j: float
    b_j: float


@dataclass(frozen=True)
class HeatKernelParams:
    eps: float = 1e-14
    max_spectral: int = 200
    max_bessel_terms: int = 400

    def __post_init__(self):
        if self.eps <= 0 or self.max_spectral < 1 or self.max_bessel_terms < 1:
            raise ValueError("invalid truncation parameters")


def m_j_eval(wedge: Wedge, j: int, theta: float) -> float:
    """L2-normalized Dirichlet eigenfunction sqrt(2/xi) sin(j pi theta / xi)."""
    if not (0.0 <= theta <= wedge.xi):
        raise ValueError(f"angle {theta} outside [0, {wedge.xi}]")
    return math.sqrt(2.0 / wedge.xi) * math.sin(j * math.pi * theta / wedge.xi)


def laplacian_check_fmuj(
    wedge: Wedge,
    mu: float,
    j: int,
    samples: Sequence[Tuple[float, float]] | None = None,
    h: float = 1e-4,
) -> float:
    """Max |Delta f - (mu^2 - lambda_j) r^(mu-2) m_j| over sample points.

    Delta is evaluated in polar coordinates by second-order central
    differences; f(r, theta) = r^mu m_j(theta).
    """
    lam = wedge.eigen(j).lambda_j
    if samples is None:
        rs = [0.5 + 0.25 * k for k in range(7)]
        ths = [wedge.xi * frac for frac in (0.2, 0.35, 0.5, 0.65, 0.8)]
        samples = [(r, th) for r in rs for th in ths]

    def f(r, th):
        return r**mu * m_j_eval(wedge, j, th)

    worst = 0.0
    for (r, th) in samples:
        frr = (f(r + h, th) - 2.0 * f(r, th) + f(r - h, th)) / (h * h)
        fr = (f(r + h, th) - f(r - h, th)) / (2.0 * h)
        ftt = (f(r, th + h) - 2.0 * f(r, th) + f(r, th - h)) / (h * h)
        lap = frr + fr / r + ftt / (r * r)
        target = (mu * mu - lam) * r ** (mu - 2.0) * m_j_eval(wedge, j, th)
        worst = max(worst, abs(lap - target))
    return worst


def f2jj_cartesian(j: int) -> Poly2:
    """The harmonic polynomial rho^(2j) sin(2j theta) in Cartesian form."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return Poly2(
        {
            (2 * j - 2 * k - 1, 2 * k + 1): Fraction((-1) ** k * comb(2 * j, 2 * k + 1))
            for k in range(j)
        }
    )


def continuous_laplacian(p: Poly2) -> Poly2:
    """Exact d^2/dx^2 + d^2/dy^2 on a bivariate polynomial."""
    return p.dx().dx() + p.dy().dy()


def almansi_decompose(f: Poly2, p: int) -> List[Poly2]:
    """Harmonic components [h_0, ..., h_{p-1}] with f = sum (x^2+y^2)^k h_k.

    Requires Delta^p f = 0 exactly.  The components are found by an exact
    linear solve on coefficients; the solver also certifies uniqueness by
    checking that its kernel is trivial.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    g = f
    for _ in range(p):
        g = continuous_laplacian(g)
    if not g.is_zero:
        raise ValueError(f"function is not polyharmonic of order <= {p}")

    deg = max(f.degree, 0)
    r2 = Poly2.x() ** 2 + Poly2.y() ** 2
    unknowns: List[Tuple[int, int, int]] = []  # (k, a, b)
    for k in range(p):
        dk = deg - 2 * k
        for a in range(max(dk, -1) + 1):
            for b in range(max(dk, -1) + 1 - a):
                unknowns.append((k, a, b))
    if not unknowns:
        if f.is_zero:
            return [Poly2.zero() for _ in range(p)]
        raise ValueError("degree bookkeeping failed")

    # columns: contribution of each unknown monomial to (i) the recomposition
    # and (ii) the harmonicity constraints of its layer
    recomposition_cols = []
    harmonic_cols = []
    r2pow = [r2**k for k in range(p)]
    for (k, a, b) in unknowns:
        mono = Poly2({(a, b): 1})
        recomposition_cols.append(r2pow[k] * mono)
        harmonic_cols.append((k, continuous_laplacian(mono)))

    eq_keys = set(f.coeffs)
    for col in recomposition_cols:
        eq_keys.update(col.coeffs)
    eq_keys = sorted(eq_keys)
    lap_keys = [
        sorted(set().union(*(c.coeffs for kk, c in harmonic_cols if kk == k)))
        for k in range(p)
    ]

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for key in eq_keys:
        rows.append([col.coeff(*key) for col in recomposition_cols])
        rhs.append(f.coeff(*key))
    for k in range(p):
        for key in lap_keys[k]:
            rows.append(
                [
                    (lap.coeff(*key) if kk == k else Fraction(0))
                    for (kk, lap) in harmonic_cols
                ]
            )
            rhs.append(Fraction(0))

    sol, nullity = _solve_with_nullity(rows, rhs)
    if sol is None:
        raise ValueError("no Almansi decomposition: inconsistent system")
    assert nullity == 0, "Almansi decomposition is not unique"
    parts = [Poly2.zero() for _ in range(p)]
    for (k, a, b), c in zip(unknowns, sol):
        if c:
            parts[k] = parts[k] + Poly2({(a, b): c})
    return parts


def almansi_recompose(parts: Sequence[Poly2]) -> Poly2:
    r2 = Poly2.x() ** 2 + Poly2.y() ** 2
    total = Poly2.zero()
    for k, h in enumerate(parts):
        total = total + r2**k * h
    return total


def _solve_with_nullity(rows, rhs):
    """Exact solve; returns (solution or None, kernel dimension)."""
    ncols = len(rows[0])
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r0 = 0
    for c in range(ncols):
        piv = next((r for r in range(r0, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[r0], m[piv] = m[piv], m[r0]
        pv = m[r0][c]
        m[r0] = [v / pv for v in m[r0]]
        for r in range(len(m)):
            if r != r0 and m[r][c] != 0:
                fac = m[r][c]
                m[r] = [a - fac * b for a, b in zip(m[r], m[r0])]
        pivots.append(c)
        r0 += 1
    for r in range(r0, len(m)):
        if m[r][ncols] != 0 and all(v == 0 for v in m[r][:ncols]):
            return None, ncols - len(pivots)
    sol = [Fraction(0)] * ncols
    for idx, c in enumerate(pivots):
        sol[c] = m[idx][ncols]
    return sol, ncols - len(pivots)


# ---------------------------------------------------------------------------
# Bessel series and the heat kernel
# ---------------------------------------------------------------------------


def bessel_i(beta: float, z: float, eps: float = 1e-15) -> float:
    """Modified Bessel I_beta(z) by its ascending series, log-gamma terms.

    Stops when the next term falls below eps relative to the partial sum.
    """
    if beta < 0 or z < 0:
        raise ValueError("bessel_i needs beta, z >= 0")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if z == 0.0:
        return 1.0 if beta == 0.0 else 0.0
    logz2 = math.log(z / 2.0)
    if beta * logz2 > 700.0:
        raise BesselOverflowError(
            "(z/2)^beta overflows; evaluate a rescaled quantity instead"
        )
    total = 0.0
    m = 0
    while True:
        logterm = (2 * m + beta) * logz2 - lgamma(m + 1) - lgamma(m + beta + 1)
        if logterm > 700.0:
            raise BesselOverflowError(
                "series term overflows; evaluate a rescaled quantity instead"
            )
        term = math.exp(logterm)
        total += term
        if term < eps * abs(total) and m >= 1:
            return total
        m += 1
        if m > 100000:
            raise RuntimeError("bessel series failed to converge")


def _bessel_i_grid(beta: float, z: np.ndarray, eps: float) -> np.ndarray:
    """Vectorized ascending series on an array of nonnegative arguments."""
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    mask = z > 0
    if beta == 0.0:
        out[~mask] = 1.0
    if not mask.any():
        return out
    zz = z[mask]
    logz2 = np.log(zz / 2.0)
    total = np.zeros_like(zz)
    m = 0
    while True:
        logterm = (2 * m + beta) * logz2 - lgamma(m + 1) - lgamma(m + beta + 1)
        term = np.exp(np.minimum(logterm, 700.0))
        total += term
        if m >= 1 and float(np.max(term - eps * np.abs(total))) < 0.0:
            break
        m += 1
        if m > 100000:
            raise RuntimeError("bessel series failed to converge")
    out[mask] = total
    return out


def heat_kernel(
    wedge: Wedge,
    x: Tuple[float, float],
    y: Tuple[float, float],
    t: float,
    params: HeatKernelParams | None = None,
) -> float:
    """Dirichlet transition density p(x, y; t) in the wedge (polar inputs).

    exp(-(rho^2+r^2)/2t)/t * sum_j I_{beta_j}(rho r / t) m_j(theta) m_j(eta),
    truncated when the leading-term bound of the j-th summand falls below
    params.eps (the bound uses the sup of |m_j| = sqrt(2/xi)).
    """
    params = params or HeatKernelParams()
    rho, theta = x
    r, eta = y
    if t <= 0:
        raise ValueError("t must be positive")
    if not wedge.contains(rho, theta) or not wedge.contains(r, eta):
        raise ValueError("both points must lie strictly inside the wedge")
    z = rho * r / t
    log_amp = math.log(2.0 / wedge.xi)  # sup bound on |m_j(theta) m_j(eta)|
    total = 0.0
    logz2 = math.log(z / 2.0) if z > 0 else -math.inf
    for j in range(1, params.max_spectral + 1):
        beta = wedge.eigen(j).beta_j
        logbound = beta * logz2 - lgamma(beta + 1.0) + log_amp
        if j > 1 and logbound < math.log(params.eps):
            break
        term = (
            bessel_i(beta, z, params.eps)
            * m_j_eval(wedge, j, theta)
            * m_j_eval(wedge, j, eta)
        )
        total += term
    return math.exp(-(rho * rho + r * r) / (2.0 * t)) / t * total


def heat_kernel_expansion(
    wedge: Wedge,
    x: Tuple[float, float],
    y: Tuple[float, float],
    t: float,
    cutoff: float,
) -> float:
    """Large-time expansion of the heat kernel, keeping exponents <= cutoff.

    Sums  (-1)^k binom(k,n) / (2^(k+2m+beta_j) k! m! Gamma(m+beta_j+1))
          * f_{beta_j+2(m+n), j}(x) f_{beta_j+2(m+k-n), j}(y) / t^(1+beta_j+k+2m)
    over j >= 1, k, m >= 0, 0 <= n <= k with 1+beta_j+k+2m <= cutoff,
    where f_{mu,j}(r, theta) = r^mu m_j(theta).
    """
    rho, theta = x
    r, eta = y
    total = 0.0
    j = 1
    while True:
        beta = wedge.eigen(j).beta_j
        if 1.0 + beta > cutoff + 1e-12:
            break
        mj_x = m_j_eval(wedge, j, theta)
        mj_y = m_j_eval(wedge, j, eta)
        budget = cutoff - 1.0 - beta
        k = 0
        while k <= budget + 1e-12:
            m = 0
            while k + 2 * m <= budget + 1e-12:
                logc = -(
                    (k + 2 * m + beta) * math.log(2.0)
                    + lgamma(k + 1)
                    + lgamma(m + 1)
                    + lgamma(m + beta + 1)
                )
                base = (-1.0) ** k * math.exp(logc)
                expo = 1.0 + beta + k + 2 * m
                for n in range(k + 1):
                    fa = rho ** (beta + 2 * (m + n)) * mj_x
                    fb = r ** (beta + 2 * (m + k - n)) * mj_y
                    total += base * comb(k, n) * fa * fb / t**expo
                m += 1
            k += 1
        j += 1
    return total


def exponent_set(wedge: Wedge, cutoff: float) -> List[Tuple[float, int]]:
    """Sorted exponents of the expansion below the cutoff, with multiplicity.

    Entries are (exponent, multiplicity); multiplicity > 1 flags a collision
    between different angular indices j.
    """
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    values: List[float] = []
    j = 1
    while True:
        base = wedge.eigen(j).beta_j + 1.0
        if base > cutoff:
            break
        v = base
        while v <= cutoff + 1e-12:
            values.append(v)
            v += 1.0
        j += 1
    values.sort()
    out: List[Tuple[float, int]] = []
    for v in values:
        if out and abs(out[-1][0] - v) < 1e-9:
            out[-1] = (out[-1][0], out[-1][1] + 1)
        else:
            out.append((v, 1))
    return out


# ---------------------------------------------------------------------------
# Laplace-transform functional equations (general covariance)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CovMatrix:
    """Positive-definite covariance of the driving planar Brownian motion."""

    s11: float
    s12: float
    s22: float

    def __post_init__(self):
        if self.s11 <= 0 or self.s22 <= 0:
            raise ValueError("diagonal entries must be positive")
        if self.det <= 0:
            raise ValueError("covariance must be positive definite (det > 0)")

    @property
    def det(self) -> float:
        return self.s11 * self.s22 - self.s12 * self.s12

    @property
    def c_plus(self) -> complex:
        return complex(-self.s12, math.sqrt(self.det)) / self.s22

    @property
    def c_minus(self) -> complex:
        return complex(-self.s12, -math.sqrt(self.det)) / self.s22

    @property
    def c(self) -> float:
        return math.sqrt(self.s11 / self.s22)

    @property
    def theta(self) -> float:
        return math.acos(-self.s12 / math.sqrt(self.s11 * self.s22))


def bm_kernel_gamma(cov: CovMatrix, x: complex, y: complex) -> complex:
    """Characteristic quadratic form (s11 x^2 + 2 s12 x y + s22 y^2)/2."""
    return 0.5 * (cov.s11 * x * x + 2.0 * cov.s12 * x * y + cov.s22 * y * y)


def bm_roots(cov: CovMatrix) -> Tuple[complex, complex, float, float]:
    """(c+, c-, c, theta) with gamma(x, c+- x) = 0 and c+- = c e^{+-i theta}."""
    return cov.c_plus, cov.c_minus, cov.c, cov.theta


def _cpow(z: complex, w: float) -> complex:
    """Principal-branch power with arguments in (-pi, pi]."""
    if z == 0:
        raise ValueError("0 cannot be raised to a fractional power here")
    if z.real < 0 and z.imag == 0:
        raise ValueError("evaluation exactly on the branch cut")
    return cmath.exp(w * cmath.log(z))


def _poly_at_complex(P: Poly1, z: complex) -> complex:
    acc = 0j
    for c in reversed(P.coeffs):
        acc = acc * z + complex(c)
    return acc


def laplace_h(cov: CovMatrix, P: Poly1, x: complex, y: complex) -> complex:
    """Laplace transform of the Dirichlet-harmonic family:

        (s11/2) [P(1/y^w) - P(-1/(c^w x^w))] / gamma(x, y),  w = pi/theta.

    On the kernel zero set y = c+- x the removable singularity is filled by
    the explicit limit (laplace_h_on_root).
    """
    w = math.pi / cov.theta
    g = bm_kernel_gamma(cov, x, y)
    if g == 0:
        cp = cov.c_plus
        sign = 1 if abs(y - cp * x) <= abs(y - cov.c_minus * x) else -1
        return laplace_h_on_root(cov, P, x, sign)
    num = _poly_at_complex(P, 1.0 / _cpow(y, w)) - _poly_at_complex(
        P, -1.0 / (cov.c**w * _cpow(x, w))
    )
    return 0.5 * cov.s11 * num / g


def laplace_h_on_root(cov: CovMatrix, P: Poly1, x: complex, sign: int) -> complex:
    """Limit of laplace_h along y -> c(+-) x (sign +1 / -1)."""
    w = math.pi / cov.theta
    cpm = cov.c_plus if sign > 0 else cov.c_minus
    cmp_ = cov.c_minus if sign > 0 else cov.c_plus
    ratio = cov.s11 / cov.s22
    pref = -sign * ratio * w / ((cpm - cmp_) * x)
    arg = 1.0 / _cpow(cpm * x, w)
    return pref * _poly_at_complex(P.derivative(), arg) / _cpow(cpm * x, w + 1.0)


def big_f(cov: CovMatrix, P: Poly1, y: complex) -> complex:
    """Decoupling term F(y) of the bi-harmonic boundary equation."""
    w = math.pi / cov.theta
    cp, cm = cov.c_plus, cov.c_minus
    const = -(cov.s11 / cov.s22) * w * (cp * cm) / ((cp - cm) ** 2)
    return const * _poly_at_complex(P.derivative(), 1.0 / _cpow(y, w)) / _cpow(
        y, w + 2.0
    )


def laplace_v(cov: CovMatrix, P: Poly1, Q: Poly1, x: complex, y: complex) -> complex:
    """Laplace transform of a bi-harmonic function v with generator image h:

        [Q(1/y^w) - Q(1/(c+ x)^w) + G(x,y) + L(h)(x,y)] / gamma(x,y),
        G(x,y) = F(y) - F(c+ x) - L(h)(x, c+ x).
    """
    w = math.pi / cov.theta
    g = bm_kernel_gamma(cov, x, y)
    if g == 0:
        raise ValueError("laplace_v is singular on the kernel zero set")
    cpx = cov.c_plus * x
    qpart = _poly_at_complex(Q, 1.0 / _cpow(y, w)) - _poly_at_complex(
        Q, 1.0 / _cpow(cpx, w)
    )
    gpart = big_f(cov, P, y) - big_f(cov, P, cpx) - laplace_h_on_root(cov, P, x, +1)
    return (qpart + gpart + laplace_h(cov, P, x, y)) / g


def verify_functional_eqs(
    cov: CovMatrix,
    P: Poly1,
    Q: Poly1,
    samples: Sequence[Tuple[complex, complex]],
) -> Dict[str, float]:
    """Max residuals of the harmonic / bi-harmonic functional equations and
    of the boundary relation, over the given samples.

    Closed forms used:  L1(h)(y) = P(1/y^w) (up to the s11/2 factor),
    L2(h)(x) = -(s11/s22) P(-1/(c^w x^w)), (s11/2) L1(v)(y) = Q(1/y^w)+F(y),
    and the matching x-side of L(v).
    """
    w = math.pi / cov.theta
    res_h = res_v = res_b = 0.0
    for (x, y) in samples:
        g = bm_kernel_gamma(cov, x, y)
        l1h = _poly_at_complex(P, 1.0 / _cpow(y, w))
        l2h = -(cov.s11 / cov.s22) * _poly_at_complex(
            P, -1.0 / (cov.c**w * _cpow(x, w))
        )
        lhs_h = g * laplace_h(cov, P, x, y)
        rhs_h = 0.5 * (cov.s11 * l1h + cov.s22 * l2h)
        res_h = max(res_h, abs(lhs_h - rhs_h))

        cpx = cov.c_plus * x
        half_l1v = _poly_at_complex(Q, 1.0 / _cpow(y, w)) + big_f(cov, P, y)
        half_l2v = (
            -_poly_at_complex(Q, 1.0 / _cpow(cpx, w))
            - big_f(cov, P, cpx)
            - laplace_h_on_root(cov, P, x, +1)
        )
        lhs_v = g * laplace_v(cov, P, Q, x, y)
        rhs_v = half_l1v + half_l2v + laplace_h(cov, P, x, y)
        res_v = max(res_v, abs(lhs_v - rhs_v))

        s = abs(x)
        b1 = _poly_at_complex(P, 1.0 / _cpow(cov.c_plus * s, w))
        b2 = _poly_at_complex(P, 1.0 / _cpow(cov.c_minus * s, w))
        res_b = max(res_b, abs(b1 - b2))
    return {"h_equation": res_h, "v_equation": res_v, "boundary": res_b}


def laplace_numeric(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x: float,
    y: float,
    tol: float = 1e-8,
    panels: int = 48,
    nodes_per_panel: int = 16,
) -> float:
    """Tensor Gauss-Legendre quadrature of the two-sided Laplace integral
    of f over the first quadrant, truncated where the kernel is negligible.
    """
    rate = min(x, y)
    if rate <= 0:
        raise ValueError("quadrature oracle needs positive real parts")
    R = -math.log(1e-3 * tol) / rate
    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = np.linspace(0.0, R, panels + 1)
    pts = []
    wts = []
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = (a + b) / 2.0, (b - a) / 2.0
        pts.append(mid + half * gl_x)
        wts.append(half * gl_w)
    u = np.concatenate(pts)
    wu = np.concatenate(wts)
    U, V = np.meshgrid(u, u, indexing="ij")
    W = np.outer(wu, wu)
    vals = f(U, V) * np.exp(-x * U - y * V)
    return float(np.sum(vals * W))


def survival_quadrature(
    wedge: Wedge,
    start: Tuple[float, float],
    t: float,
    eps: float = 1e-12,
    n_r: int = 600,
    n_theta: int = 96,
) -> float:
    """Integral of the heat kernel over the wedge by polar quadrature.

    The spectral sum factors over the grid: per angular index the radial and
    angular parts are vectorized, with the same leading-term truncation as
    the pointwise evaluator.
    """
    rho, theta0 = start
    if not wedge.contains(rho, theta0):
        raise ValueError("start point must lie strictly inside the wedge")
    R = rho + 10.0 * math.sqrt(t) + 1.0
    gl_x, gl_w = np.polynomial.legendre.leggauss(n_r)
    r = (gl_x + 1.0) * (R / 2.0)
    wr = gl_w * (R / 2.0)
    gt_x, gt_w = np.polynomial.legendre.leggauss(n_theta)
    th = (gt_x + 1.0) * (wedge.xi / 2.0)
    wt = gt_w * (wedge.xi / 2.0)

    pref = np.exp(-(rho * rho + r * r) / (2.0 * t)) / t
    z = rho * r / t
    zmax = float(np.max(z))
    total = 0.0
    j = 1
    while True:
        beta = wedge.eigen(j).beta_j
        logbound = beta * math.log(zmax / 2.0) - lgamma(beta + 1.0) if zmax > 0 else -math.inf
        if j > 1 and logbound < math.log(eps) - 1.0:
            break
        radial = _bessel_i_grid(beta, z, eps) * pref * r  # includes Jacobian r
        ang = np.sqrt(2.0 / wedge.xi) * np.sin(j * math.pi * th / wedge.xi)
        total += (
            m_j_eval(wedge, j, theta0)
            * float(np.sum(radial * wr))
            * float(np.sum(ang * wt))
        )
        j += 1
        if j > 400:
            break
    return total
