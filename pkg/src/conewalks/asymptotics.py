"""Exact asymptotic machinery: Bernoulli numbers, ordinary Bell tables,
the polynomial family h_j entering the ballot-count expansion, their
two-dimensional products for the diagonal walk, and an exact-rational
fitter that extracts expansion coefficients from excursion counts.

Everything here is computed in Fractions.  Floats appear only when
dividing out the transcendental prefactor (4/pi etc.) for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, List, Sequence, Tuple

from .counting import admissible, closed_form_for
from .polynomials import Poly1, Poly2, rat_to_str

__all__ = [
    "bernoulli",
    "alpha",
    "bell_alpha",
    "bell_table",
    "c_alpha",
    "gaussian_moment",
    "h_poly",
    "v_diag",
    "laplacian_1d",
    "ExpansionModel",
    "EXPANSION_MODELS",
    "default_nodes",
    "ExpansionFit",
    "fit_expansion",
    "fit_model_expansion",
]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n from sum_{k<=n} C(n+1,k) B_k = 0, B_0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    total = sum(
        (Fraction(comb(n + 1, k)) * bernoulli(k) for k in range(n)), Fraction(0)
    )
    return -total / (n + 1)


@lru_cache(maxsize=None)
def alpha(m: int) -> Fraction:
    """Coefficients of -log cos: alpha(m) = (4^m - 1)|B_2m| 4^m / (2m (2m)!)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    b = abs(bernoulli(2 * m))
    return Fraction((4**m - 1) * 4**m, 2 * m * factorial(2 * m)) * b


@lru_cache(maxsize=None)
def bell_alpha(s: int, k: int) -> Fraction:
    """Partial ordinary Bell number in the variables x_m = alpha(m+1).

    Recurrence B_{s,k} = sum_m x_m B_{s-m,k-1}; B_{0,0} = 1, B_{s,0} = 0
    for s >= 1, and B_{s,k} = 0 for k > s.
    """
    if s < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if k == 0:
        return Fraction(1 if s == 0 else 0)
    if k > s:
        return Fraction(0)
    return sum(
        (alpha(m + 1) * bell_alpha(s - m, k - 1) for m in range(1, s - k + 2)),
        Fraction(0),
    )


def bell_table(s_max: int) -> Dict[Tuple[int, int], Fraction]:
    """Dense table {(s, k): B^alpha_{s,k}} for s, k <= s_max."""
    return {
        (s, k): bell_alpha(s, k) for s in range(s_max + 1) for k in range(s + 1)
    }


@lru_cache(maxsize=None)
def c_alpha(k: int, p: int) -> Fraction:
    """C^alpha_{k,p} = (1/k!) sum_{j=k..p} (-1)^j B^alpha_{j,k} / (2p-2j+1)!."""
    if not 0 <= k <= p:
        raise ValueError("need 0 <= k <= p")
    total = sum(
        (
            Fraction((-1) ** j, factorial(2 * p - 2 * j + 1)) * bell_alpha(j, k)
            for j in range(k, p + 1)
        ),
        Fraction(0),
    )
    return total / factorial(k)


def gaussian_moment(two_k: int) -> Fraction:
    """Even Gaussian moment m_{2k} = (2k)!/(2^k k!)."""
    if two_k % 2 != 0 or two_k < 0:
        raise ValueError("argument must be an even nonnegative integer")
    k = two_k // 2
    return Fraction(factorial(2 * k), 2**k * factorial(k))


@lru_cache(maxsize=None)
def h_poly(j: int) -> Poly1:
    """The degree 2j+1 polynomial h_j(lambda) of the ballot-count expansion."""
    if j < 0:
        raise ValueError("j must be >= 0")
    lam1 = Poly1([1, 1])  # lambda + 1
    total = Poly1()
    for p in range(j + 1):
        for k in range(p + 1):
            coef = (
                Fraction((-1) ** k, factorial(2 * (j - p) + 1))
                * c_alpha(k, p)
                * gaussian_moment(2 * (k + j + 1))
            )
            total = total + lam1 ** (2 * (j - p) + 1) * coef
    return total


@lru_cache(maxsize=None)
def v_diag(p: int) -> Poly2:
    """Diagonal-walk expansion polynomial: sum_k h_k(i) h_{p-k}(j)."""
    if p < 0:
        raise ValueError("p must be >= 0")
    total = Poly2.zero()
    for k in range(p + 1):
        total = total + Poly2.from_poly1(h_poly(k), 0) * Poly2.from_poly1(
            h_poly(p - k), 1
        )
    return total


def laplacian_1d(p: Poly1) -> Poly1:
    """One-dimensional discrete Laplacian (f(l+1) + f(l-1))/2 - f(l)."""
    up = p(Poly1([1, 1]))
    down = p(Poly1([-1, 1]))
    if isinstance(up, Fraction):
        up = Poly1([up])
    if isinstance(down, Fraction):
        down = Poly1([down])
    return (up + down) * Fraction(1, 2) - p


# ---------------------------------------------------------------------------
# expansion fitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionModel:
    """Reference normalization of a built-in model's excursion expansion.

    Counts along the admissible class behave like
        prefactor * gamma^n * sum_p v_p(i,j) / (n/scale)^(alpha0+p),
    with the polynomials v_p as printed in the reference normalization
    (scale 2 for the simple walk, 3 for the tandem walk, 1 for diagonal).

    Fitting assumes this integer exponent ladder alpha0 + N.  Wedges with
    incommensurable angular data produce non-integer gaps, which the fitter
    deliberately does not attempt.
    """

    name: str
    gamma: Fraction
    alpha0: int
    scale: int
    prefactor: float
    prefactor_desc: str
    class_step: int


EXPANSION_MODELS: Dict[str, ExpansionModel] = {
    "simple": ExpansionModel(
        "simple", Fraction(4), 3, 2, 4.0 / math.pi, "4/pi", 2
    ),
    "diagonal": ExpansionModel(
        "diagonal", Fraction(4), 3, 1, 8.0 / math.pi, "8/pi", 2
    ),
    "tandem": ExpansionModel(
        "tandem", Fraction(3), 4, 3, math.sqrt(3.0) / (2.0 * math.pi), "sqrt(3)/(2*pi)", 3
    ),
}


def default_nodes(model_name: str, i: int, j: int, terms: int, n_max: int) -> List[int]:
    """The `terms` largest admissible n <= n_max for the target point."""
    nodes = []
    n = n_max
    while n >= 0 and len(nodes) < terms:
        if admissible(model_name, i, j, n):
            nodes.append(n)
        n -= 1
    if len(nodes) < terms:
        raise ValueError("not enough admissible nodes below n_max")
    return sorted(nodes)


@dataclass
class ExpansionFit:
    """Result of an exact expansion fit at one lattice point."""

    model: str
    target: Tuple[int, int]
    nodes: List[int]
    alpha0: int
    scale: int
    prefactor: float
    prefactor_desc: str
    coeffs_exact: List[Fraction]
    coeffs: List[float] = field(default_factory=list)  # prefactor divided out
    window2_nodes: List[int] = field(default_factory=list)
    drift: List[float] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "model": self.model,
            "target": list(self.target),
            "nodes": self.nodes,
            "alpha0": self.alpha0,
            "scale": self.scale,
            "prefactor": self.prefactor_desc,
            "coefficients_exact": [rat_to_str(c) for c in self.coeffs_exact],
            "coefficients": self.coeffs,
            "window2_nodes": self.window2_nodes,
            "drift": self.drift,
        }


def _solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    """Gaussian elimination over Fraction; raises on a singular system."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular fit system")
        m[c], m[piv] = m[piv], m[c]
        pivval = m[c][c]
        m[c] = [v / pivval for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def _fit_window(
    counts: Callable[[int], object],
    gamma: Fraction,
    alpha0: int,
    scale: int,
    nodes: Sequence[int],
) -> List[Fraction]:
    rows, rhs = [], []
    k = len(nodes)
    for n in nodes:
        ns = Fraction(n, scale)
        r = Fraction(counts(n)) * ns**alpha0 / gamma**n
        rows.append([ns**-p for p in range(k)])
        rhs.append(r)
    return _solve_exact(rows, rhs)


def fit_expansion(
    counts: Callable[[int], object],
    *,
    model: str,
    target: Tuple[int, int],
    gamma: Fraction,
    alpha0: int,
    scale: int,
    prefactor: float,
    prefactor_desc: str,
    nodes: Sequence[int],
    class_step: int,
    second_window: Sequence[int] | None = None,
) -> ExpansionFit:
    """Solve the truncated expansion exactly on the given nodes.

    Forms r_n = q(n) * (n/scale)^alpha0 / gamma^n as exact rationals and
    solves sum_{p<k} v_p (n/scale)^{-p} = r_n.  The transcendental
    prefactor is divided out only in the float rendering; the exact
    coefficients still carry it.  A second (lower) node window is fitted
    for a stability diagnostic.
    """
    i, j = target
    nodes = list(nodes)
    if len(set(nodes)) != len(nodes):
        raise ValueError("duplicate fit nodes")
    if sorted(nodes) != nodes:
        nodes = sorted(nodes)
    for n in nodes:
        if not admissible(model, i, j, n):
            raise ValueError(
                f"node {n} is off the admissible congruence class of {target}"
            )
    k = len(nodes)
    sol = _fit_window(counts, gamma, alpha0, scale, nodes)
    if second_window is None:
        shift = class_step * (k + 1)
        second_window = [n - shift for n in nodes]
    second_window = sorted(second_window)
    if min(second_window) <= 0:
        raise ValueError("second stability window would need nonpositive n")
    sol2 = _fit_window(counts, gamma, alpha0, scale, second_window)
    coeffs = [float(c) / prefactor for c in sol]
    coeffs2 = [float(c) / prefactor for c in sol2]
    drift = [
        abs(a - b) / max(abs(a), 1.0) for a, b in zip(coeffs, coeffs2)
    ]
    return ExpansionFit(
        model=model,
        target=(i, j),
        nodes=nodes,
        alpha0=alpha0,
        scale=scale,
        prefactor=prefactor,
        prefactor_desc=prefactor_desc,
        coeffs_exact=sol,
        coeffs=coeffs,
        window2_nodes=list(second_window),
        drift=drift,
    )


def fit_model_expansion(
    model_name: str,
    target: Tuple[int, int],
    terms: int,
    n_max: int,
    counts: Callable[[int], object] | None = None,
) -> ExpansionFit:
    """Fit a built-in model's expansion from its closed-form counts."""
    spec = EXPANSION_MODELS[model_name]
    i, j = target
    if counts is None:
        closed = closed_form_for(model_name)
        counts = lambda n: closed(i, j, n)  # noqa: E731
    nodes = default_nodes(model_name, i, j, terms, n_max)
    return fit_expansion(
        counts,
        model=model_name,
        target=target,
        gamma=spec.gamma,
        alpha0=spec.alpha0,
        scale=spec.scale,
        prefactor=spec.prefactor,
        prefactor_desc=spec.prefactor_desc,
        nodes=nodes,
        class_step=spec.class_step,
    )
