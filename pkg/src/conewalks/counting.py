"""Exact excursion counting in the quarter plane.

`count_dp` runs the step recursion for the number of n-step paths from
(i, j) to the origin staying in the quadrant, with unit step weights.
The closed forms for the three built-in models (and the one-dimensional
ballot count they decouple into) evaluate through exact big-integer
factorials, cheap enough for the expansion fitter at n around 2000.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, List, Tuple

from .lattice import StepModel

__all__ = [
    "CountTable",
    "count_dp",
    "closed_simple",
    "closed_diagonal",
    "closed_tandem",
    "closed_dyck",
    "closed_form_for",
    "admissible",
]


@dataclass(frozen=True)
class CountTable:
    """Excursion counts q((i,j), (0,0); n) for one fixed length n."""

    model: str
    n: int
    values: Dict[Tuple[int, int], int]

    def value(self, i: int, j: int) -> int:
        return self.values.get((i, j), 0)


def count_dp(model: StepModel, n_max: int) -> List[CountTable]:
    """Tables of q((i,j),(0,0); n) for n = 0..n_max by the step recursion.

    q(x,0; n+1) = sum over steps s of q(x+s, 0; n) restricted to the
    quadrant, q(x,0;0) = 1{x = 0}.  Unit weights: these are counts, not
    probabilities.  Only two consecutive layers are alive at any time.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    size = n_max + 2  # support of layer n lies inside [0, n]^2
    layer = [[0] * size for _ in range(size)]
    layer[0][0] = 1
    tables = [CountTable(model.name, 0, {(0, 0): 1})]
    for n in range(1, n_max + 1):
        nxt = [[0] * size for _ in range(size)]
        vals: Dict[Tuple[int, int], int] = {}
        for i in range(min(n, size - 1) + 1):
            for j in range(min(n, size - 1) + 1):
                acc = 0
                for (dx, dy) in model.steps:
                    ni, nj = i + dx, j + dy
                    if 0 <= ni < size and 0 <= nj < size:
                        acc += layer[ni][nj]
                if acc:
                    nxt[i][j] = acc
                    vals[(i, j)] = acc
        layer = nxt
        tables.append(CountTable(model.name, n, vals))
    return tables


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return factorial(n)


def closed_simple(i: int, j: int, n: int) -> int:
    """Quadrant excursion count for the simple walk; 0 off the parity class."""
    if i < 0 or j < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if (n - i - j) % 2 != 0 or n < i + j:
        return 0
    m = (n - i - j) // 2
    num = (i + 1) * (j + 1) * _fact(n) * _fact(n + 2)
    den = _fact(m) * _fact(m + i + j + 2) * _fact(m + i + 1) * _fact(m + j + 1)
    q, r = divmod(num, den)
    assert r == 0
    return q


def closed_diagonal(i: int, j: int, n: int) -> int:
    """Quadrant excursion count for the diagonal walk; needs i = j = n mod 2."""
    if i < 0 or j < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if (n - i) % 2 != 0 or (n - j) % 2 != 0 or i > n or j > n:
        return 0
    num = (i + 1) * (j + 1) * comb(n, (n + i) // 2) * comb(n, (n + j) // 2) * 4
    den = (n + i + 2) * (n + j + 2)
    q, r = divmod(num, den)
    assert r == 0
    return q


def closed_tandem(i: int, j: int, n: int) -> int:
    """Quadrant excursion count for the tandem walk; 0 unless n = 2i+j mod 3."""
    if i < 0 or j < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    r3 = n - 2 * i - j
    if r3 < 0 or r3 % 3 != 0:
        return 0
    m = r3 // 3
    num = (i + 1) * (j + 1) * (i + j + 2) * _fact(3 * m + 2 * i + j)
    den = _fact(m) * _fact(m + i + 1) * _fact(m + i + j + 2)
    q, r = divmod(num, den)
    assert r == 0
    return q


def closed_dyck(lam: int, n: int) -> int:
    """Nonnegative 1D paths 0 -> lam in n steps, by reflection."""
    if lam < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if (n - lam) % 2 != 0:
        return 0
    return comb(n, (n + lam) // 2) - comb(n, (n + lam + 2) // 2)


_CLOSED: Dict[str, Callable[[int, int, int], int]] = {
    "simple": closed_simple,
    "diagonal": closed_diagonal,
    "tandem": closed_tandem,
}


def closed_form_for(model_name: str) -> Callable[[int, int, int], int]:
    try:
        return _CLOSED[model_name]
    except KeyError:
        raise KeyError(f"no closed-form counts for model {model_name!r}") from None


def admissible(model_name: str, i: int, j: int, n: int) -> bool:
    """Whether (i, j) is reachable at step count n for a built-in model."""
    if model_name == "simple":
        return (n - i - j) % 2 == 0
    if model_name == "diagonal":
        return (n - i) % 2 == 0 and (n - j) % 2 == 0
    if model_name == "tandem":
        return (n - 2 * i - j) % 3 == 0
    raise KeyError(f"no congruence data for model {model_name!r}")
