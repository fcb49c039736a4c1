"""Small-step quarter-plane walk models and their discrete Laplacians.

The Markov operator P averages a function over the step set with its
transition weights; L = P - I.  On polynomials both act as free-space
operators (no boundary indicator); the Dirichlet cutoff version lives in
`check_harmonic_grid`, which tests the mean-value identity on a finite grid
with the walk killed outside the quadrant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .polynomials import Poly2, as_fraction, rat_from_str, rat_to_str

__all__ = [
    "StepModel",
    "SIMPLE",
    "DIAGONAL",
    "TANDEM",
    "MODELS",
    "get_model",
    "load_model",
    "apply_P",
    "apply_L",
    "polyharmonic_order",
    "GridFunction",
    "GridTooSmallError",
    "check_harmonic_grid",
]

Step = Tuple[int, int]

# ring of the eight neighbours, in the order used by the degeneracy condition
_NEIGHBOUR_RING: Tuple[Step, ...] = (
    (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1),
)


@dataclass(frozen=True)
class StepModel:
    """A homogeneous small-step walk model with rational weights."""

    name: str
    steps: Tuple[Step, ...]
    weights: Tuple[Fraction, ...]
    gamma: Fraction

    def __post_init__(self):
        if len(self.steps) != len(set(self.steps)):
            raise ValueError("duplicate steps")
        if len(self.steps) != len(self.weights):
            raise ValueError("steps and weights length mismatch")
        for (dx, dy) in self.steps:
            if (dx, dy) == (0, 0) or abs(dx) > 1 or abs(dy) > 1:
                raise ValueError(f"step {(dx, dy)} is not a small step")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if sum(self.weights, Fraction(0)) != 1:
            raise ValueError("weights must sum to 1")
        ring = [self.weight(s) for s in _NEIGHBOUR_RING]
        run = 0
        # cyclic scan: three consecutive zero weights means a degenerate model
        for w in ring + ring[:2]:
            run = run + 1 if w == 0 else 0
            if run >= 3:
                raise ValueError(
                    "degenerate step set: three consecutive zero weights "
                    "on the neighbour ring"
                )
        drift_x = sum(Fraction(dx) * w for (dx, _), w in zip(self.steps, self.weights))
        drift_y = sum(Fraction(dy) * w for (_, dy), w in zip(self.steps, self.weights))
        if drift_x != 0 or drift_y != 0:
            raise ValueError("model has nonzero drift; only driftless walks are supported")

    def weight(self, step: Step) -> Fraction:
        for s, w in zip(self.steps, self.weights):
            if s == step:
                return w
        return Fraction(0)

    def max_positive_shift(self) -> Tuple[int, int]:
        """Largest positive displacement per axis (for grid checkability)."""
        return (
            max((dx for dx, _ in self.steps if dx > 0), default=0),
            max((dy for _, dy in self.steps if dy > 0), default=0),
        )

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "steps": [list(s) for s in self.steps],
            "weights": [rat_to_str(w) for w in self.weights],
            "gamma": rat_to_str(self.gamma),
        }


def _uniform(name: str, steps: Sequence[Step]) -> StepModel:
    n = len(steps)
    return StepModel(
        name=name,
        steps=tuple(steps),
        weights=tuple(Fraction(1, n) for _ in steps),
        gamma=Fraction(n),
    )


SIMPLE = _uniform("simple", [(1, 0), (-1, 0), (0, 1), (0, -1)])
DIAGONAL = _uniform("diagonal", [(1, 1), (-1, 1), (1, -1), (-1, -1)])
TANDEM = _uniform("tandem", [(-1, 1), (1, 0), (0, -1)])

MODELS: Dict[str, StepModel] = {m.name: m for m in (SIMPLE, DIAGONAL, TANDEM)}


def get_model(name: str) -> StepModel:
    try:
        return MODELS[name]
    except KeyError:
        raise KeyError(
            f"unknown model {name!r}; built-ins: {', '.join(sorted(MODELS))}"
        ) from None


def load_model(source) -> StepModel:
    """Load a custom model from a JSON file path or an already-parsed dict.

    Schema: {"name": str, "steps": [[dx, dy], ...], "weights": ["1/4", ...],
    "gamma": "4"}.  Validation (small steps, degeneracy, zero drift) happens
    in the StepModel constructor.
    """
    if isinstance(source, dict):
        obj = source
    else:
        with open(source, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    return StepModel(
        name=str(obj["name"]),
        steps=tuple((int(dx), int(dy)) for dx, dy in obj["steps"]),
        weights=tuple(rat_from_str(w) for w in obj["weights"]),
        gamma=rat_from_str(str(obj["gamma"])),
    )


def apply_P(model: StepModel, f: Poly2) -> Poly2:
    """Markov operator: sum of w_s * f(x + dx, y + dy), exact."""
    total = Poly2.zero()
    for (dx, dy), w in zip(model.steps, model.weights):
        total = total + f.shift(dx, dy).scale(w)
    return total


def apply_L(model: StepModel, f: Poly2) -> Poly2:
    """Discrete Laplacian L = P - I on polynomials (free space)."""
    return apply_P(model, f) - f


def polyharmonic_order(model: StepModel, f: Poly2, cap: int | None = None):
    """Smallest p <= cap with L^p f = 0 exactly, or None.

    The default cap ceil((deg f + 1)/2) + 1 always terminates for zero-drift
    models, where L drops polynomial degree by at least 2.
    """
    if f.is_zero:
        return 0
    if cap is None:
        cap = (f.degree + 1 + 1) // 2 + 1
    if cap < 1:
        raise ValueError("cap must be >= 1")
    g = f
    for p in range(1, cap + 1):
        g = apply_L(model, g)
        if g.is_zero:
            return p
    return None


class GridFunction:
    """Dense rational-valued function on [0, imax] x [0, jmax].

    Values outside the quadrant are 0 by convention; values beyond the box
    are unknown (not zero), which is what limits checkability.
    """

    def __init__(self, imax: int, jmax: int, values: List[List[Fraction]]):
        if imax < 0 or jmax < 0:
            raise ValueError("box dimensions must be >= 1")
        if len(values) != imax + 1 or any(len(row) != jmax + 1 for row in values):
            raise ValueError("values shape does not match the box")
        self.imax = imax
        self.jmax = jmax
        self.values = [[as_fraction(v) for v in row] for row in values]

    @classmethod
    def from_poly(cls, p: Poly2, imax: int, jmax: int) -> "GridFunction":
        return cls(
            imax,
            jmax,
            [[p.eval(i, j) for j in range(jmax + 1)] for i in range(imax + 1)],
        )

    @classmethod
    def from_func(cls, fn, imax: int, jmax: int) -> "GridFunction":
        return cls(
            imax,
            jmax,
            [[as_fraction(fn(i, j)) for j in range(jmax + 1)] for i in range(imax + 1)],
        )

    def value(self, i: int, j: int) -> Fraction:
        if i < 0 or j < 0:
            return Fraction(0)  # Dirichlet zero outside the quadrant
        if i > self.imax or j > self.jmax:
            raise IndexError(f"cell ({i}, {j}) is outside the stored box")
        return self.values[i][j]


class GridTooSmallError(ValueError):
    def __init__(self, cells):
        self.cells = cells
        super().__init__(f"grid too small; uncheckable cells: {cells}")


def check_harmonic_grid(model: StepModel, grid: GridFunction, cells=None):
    """List all checkable cells violating the killed mean-value identity.

    A cell (i, j) satisfies the identity when g(i,j) equals
    (1/gamma) * sum over steps of g((i,j)+s) with g extended by zero outside
    the quadrant.  Cells whose in-quadrant successors leave the stored box
    cannot be tested; requesting them raises GridTooSmallError.
    """
    sx, sy = model.max_positive_shift()
    ilim = grid.imax - sx
    jlim = grid.jmax - sy
    if cells is None:
        if ilim < 0 or jlim < 0:
            raise GridTooSmallError([(0, 0)])
        cells = [(i, j) for i in range(ilim + 1) for j in range(jlim + 1)]
    else:
        bad = [c for c in cells if c[0] > ilim or c[1] > jlim or c[0] < 0 or c[1] < 0]
        if bad:
            raise GridTooSmallError(bad)
    violations = []
    for (i, j) in cells:
        acc = Fraction(0)
        for (dx, dy), w in zip(model.steps, model.weights):
            ni, nj = i + dx, j + dy
            if ni >= 0 and nj >= 0:
                acc += w * grid.value(ni, nj)
        if grid.value(i, j) != acc:
            violations.append((i, j, grid.value(i, j), acc))
    return violations
