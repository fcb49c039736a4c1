"""Exact polynomial arithmetic over the rationals.

Coefficients are `fractions.Fraction` throughout; nothing in this module
ever touches floating point.  Univariate polynomials (`Poly1`) carry the
rational-function and quadratic-extension layers; bivariate polynomials
(`Poly2`) carry lattice harmonic functions, kernels and generating-function
numerators/denominators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple

Rat = Fraction

__all__ = [
    "Rat",
    "as_fraction",
    "rat_from_str",
    "rat_to_str",
    "Poly1",
    "Poly2",
]


def as_fraction(value) -> Fraction:
    """Coerce int / str / Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_from_str(s: str) -> Fraction:
    """Parse a "num/den" (or plain integer) string."""
    return Fraction(s.strip())


def rat_to_str(q: Fraction) -> str:
    """Serialize as "num/den", omitting the denominator when it is 1."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Poly1:
    """Univariate polynomial with Fraction coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *args):
        raise AttributeError("Poly1 is immutable")

    @classmethod
    def const(cls, c) -> "Poly1":
        return cls([as_fraction(c)])

    @classmethod
    def x(cls) -> "Poly1":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Poly1":
        if isinstance(other, Poly1):
            return other
        return Poly1([as_fraction(other)])

    def __add__(self, other):
        if not isinstance(other, (Poly1, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly1([self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly1([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (Poly1, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Poly1, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        if self.is_zero or o.is_zero:
            return Poly1()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly1(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly1([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly1"):
        o = self._coerce(other)
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(o.coeffs) + 1)
        olc = o.leading()
        while len(rem) >= len(o.coeffs):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(o.coeffs):
                break
            shift = len(rem) - len(o.coeffs)
            f = rem[-1] / olc
            q[shift] = f
            for i, b in enumerate(o.coeffs):
                rem[shift + i] -= f * b
            rem.pop()
        return Poly1(q), Poly1(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other: "Poly1") -> "Poly1":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, self._coerce(other)
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a.monic()

    def monic(self) -> "Poly1":
        if self.is_zero:
            return self
        lc = self.leading()
        return Poly1([c / lc for c in self.coeffs])

    def derivative(self) -> "Poly1":
        return Poly1([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        """Horner evaluation; works on anything supporting + and *.

        Fractions, floats, complexes, Poly1, RatFun1 and QuadExt all
        qualify, which makes composition come for free.
        """
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        if acc is None:
            return self._eval_zero(value)
        return acc

    @staticmethod
    def _eval_zero(value):
        # zero polynomial: return an additive zero of the right flavour
        if isinstance(value, (int, Fraction)):
            return Fraction(0)
        if isinstance(value, (float, complex)):
            return type(value)(0)
        return value * 0

    # -- misc -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly1([other])
        if not isinstance(other, Poly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly1", self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(rat_to_str(c))
            else:
                var = "t" if k == 1 else f"t^{k}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{rat_to_str(c)}*{var}")
        return " + ".join(parts).replace("+ -", "- ")


class Poly2:
    """Bivariate polynomial: sparse map (a, b) -> Fraction, zero-free."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Tuple[int, int], object] = ()):
        data = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for (a, b), c in items:
            c = as_fraction(c)
            if c:
                key = (int(a), int(b))
                if key[0] < 0 or key[1] < 0:
                    raise ValueError("Poly2 exponents must be nonnegative")
                data[key] = data.get(key, Fraction(0)) + c
        object.__setattr__(
            self, "coeffs", {k: v for k, v in data.items() if v}
        )

    def __setattr__(self, *args):
        raise AttributeError("Poly2 is immutable")

    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): as_fraction(c)})

    @classmethod
    def x(cls) -> "Poly2":
        """The first variable (i in discrete contexts, x in continuous)."""
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "Poly2":
        """The second variable (j in discrete contexts, y in continuous)."""
        return cls({(0, 1): 1})

    @classmethod
    def from_poly1(cls, p: Poly1, var: int) -> "Poly2":
        """Embed a univariate polynomial as a Poly2 in variable 0 or 1."""
        if var not in (0, 1):
            raise ValueError("var must be 0 or 1")
        return cls(
            {((k, 0) if var == 0 else (0, k)): c for k, c in enumerate(p.coeffs)}
        )

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, a: int, b: int) -> Fraction:
        return self.coeffs.get((a, b), Fraction(0))

    def monomials(self) -> Iterator[Tuple[Tuple[int, int], Fraction]]:
        return iter(sorted(self.coeffs.items()))

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(a + b for a, b in self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Poly2":
        if isinstance(other, Poly2):
            return other
        return Poly2.const(other)

    def __add__(self, other):
        if not isinstance(other, (Poly2, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, (Poly2, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Poly2, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        out = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in o.coeffs.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return Poly2(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly2.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly2":
        c = as_fraction(c)
        if not c:
            return Poly2()
        return Poly2({k: v * c for k, v in self.coeffs.items()})

    # -- evaluation / calculus -------------------------------------------

    def eval(self, i, j) -> Fraction:
        """Exact evaluation at a rational point."""
        i = as_fraction(i)
        j = as_fraction(j)
        total = Fraction(0)
        for (a, b), c in self.coeffs.items():
            total += c * i**a * j**b
        return total

    def __call__(self, i, j):
        """Generic evaluation (floats, complexes, polynomials...)."""
        total = None
        for (a, b), c in sorted(self.coeffs.items()):
            term = c * i**a * j**b
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def shift(self, di, dj) -> "Poly2":
        """Return p(x + di, y + dj), exactly."""
        di = as_fraction(di)
        dj = as_fraction(dj)
        out = {}
        binom_cache = {}

        def binom_row(n):
            if n not in binom_cache:
                row = [1]
                for _ in range(n):
                    row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
                binom_cache[n] = row
            return binom_cache[n]

        for (a, b), c in self.coeffs.items():
            row_a = binom_row(a)
            row_b = binom_row(b)
            for p in range(a + 1):
                ca = row_a[p] * di ** (a - p)
                if not ca:
                    continue
                for q in range(b + 1):
                    cb = row_b[q] * dj ** (b - q)
                    if not cb:
                        continue
                    k = (p, q)
                    out[k] = out.get(k, Fraction(0)) + c * ca * cb
        return Poly2(out)

    def dx(self) -> "Poly2":
        return Poly2(
            {(a - 1, b): a * c for (a, b), c in self.coeffs.items() if a > 0}
        )

    def dy(self) -> "Poly2":
        return Poly2(
            {(a, b - 1): b * c for (a, b), c in self.coeffs.items() if b > 0}
        )

    def truncate_total(self, order: int) -> "Poly2":
        """Drop all monomials of total degree > order."""
        return Poly2({k: v for k, v in self.coeffs.items() if k[0] + k[1] <= order})

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> list:
        return [
            {"a": a, "b": b, "c": rat_to_str(c)}
            for (a, b), c in sorted(self.coeffs.items())
        ]

    @classmethod
    def from_json_obj(cls, obj: list) -> "Poly2":
        return cls({(int(e["a"]), int(e["b"])): rat_from_str(e["c"]) for e in obj})

    # -- misc -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly2", tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b), c in sorted(self.coeffs.items()):
            mono = ""
            if a:
                mono += "x" if a == 1 else f"x^{a}"
            if b:
                mono += ("*" if mono else "") + ("y" if b == 1 else f"y^{b}")
            cstr = rat_to_str(c)
            if mono:
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{cstr}*{mono}")
            else:
                parts.append(cstr)
        return " + ".join(parts).replace("+ -", "- ")
