"""Rational functions over Q and the quadratic extension Q(y)[sqrt(delta)].

`RatFun1` is a normalized quotient of univariate polynomials (gcd 1, monic
denominator), so equality is structural.  `QuadExt` represents a + b*sqrt(delta)
with RatFun1 components and an explicit shared radicand; elements with
different radicands never mix.
"""

from __future__ import annotations

from fractions import Fraction

from .polynomials import Poly1, as_fraction

__all__ = ["RatFun1", "QuadExt", "DeltaMismatchError", "PoleError", "compose_ratfun"]


class DeltaMismatchError(ValueError):
    """Raised when combining extension elements over different radicands."""


class PoleError(ZeroDivisionError):
    """Raised when a composed denominator vanishes identically."""


def _as_poly1(v) -> Poly1:
    if isinstance(v, Poly1):
        return v
    return Poly1([as_fraction(v)])


class RatFun1:
    """Univariate rational function num/den in normalized form."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = _as_poly1(num)
        den = _as_poly1(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = Poly1([1])
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.leading()
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("RatFun1 is immutable")

    @classmethod
    def x(cls) -> "RatFun1":
        return cls(Poly1.x())

    @classmethod
    def const(cls, c) -> "RatFun1":
        return cls(Poly1.const(c))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def _coerce(self, other) -> "RatFun1":
        if isinstance(other, RatFun1):
            return other
        if isinstance(other, (int, Fraction, Poly1)):
            return RatFun1(_as_poly1(other))
        raise TypeError(f"cannot coerce {other!r} to RatFun1")

    def __add__(self, other):
        if not isinstance(other, (RatFun1, Poly1, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return RatFun1(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun1(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, (RatFun1, Poly1, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (RatFun1, Poly1, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return RatFun1(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (RatFun1, Poly1, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        if o.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun1(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFun1(self.den, self.num) ** (-k)
        return RatFun1(self.num**k, self.den**k)

    def derivative(self) -> "RatFun1":
        return RatFun1(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose(self, inner: "RatFun1") -> "RatFun1":
        """self(inner), exactly."""
        num = self.num(inner)
        den = self.den(inner)
        if isinstance(num, (int, Fraction)):
            num = RatFun1.const(num)
        if isinstance(den, (int, Fraction)):
            den = RatFun1.const(den)
        if den.is_zero:
            raise PoleError("composition lands identically on a pole")
        return num / den

    def __call__(self, value):
        """Evaluate at a scalar (Fraction, float or complex)."""
        if isinstance(value, RatFun1):
            return self.compose(value)
        n = self.num(value)
        d = self.den(value)
        if d == 0:
            raise ZeroDivisionError(f"pole at {value!r}")
        return n / d

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly1)):
            other = RatFun1(_as_poly1(other))
        if not isinstance(other, RatFun1):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFun1", self.num, self.den))

    def __repr__(self):
        if self.den == Poly1([1]):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


class QuadExt:
    """Element a + b*sqrt(delta) of the quadratic extension of Q(y)."""

    __slots__ = ("a", "b", "delta")

    def __init__(self, a, b, delta: Poly1):
        if not isinstance(delta, Poly1):
            raise TypeError("delta must be a Poly1 radicand")
        a = a if isinstance(a, RatFun1) else RatFun1(_as_poly1(a))
        b = b if isinstance(b, RatFun1) else RatFun1(_as_poly1(b))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "delta", delta)

    def __setattr__(self, *args):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt_delta(cls, delta: Poly1) -> "QuadExt":
        return cls(RatFun1(0), RatFun1(1), delta)

    @classmethod
    def rational(cls, value, delta: Poly1) -> "QuadExt":
        return cls(value if isinstance(value, RatFun1) else RatFun1(_as_poly1(value)),
                   RatFun1(0), delta)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.delta != self.delta:
                raise DeltaMismatchError(
                    "cannot combine extension elements with different radicands"
                )
            return other
        if isinstance(other, (RatFun1, Poly1, int, Fraction)):
            return QuadExt.rational(other, self.delta)
        raise TypeError(f"cannot coerce {other!r} into the extension")

    @property
    def is_rational(self) -> bool:
        return self.b.is_zero

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    def rational_part(self) -> RatFun1:
        """The a-component, asserting the element lies in the base field."""
        if not self.is_rational:
            raise ValueError("element has a nonzero sqrt component")
        return self.a

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.delta)

    def norm(self) -> RatFun1:
        """Field norm a^2 - b^2 * delta (a rational function)."""
        return self.a * self.a - self.b * self.b * RatFun1(self.delta)

    def __add__(self, other):
        if not isinstance(other, (QuadExt, RatFun1, Poly1, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self.delta)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.delta)

    def __sub__(self, other):
        if not isinstance(other, (QuadExt, RatFun1, Poly1, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (QuadExt, RatFun1, Poly1, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        d = RatFun1(self.delta)
        return QuadExt(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            self.delta,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (QuadExt, RatFun1, Poly1, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        nrm = o.norm()
        if nrm.is_zero:
            raise ZeroDivisionError("division by a zero-norm extension element")
        inv = QuadExt(o.a / nrm, -o.b / nrm, self.delta)
        return self * inv

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (RatFun1, Poly1, int, Fraction)):
            other = QuadExt.rational(other, self.delta)
        if not isinstance(other, QuadExt):
            return NotImplemented
        return (
            self.delta == other.delta and self.a == other.a and self.b == other.b
        )

    def __hash__(self):
        return hash(("QuadExt", self.a, self.b, self.delta))

    def __repr__(self):
        return f"({self.a!r}) + ({self.b!r})*sqrt({self.delta!r})"


def compose_ratfun(f: RatFun1, u: QuadExt) -> QuadExt:
    """Evaluate a rational function at an extension element, exactly.

    Raises PoleError when the composed denominator has zero norm (i.e. f has
    a pole along u identically).
    """
    num = f.num(u) if not f.num.is_zero else QuadExt.rational(0, u.delta)
    den = f.den(u)
    if isinstance(num, (int, Fraction)):
        num = QuadExt.rational(num, u.delta)
    if isinstance(den, (int, Fraction)):
        den = QuadExt.rational(den, u.delta)
    if den.norm().is_zero:
        raise PoleError("denominator vanishes identically along the composition")
    return num / den
