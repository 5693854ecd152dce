"""Exact arithmetic in Q(i).

A GaussianRational is re + im*i with re, im exact rationals (gmpy2.mpq).
Instances are immutable and hashable; arithmetic never leaves Q(i) and
never touches floating point.  Mixed operations accept int and mpq on
either side.
"""

from gmpy2 import mpq

__all__ = ["GaussianRational", "GQ_ZERO", "GQ_ONE", "GQ_I", "as_mpq"]


def as_mpq(x):
    """Coerce int / mpq / Fraction-like to mpq, rejecting floats."""
    if isinstance(x, float):
        raise TypeError("floating point is not allowed in exact arithmetic")
    return mpq(x)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_mpq(re))
        object.__setattr__(self, "im", as_mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- coercion ---------------------------------------------------------

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussianRational):
            return x
        return cls(as_mpq(x))

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.re and not self.im

    def is_one(self):
        return self.re == 1 and not self.im

    def is_rational(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """re^2 + im^2, an exact rational; zero iff self is zero."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("exponent must be an int")
        if k < 0:
            return self.inverse() ** (-k)
        out = GQ_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def key(self):
        """Total-order key: (re, im) compared by rational value."""
        return (self.re, self.im)

    # -- display ------------------------------------------------------------

    def __str__(self):
        from .literals import format_gaussian

        return format_gaussian(self)

    def __repr__(self):
        return "GaussianRational(%s)" % self


GQ_ZERO = GaussianRational(0)
GQ_ONE = GaussianRational(1)
GQ_I = GaussianRational(0, 1)
