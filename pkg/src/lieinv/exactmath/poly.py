"""Dense univariate polynomials over a field tower.

Poly stores ascending Scalar coefficients, trimmed of trailing zeros; the
zero polynomial has an empty coefficient tuple and degree -1.  The
indeterminate is always displayed as x (it is the twist parameter of the
cocycle systems).  All arithmetic is exact; division is only defined when
the divisor's leading coefficient is invertible in the tower.
"""

from .tower import BASE, Scalar, common_tower

__all__ = ["Poly"]


class Poly:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        cs = [tower.scalar(c) for c in coeffs]
        n = len(cs)
        while n and cs[n - 1].is_zero():
            n -= 1
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "coeffs", tuple(cs[:n]))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(tower=BASE):
        return Poly(tower, ())

    @staticmethod
    def one(tower=BASE):
        return Poly(tower, (1,))

    @staticmethod
    def x(tower=BASE):
        return Poly(tower, (0, 1))

    @staticmethod
    def constant(s):
        if not isinstance(s, Scalar):
            s = BASE.scalar(s)
        return Poly(s.tower, (s,))

    @staticmethod
    def from_roots(roots):
        """Monic polynomial with the given Scalar roots."""
        if not roots:
            return Poly.one()
        t = roots[0].tower
        for r in roots[1:]:
            t = common_tower(t, r.tower)
        p = Poly.one(t)
        for r in roots:
            p = p * Poly(t, (-r, 1))
        return p

    # -- basic queries -----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def __bool__(self):
        return bool(self.coeffs)

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else self.tower.zero()

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.tower.zero()

    def __iter__(self):
        # explicit iterator: the zero-padding __getitem__ above must not
        # feed Python's sequence-protocol fallback (it never ends)
        return iter(self.coeffs)

    # -- coercion helpers ----------------------------------------------------

    def _pair(self, other):
        if isinstance(other, Poly):
            t = common_tower(self.tower, other.tower)
            a = self if self.tower == t else Poly(t, self.coeffs)
            b = other if other.tower == t else Poly(t, other.coeffs)
            return a, b
        if isinstance(other, Scalar):
            t = common_tower(self.tower, other.tower)
            a = self if self.tower == t else Poly(t, self.coeffs)
            return a, Poly(t, (other,))
        if isinstance(other, int):
            return self, Poly(self.tower, (other,))
        return None, None

    def lift(self, tower):
        if self.tower == tower:
            return self
        return Poly(tower, self.coeffs)

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        return Poly(a.tower, [a[k] + b[k] for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        return Poly(a.tower, [a[k] - b[k] for k in range(n)])

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return Poly(self.tower, [-c for c in self.coeffs])

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.is_zero() or b.is_zero():
            return Poly.zero(a.tower)
        out = [a.tower.zero()] * (len(a.coeffs) + len(b.coeffs) - 1)
        for j, cj in enumerate(a.coeffs):
            if not cj:
                continue
            for k, ck in enumerate(b.coeffs):
                if ck:
                    out[j + k] = out[j + k] + cj * ck
        return Poly(a.tower, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by an invertible constant (Scalar or degree-0 Poly)."""
        if isinstance(other, Poly):
            if not other.is_constant():
                raise ValueError("polynomial division: divisor must be constant")
            other = other.constant_term()
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        inv = b.constant_term().inverse()
        return Poly(a.tower, [c * inv for c in a.coeffs])

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise TypeError("exponent must be a nonnegative int")
        out = Poly.one(self.tower)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other):
        a, b = self._pair(other)
        if a is None or b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = b.leading().inverse()
        quo = [a.tower.zero()] * max(0, len(a.coeffs) - len(b.coeffs) + 1)
        rem = list(a.coeffs)
        while len(rem) >= len(b.coeffs):
            while rem and rem[-1].is_zero():
                rem.pop()
            if len(rem) < len(b.coeffs):
                break
            k = len(rem) - len(b.coeffs)
            c = rem[-1] * lead_inv
            quo[k] = c
            for j, bj in enumerate(b.coeffs):
                rem[k + j] = rem[k + j] - c * bj
            rem.pop()
        return Poly(a.tower, quo), Poly(a.tower, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    # -- field-flavoured helpers -----------------------------------------------

    def monic(self):
        if self.is_zero():
            return self
        return self / self.leading()

    def gcd(self, other):
        """Monic gcd over the tower (field arithmetic)."""
        a, b = self._pair(other)
        if a is None:
            raise TypeError("gcd with incompatible operand")
        while b:
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        return Poly(self.tower, [self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def squarefree_part(self):
        """Monic product of distinct irreducible factors; constants map to 1."""
        if self.is_zero():
            raise ValueError("squarefree part of the zero polynomial")
        if self.is_constant():
            return Poly.one(self.tower)
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def eval(self, point):
        """Horner evaluation at a Scalar (or int / rational)."""
        if not isinstance(point, Scalar):
            point = self.tower.scalar(point)
        t = common_tower(self.tower, point.tower)
        point = t.scalar(point)
        acc = t.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + t.scalar(c)
        return acc

    # -- comparison / ordering ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (Poly, Scalar, int)):
            a, b = self._pair(other)
            if a is None:
                return NotImplemented
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.tower, self.coeffs))

    def key(self):
        """Deterministic total order: degree, then coefficient keys ascending."""
        return (len(self.coeffs), tuple(c.key() for c in self.coeffs))

    # -- display ----------------------------------------------------------------

    def __str__(self):
        from .literals import format_poly

        return format_poly(self)

    def __repr__(self):
        return "Poly(%s)" % self
