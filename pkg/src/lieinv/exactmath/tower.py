"""Ground fields: Q(i), optionally extended by one algebraic generator.

A FieldTower is either the base field Q(i) (degree 1) or Q(i)[s]/(m(s))
for a single named generator s with a monic square-free minimal
polynomial m over Q(i).  A Scalar is an element of a tower, stored as the
coefficient vector (c_0, ..., c_{d-1}) with value sum c_k s^k.

Square-freeness of m is enforced at construction.  Irreducibility is not:
ring operations work in any tower, but inverting an element whose image
is a zero divisor raises ZeroDivisionError identifying the problem.  The
shipped catalog only uses irreducible minimal polynomials (s^2-3, s^2-7).

Scalars over the base tower coerce silently into any extension; scalars
over two distinct extensions never mix.
"""

from gmpy2 import mpq

from .gaussian import GQ_ONE, GQ_ZERO, GaussianRational

__all__ = ["FieldTower", "Scalar", "BASE"]


# -- helpers on raw GaussianRational coefficient lists (ascending) ----------


def _trim(cs):
    n = len(cs)
    while n and cs[n - 1].is_zero():
        n -= 1
    return list(cs[:n])


def _vec_divmod(num, den):
    num = _trim(num)
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = den[-1].inverse()
    quo = [GQ_ZERO] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    dd = len(den) - 1
    while len(rem) >= len(den):
        k = len(rem) - len(den)
        c = rem[-1] * lead_inv
        quo[k] = c
        for j in range(dd + 1):
            rem[k + j] = rem[k + j] - c * den[j]
        rem = _trim(rem)
        if not rem:
            break
    return quo, rem


def _vec_gcd_monic(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _vec_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _vec_derivative(a):
    return _trim([a[k] * k for k in range(1, len(a))])


class FieldTower:
    """Q(i), or Q(i) extended by one generator with a monic square-free minpoly.

    minpoly is a tuple of GaussianRational coefficients, ascending, with
    leading coefficient 1 and degree >= 2.  Towers compare by generator
    name and minpoly.
    """

    __slots__ = ("generator", "minpoly")

    def __init__(self, generator=None, minpoly=None):
        if generator is None:
            if minpoly is not None:
                raise ValueError("minpoly given without a generator name")
            object.__setattr__(self, "generator", None)
            object.__setattr__(self, "minpoly", None)
            return
        if not isinstance(generator, str) or not generator.isidentifier():
            raise ValueError("generator must be an identifier string")
        if generator in ("i", "x"):
            raise ValueError("generator name %r is reserved" % generator)
        raw = []
        for c in minpoly:
            if isinstance(c, Scalar):
                g = c.as_gaussian()
                if g is None:
                    raise ValueError("minpoly coefficients must lie in Q(i)")
                raw.append(g)
            else:
                raw.append(GaussianRational.coerce(c))
        cs = _trim(raw)
        if len(cs) < 3:
            raise ValueError("extension minpoly must have degree >= 2")
        if not cs[-1].is_one():
            raise ValueError("extension minpoly must be monic")
        g = _vec_gcd_monic(cs, _vec_derivative(cs))
        if len(g) != 1:
            raise ValueError("extension minpoly must be square-free")
        object.__setattr__(self, "generator", generator)
        object.__setattr__(self, "minpoly", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("FieldTower is immutable")

    @staticmethod
    def parse(generator, minpoly_text):
        """Tower from a minpoly literal in the generator, e.g. ("s", "s^2-7")."""
        from .literals import parse_poly

        p = parse_poly(minpoly_text, BASE, var=generator)
        return FieldTower(generator, [c.coeffs[0] for c in p.coeffs])

    def minpoly_text(self):
        if self.is_base():
            return None
        from .literals import format_poly_vec

        return format_poly_vec(self.minpoly, self.generator)

    @property
    def degree(self):
        return 1 if self.minpoly is None else len(self.minpoly) - 1

    def is_base(self):
        return self.minpoly is None

    def __eq__(self, other):
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self.generator == other.generator and self.minpoly == other.minpoly

    def __hash__(self):
        return hash((self.generator, self.minpoly))

    def __repr__(self):
        if self.is_base():
            return "FieldTower(Q(i))"
        from .literals import format_poly_vec

        return "FieldTower(Q(i)[%s]/(%s))" % (
            self.generator,
            format_poly_vec(self.minpoly, self.generator),
        )

    # reduction of a raw coefficient list modulo the minpoly
    def _reduce(self, cs):
        d = self.degree
        cs = list(cs)
        if len(cs) <= d:
            return cs + [GQ_ZERO] * (d - len(cs))
        m = self.minpoly
        for k in range(len(cs) - 1, d - 1, -1):
            c = cs[k]
            if c.is_zero():
                continue
            # s^k = s^(k-d) * (-(m_0 + ... + m_{d-1} s^{d-1}))
            for j in range(d):
                cs[k - d + j] = cs[k - d + j] - c * m[j]
            cs[k] = GQ_ZERO
        return cs[:d]

    def zero(self):
        return Scalar(self, (GQ_ZERO,) * self.degree)

    def one(self):
        return Scalar(self, (GQ_ONE,) + (GQ_ZERO,) * (self.degree - 1))

    def gen(self):
        if self.is_base():
            raise ValueError("base tower has no generator")
        cs = [GQ_ZERO] * self.degree
        cs[1] = GQ_ONE
        return Scalar(self, cs)

    def scalar(self, x):
        """Coerce int / mpq / GaussianRational / base Scalar into this tower."""
        if isinstance(x, Scalar):
            if x.tower == self:
                return x
            if x.tower.is_base():
                cs = [x.coeffs[0]] + [GQ_ZERO] * (self.degree - 1)
                return Scalar(self, cs)
            if self.is_base():
                lifted = x.as_base()
                if lifted is not None:
                    return lifted
            raise TypeError("cannot mix scalars over different extensions")
        g = GaussianRational.coerce(x)
        return Scalar(self, [g] + [GQ_ZERO] * (self.degree - 1))


BASE = FieldTower()


def common_tower(a, b):
    if a == b:
        return a
    if a.is_base():
        return b
    if b.is_base():
        return a
    raise TypeError("cannot mix scalars over different extensions")


class Scalar:
    """Element of a FieldTower; immutable, exact, hashable.

    coeffs is a tuple of GaussianRational of length tower.degree; the
    value is sum coeffs[k] * s^k.  Base-tower scalars interoperate with
    any extension; scalars over distinct extensions raise TypeError.
    """

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        coeffs = tuple(GaussianRational.coerce(c) for c in coeffs)
        if len(coeffs) != tower.degree:
            raise ValueError("coefficient vector length != tower degree")
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- coercion ----------------------------------------------------------

    @staticmethod
    def of(x, tower=BASE):
        return tower.scalar(x)

    def _pair(self, other):
        if isinstance(other, Scalar):
            t = common_tower(self.tower, other.tower)
            return t.scalar(self), t.scalar(other)
        if isinstance(other, (int, GaussianRational, type(mpq(0)))):
            return self, self.tower.scalar(other)
        return None, None

    def as_base(self):
        """This scalar as a base-tower Scalar, or None if it needs s."""
        if self.tower.is_base():
            return self
        if any(c for c in self.coeffs[1:]):
            return None
        return Scalar(BASE, (self.coeffs[0],))

    def as_gaussian(self):
        """This scalar as a GaussianRational, or None if it needs s."""
        b = self.as_base()
        return None if b is None else b.coeffs[0]

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return all(not c for c in self.coeffs)

    def is_one(self):
        return self.coeffs[0].is_one() and all(not c for c in self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    # -- field operations ------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Scalar(a.tower, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Scalar(a.tower, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return Scalar(self.tower, [-c for c in self.coeffs])

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        t = a.tower
        if t.degree == 1:
            return Scalar(t, (a.coeffs[0] * b.coeffs[0],))
        n = t.degree
        conv = [GQ_ZERO] * (2 * n - 1)
        for j, cj in enumerate(a.coeffs):
            if not cj:
                continue
            for k, ck in enumerate(b.coeffs):
                if ck:
                    conv[j + k] = conv[j + k] + cj * ck
        return Scalar(t, t._reduce(conv))

    __rmul__ = __mul__

    def inverse(self):
        t = self.tower
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        if t.degree == 1:
            return Scalar(t, (self.coeffs[0].inverse(),))
        # extended Euclid for gcd(self, minpoly) over Q(i)[s]
        r0, r1 = list(t.minpoly), _trim(self.coeffs)
        s0, s1 = [], [GQ_ONE]
        while r1:
            q, r = _vec_divmod(r0, r1)
            r0, r1 = r1, r
            # s_next = s0 - q*s1
            prod = [GQ_ZERO] * (len(q) + len(s1))
            for a_, ca in enumerate(q):
                if not ca:
                    continue
                for b_, cb in enumerate(s1):
                    if cb:
                        prod[a_ + b_] = prod[a_ + b_] + ca * cb
            nxt = list(s0) + [GQ_ZERO] * max(0, len(prod) - len(s0))
            for k in range(len(prod)):
                nxt[k] = nxt[k] - prod[k]
            s0, s1 = s1, _trim(nxt)
        if len(r0) != 1:
            raise ZeroDivisionError(
                "zero divisor in extension tower (minpoly not irreducible?)"
            )
        inv = r0[0].inverse()
        return Scalar(t, t._reduce([c * inv for c in s0]))

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("exponent must be an int")
        if k < 0:
            return self.inverse() ** (-k)
        out = self.tower.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, GaussianRational, type(mpq(0)))):
            other = self.tower.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except TypeError:
            return False
        return a.coeffs == b.coeffs

    def __hash__(self):
        nz = len(self.coeffs)
        while nz and self.coeffs[nz - 1].is_zero():
            nz -= 1
        if nz <= 1:
            return hash(self.coeffs[0])
        return hash((self.tower, self.coeffs))

    def key(self):
        """Total-order key: extension-coefficient vector, each Gaussian
        rational compared by (re, im)."""
        return tuple(c.key() for c in self.coeffs)

    # -- display -----------------------------------------------------------------

    def __str__(self):
        from .literals import format_scalar

        return format_scalar(self)

    def __repr__(self):
        return "Scalar(%s)" % self
