"""Branches: exact computation at the roots of a polynomial.

A Branch stands for "x is any root of m" where m is a monic square-free
polynomial over the tower.  Arithmetic on residues (Polys reduced mod m)
is ordinary modular arithmetic; inversion follows dynamic evaluation: if
the element is invertible on part of the branch only, the branch SPLITS
into two branches whose moduli multiply back to m, and the computation
continues separately on each.  This is how exceptional twist values that
are algebraic but not rational are handled without ever leaving exact
arithmetic.

branch_invert returns a tagged tuple:

    ("inverse", Poly)       -- the residue is a unit; its inverse mod m
    ("zero", None)          -- the residue is 0 on the whole branch
    ("split", (b1, b2))     -- behaviour differs on sub-branches b1, b2

A degree-1 branch is a single exact point; Branch.point() recovers it.
"""

from .poly import Poly
from .tower import Scalar

__all__ = ["Branch", "branch_invert", "poly_eval_at_branch"]


class Branch:
    __slots__ = ("modulus",)

    def __init__(self, modulus):
        if not isinstance(modulus, Poly):
            raise TypeError("branch modulus must be a Poly")
        if modulus.degree < 1:
            raise ValueError("branch modulus must have degree >= 1")
        m = modulus.monic()
        if not m.gcd(m.derivative()).is_one():
            raise ValueError("branch modulus must be square-free")
        object.__setattr__(self, "modulus", m)

    def __setattr__(self, name, value):
        raise AttributeError("Branch is immutable")

    @staticmethod
    def at_point(point):
        """The degree-1 branch x = point."""
        if not isinstance(point, Scalar):
            raise TypeError("point must be a Scalar")
        return Branch(Poly(point.tower, (-point, 1)))

    @property
    def degree(self):
        return self.modulus.degree

    @property
    def tower(self):
        return self.modulus.tower

    def point(self):
        """The single root, for a degree-1 branch (modulus x + c -> -c)."""
        if self.degree != 1:
            raise ValueError("branch of degree %d is not a single point" % self.degree)
        return -self.modulus.constant_term()

    def contains_point(self, point):
        return self.modulus.eval(point).is_zero()

    def reduce(self, p):
        if not isinstance(p, Poly):
            raise TypeError("residues are Polys")
        return p % self.modulus

    def split_at(self, divisor):
        """Split off the sub-branch gcd(modulus, divisor); returns (inside,
        outside) branches, either possibly None."""
        g = self.modulus.gcd(divisor)
        if g.is_one():
            return None, self
        if g.degree == self.degree:
            return self, None
        return Branch(g), Branch((self.modulus // g).monic())

    def __eq__(self, other):
        if not isinstance(other, Branch):
            return NotImplemented
        return self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def key(self):
        return self.modulus.key()

    def __str__(self):
        if self.degree == 1:
            return "x = %s" % self.point()
        return "x root of %s" % self.modulus

    def __repr__(self):
        return "Branch(%s)" % self


def branch_invert(r, br):
    """Invert residue r on branch br, splitting if necessary (see module doc)."""
    r = br.reduce(r)
    if r.is_zero():
        return ("zero", None)
    g = br.modulus.gcd(r)
    if g.is_one():
        # extended Euclid: u*r + v*m = 1  ->  u is the inverse
        m = br.modulus
        r0, r1 = m, r
        s0, s1 = Poly.zero(m.tower), Poly.one(m.tower)
        while r1:
            q, rem = r0.divmod(r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - q * s1
        inv = s0 / r0.leading()
        return ("inverse", inv % m)
    if g.degree == br.degree:
        return ("zero", None)
    return ("split", (Branch(g), Branch((br.modulus // g).monic())))


def poly_eval_at_branch(p, at):
    """Evaluate Poly p at a Scalar (→ Scalar) or on a Branch (→ residue Poly)."""
    if isinstance(at, Scalar):
        return p.eval(at)
    if isinstance(at, Branch):
        return at.reduce(p.lift(at.tower))
    raise TypeError("evaluation point must be a Scalar or Branch")
