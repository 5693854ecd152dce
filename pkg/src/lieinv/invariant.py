"""Invariant step functions of the twist variable.

psi(L) is the dimension of the (x, 1, 1)-derivation space as a function
of x; phi and phi0 are the analogous dimensions of the six-parameter
2-cochain spaces (1, 1, 1, x, x, x) and (0, 1, 1, x, 1, 1).  Each is a
step function: one generic value holding off a finite exceptional set,
stored exactly as branches.

A StepFunction keeps its defining linear system so that pointwise
comparisons can evaluate it at points the table never mentions --
the "is f <= g everywhere" question of the contraction criteria needs
values at the OTHER function's exceptional points.
"""

from .cocycle import SixParams, build_der, build_two_cocycle
from .exactmath import Branch, Poly, Scalar, format_poly, format_scalar
from .paramlinalg import branch_sort_key, kernel_profile, rank_at_point

__all__ = [
    "OccurrenceSignature",
    "StepFunction",
    "leq_pointwise",
    "phi",
    "phi0",
    "psi",
    "signature",
    "step_equal",
    "to_jsonable",
]

_X = Poly.x()


class StepFunction:
    """generic value + exceptional (Branch, value) pairs + provenance.

    Fixture tables carry no defining system (matrix is None); they still
    support value_at, signatures and step_equal, but not evaluate()."""

    __slots__ = ("family", "lie", "matrix", "generic", "exceptional", "cols")

    def __init__(self, family, generic, exceptional, cols, lie=None, matrix=None):
        exc = []
        for pt, v in exceptional:
            if isinstance(pt, Scalar):
                pt = Branch(Poly(pt.tower, (-pt, pt.tower.one())))
            if v <= generic:
                raise ValueError("exceptional value must exceed the generic one")
            if v > cols:
                raise ValueError("value exceeds the cochain-space dimension")
            exc.append((pt, v))
        exc.sort(key=lambda e: branch_sort_key(e[0]))
        for i, (bi, _) in enumerate(exc):
            for bj, _ in exc[i + 1 :]:
                if bi.modulus.gcd(bj.modulus).degree >= 1:
                    raise ValueError("exceptional points must be pairwise distinct")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "lie", lie)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "generic", generic)
        object.__setattr__(self, "exceptional", tuple(exc))
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_profile(cls, family, lie, matrix, profile):
        return cls(
            family,
            profile.generic_kernel_dim,
            profile.exceptional,
            matrix.cols,
            lie=lie,
            matrix=matrix,
        )

    def __setattr__(self, name, value):
        raise AttributeError("StepFunction is immutable")

    def value_at(self, at):
        """Table lookup: generic unless `at` lies in an exceptional branch."""
        if isinstance(at, Scalar):
            for br, v in self.exceptional:
                if br.contains_point(at):
                    return v
            return self.generic
        for br, v in self.exceptional:
            g = br.modulus.gcd(at.modulus)
            if g.degree == at.degree:
                return v
            if g.degree >= 1:
                raise ValueError("branch straddles an exceptional point")
        return self.generic

    def evaluate(self, at):
        """Exact evaluation through the stored system; a Branch may
        split: returns a list of (Branch|Scalar, value)."""
        if self.matrix is None:
            raise ValueError("fixture step function stores no defining system")
        out = []
        for sub, rank in rank_at_point(self.matrix, at):
            pt = sub.point() if isinstance(sub, Branch) and sub.degree == 1 else sub
            out.append((pt, self.cols - rank))
        return out

    def points(self):
        """Exceptional points in deterministic order, Scalars when exact."""
        out = []
        for br, v in self.exceptional:
            out.append((br.point() if br.degree == 1 else br, v))
        return out

    def __repr__(self):
        exc = ", ".join(
            "%s -> %d" % (format_scalar(p) if isinstance(p, Scalar) else p, v)
            for p, v in self.points()
        )
        return "StepFunction(%s: generic %d%s)" % (
            self.family,
            self.generic,
            "; " + exc if exc else "",
        )


def _step(family, lie, matrix):
    return StepFunction.from_profile(family, lie, matrix, kernel_profile(matrix))


def psi(lie):
    """dim of the (x,1,1)-derivation space as a step function of x."""
    return _step("psi", lie, build_der(lie, _X, 1, 1))


def phi(lie):
    """dim of the (1,1,1,x,x,x) 2-cochain space."""
    return _step("phi", lie, build_two_cocycle(lie, SixParams(1, 1, 1, _X, _X, _X)))


def phi0(lie):
    """dim of the (0,1,1,x,1,1) 2-cochain space."""
    return _step("phi0", lie, build_two_cocycle(lie, SixParams(0, 1, 1, _X, 1, 1)))


class OccurrenceSignature:
    """Multiset view: how many distinct points attain each exceptional
    value, plus the generic value."""

    __slots__ = ("generic", "occurrences")

    def __init__(self, generic, occurrences):
        occ = tuple(sorted(occurrences, key=lambda p: (-p[0], p[1])))
        vals = [v for v, _ in occ]
        if len(set(vals)) != len(vals):
            raise ValueError("occurrence values must be distinct after merging")
        if any(m < 1 for _, m in occ):
            raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "generic", generic)
        object.__setattr__(self, "occurrences", occ)

    def __setattr__(self, name, value):
        raise AttributeError("OccurrenceSignature is immutable")

    def __eq__(self, other):
        if not isinstance(other, OccurrenceSignature):
            return NotImplemented
        return self.generic == other.generic and self.occurrences == other.occurrences

    def __hash__(self):
        return hash((self.generic, self.occurrences))

    def __str__(self):
        parts = ["%d_%d" % (v, m) for v, m in self.occurrences]
        parts.append(str(self.generic))
        return ",".join(parts)

    def __repr__(self):
        return "OccurrenceSignature(%s)" % self


def signature(f):
    """Merge the exceptional set by value; multiplicity counts distinct
    complex points (sum of square-free modulus degrees)."""
    counts = {}
    for br, v in f.exceptional:
        counts[v] = counts.get(v, 0) + br.degree
    return OccurrenceSignature(f.generic, tuple(counts.items()))


def _as_branches(f):
    return [(br, v) for br, v in f.exceptional]


def step_equal(f, g):
    """True iff the two step functions agree at every complex point:
    equal generic values and matching values on the refined exceptional
    point sets (branch moduli compared through pairwise gcds)."""
    if f.generic != g.generic:
        return False

    def covered(a, b):
        # every root of a's moduli must carry the same value within b,
        # and roots missing from b would take b's generic value
        for mf, vf in _as_branches(a):
            residual = mf.modulus
            for mg, vg in _as_branches(b):
                h = residual.gcd(mg.modulus)
                if h.degree >= 1:
                    if vf != vg:
                        return False
                    residual = residual // h
            if residual.degree >= 1:
                return False  # vf > generic on roots generic for b
        return True

    return covered(f, g) and covered(g, f)


def leq_pointwise(f, g):
    """Decide f(x) <= g(x) for every complex x; returns (ok, witness)
    where witness is the first violating point in deterministic order
    (None when ok).  Both functions are re-evaluated through their
    stored systems at every exceptional point of either."""
    if f.family != g.family:
        raise ValueError("cannot compare step functions of different families")
    if f.cols != g.cols:
        raise ValueError("cannot compare step functions over different cochain spaces")
    if f.matrix is None or g.matrix is None:
        raise ValueError("pointwise comparison needs both defining systems")
    if f.generic > g.generic:
        # a generic witness: the first integer avoiding both exceptional sets
        k = 0
        while True:
            pt = f.matrix.tower.scalar(k)
            if all(
                not br.contains_point(pt) for br, _ in f.exceptional
            ) and all(not br.contains_point(pt) for br, _ in g.exceptional):
                return False, pt
            k += 1
    suspects = sorted(
        {br.key(): br for br, _ in list(f.exceptional) + list(g.exceptional)}.values(),
        key=branch_sort_key,
    )
    for br in suspects:
        sides = {}
        for name, fn in (("f", f), ("g", g)):
            for pt, val in fn.evaluate(br if br.degree > 1 else br.point()):
                sides.setdefault(name, []).append((pt, val))
        for pf, vf in sides["f"]:
            for pg, vg in sides["g"]:
                if _same_point_region(pf, pg) and vf > vg:
                    return False, pf
    return True, None


def _same_point_region(a, b):
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return a == b
    if isinstance(a, Scalar) and isinstance(b, Branch):
        return b.contains_point(a)
    if isinstance(b, Scalar) and isinstance(a, Branch):
        return a.contains_point(b)
    return a.modulus.gcd(b.modulus).degree >= 1


def to_jsonable(f):
    """The ordered JSON form of a step function."""
    exc = []
    for br, v in sorted(f.exceptional, key=lambda e: branch_sort_key(e[0])):
        if br.degree == 1:
            exc.append({"point": format_scalar(br.point()), "value": v})
        else:
            exc.append(
                {
                    "minpoly": format_poly(br.modulus),
                    "distinct_roots": br.degree,
                    "value": v,
                }
            )
    return {"family": f.family, "generic": f.generic, "exceptional": exc}
