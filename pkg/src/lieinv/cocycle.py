"""Linear systems whose kernels are twisted cocycle spaces.

An algebra-valued q-cochain is stored in the coordinates c^k_T where
T = (t_1 < ... < t_q) runs over sorted basis-index tuples and k over
components; the value on an arbitrary ordered tuple expands by the
permutation sign and vanishes on repeated indices.  Every builder emits
one vector equation per ORDERED tuple of basis indices, including
tuples with repeated entries: the defining identities quantify over
arbitrary elements, and the repeated-index equations carry constraints
(dropping them changes kernels; the tests pin an example).

Column convention shared by all builders, so that kernels of different
routes are comparable as subspaces:

    column(T, k) = lex-position(T) * dim + (k - 1).

For q = 1 the unknown vector is then the column-major matrix D of
A e_i = sum_r D_{ri} e_r, i.e. column(D_{ri}) = (i-1)*dim + (r-1).

Row convention: ordered tuples in lexicographic product order with the
projection component s innermost, so builders are deterministic.

The q = 1 specialization of the symmetric-matrix form works out to

    kappa_00 A[x,y] = kappa_11 [Ax,y] + kappa_22... (no third index);

concretely build_general with kappa = [[g, a], [a, b]] realizes the
(a, b, g)-derivation space: a A[x,y] = b [Ax,y] + g [x,Ay].  Since the
bracket is antisymmetric that space coincides with the (a, g, b) one,
so the transposed reading of the same matrix describes the identical
subspace; build_der is the direct route and the tests check agreement.
"""

from itertools import combinations, product

from .exactmath.poly import Poly
from .exactmath.tower import common_tower
from .paramlinalg.matrix import ParamMatrix

__all__ = [
    "KappaSpec",
    "SixParams",
    "build_der",
    "build_general",
    "build_two_cocycle",
    "kappa_from_six",
    "normalize_six",
]


def _as_poly(v):
    return v if isinstance(v, Poly) else Poly.constant(v)


class KappaSpec:
    """Symmetric (q+1) x (q+1) twist matrix with Poly entries."""

    __slots__ = ("q", "entries", "tower")

    def __init__(self, entries):
        size = len(entries)
        if size < 2:
            raise ValueError("twist matrix must be at least 2x2 (q >= 1)")
        grid = [[_as_poly(e) for e in row] for row in entries]
        t = grid[0][0].tower
        for row in grid:
            if len(row) != size:
                raise ValueError("twist matrix must be square")
            for p in row:
                t = common_tower(t, p.tower)
        grid = [[p.lift(t) for p in row] for row in grid]
        for i in range(size):
            for j in range(i):
                if grid[i][j] != grid[j][i]:
                    raise ValueError("twist matrix must be symmetric")
        object.__setattr__(self, "q", size - 1)
        object.__setattr__(self, "entries", tuple(tuple(row) for row in grid))
        object.__setattr__(self, "tower", t)

    def __setattr__(self, name, value):
        raise AttributeError("KappaSpec is immutable")

    def entry(self, i, j):
        return self.entries[i][j]

    def scale(self, factor):
        f = _as_poly(factor)
        return KappaSpec([[p * f for p in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, KappaSpec):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return "KappaSpec(q=%d)" % self.q


class SixParams:
    """The six coefficients (a1, a2, a3, b1, b2, b3) of the 2-cochain
    identity  0 = a1 B(x,[y,z]) + a2 B(z,[x,y]) + a3 B(y,[z,x])
                + b1 [x,B(y,z)] + b2 [z,B(x,y)] + b3 [y,B(z,x)]."""

    __slots__ = ("a1", "a2", "a3", "b1", "b2", "b3")

    def __init__(self, a1, a2, a3, b1, b2, b3):
        vals = [_as_poly(v) for v in (a1, a2, a3, b1, b2, b3)]
        t = vals[0].tower
        for v in vals[1:]:
            t = common_tower(t, v.tower)
        vals = [v.lift(t) for v in vals]
        for slot, v in zip(self.__slots__, vals):
            object.__setattr__(self, slot, v)

    def __setattr__(self, name, value):
        raise AttributeError("SixParams is immutable")

    def as_tuple(self):
        return (self.a1, self.a2, self.a3, self.b1, self.b2, self.b3)

    def is_constant(self):
        return all(v.is_constant() for v in self.as_tuple())

    def scale(self, factor):
        f = _as_poly(factor)
        return SixParams(*(v * f for v in self.as_tuple()))

    def __eq__(self, other):
        if not isinstance(other, SixParams):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __repr__(self):
        return "SixParams(%s)" % ", ".join(str(v) for v in self.as_tuple())


def kappa_from_six(p):
    """The symmetric 3x3 twist matrix housing the six 2-cochain
    coefficients: [[b1, a2, a3], [a2, b3, a1], [a3, a1, b2]]."""
    return KappaSpec(
        [
            [p.b1, p.a2, p.a3],
            [p.a2, p.b3, p.a1],
            [p.a3, p.a1, p.b2],
        ]
    )


# -- shared helpers ---------------------------------------------------------


def _acc(row, col, term):
    cur = row.get(col)
    row[col] = term if cur is None else cur + term


def _nonzero_brackets(lie):
    """nz[i][j] = tuple of (k, c^k) with c^k != 0, 0-based."""
    n = lie.dim
    return [
        [
            tuple(
                (k, v)
                for k, v in enumerate(lie.bracket_vector(i, j))
                if not v.is_zero()
            )
            for j in range(n)
        ]
        for i in range(n)
    ]


def _adjoint_rows(lie, nz):
    """adj[i] = tuple of (k, s, c^s_{ik}) over all nonzero entries, so a
    loop over adj[i] enumerates the matrix of ad(e_{i+1})."""
    n = lie.dim
    return [
        tuple((k, s, v) for k in range(n) for (s, v) in nz[i][k])
        for i in range(n)
    ]


def _resolve(args):
    """Alternating expansion of an ordered 1-based index tuple: returns
    (sign, sorted tuple), or None when an index repeats."""
    q = len(args)
    if q == 1:
        return 1, args
    if q == 2:
        a, b = args
        if a == b:
            return None
        return (1, args) if a < b else (-1, (b, a))
    if len(set(args)) != q:
        return None
    lst = list(args)
    sign = 1
    for i in range(1, q):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(lst)


def _resolve2(a, b):
    if a == b:
        return None
    return (1, (a, b)) if a < b else (-1, (b, a))


# -- builders ---------------------------------------------------------------


def build_der(lie, alpha, beta, gamma):
    """System for (alpha, beta, gamma)-derivations,
    alpha A[x,y] = beta [Ax,y] + gamma [x,Ay]:

        sum_r  -alpha c^r_{ij} D_{sr} + beta c^s_{rj} D_{ri}
                                      + gamma c^s_{ir} D_{rj}  = 0

    over all ordered pairs (i, j) and components s; n^3 rows, n^2
    unknowns D_{rs} in column-major order."""
    n = lie.dim
    al, be, ga = _as_poly(alpha), _as_poly(beta), _as_poly(gamma)
    t = common_tower(common_tower(lie.tower, al.tower), common_tower(be.tower, ga.tower))
    al, be, ga = al.lift(t), be.lift(t), ga.lift(t)
    nz = _nonzero_brackets(lie)
    # colnz[j][s] = nonzero (r, c^s_{rj})
    colnz = [
        [
            tuple(
                (r, lie.constants[r][j][s])
                for r in range(n)
                if not lie.constants[r][j][s].is_zero()
            )
            for s in range(n)
        ]
        for j in range(n)
    ]
    use_al, use_be, use_ga = not al.is_zero(), not be.is_zero(), not ga.is_zero()
    data = []
    for i in range(n):
        for j in range(n):
            brk = nz[i][j]
            for s in range(n):
                row = {}
                if use_al:
                    for r, cval in brk:
                        _acc(row, r * n + s, al * (-cval))
                if use_be:
                    for r, cval in colnz[j][s]:
                        _acc(row, i * n + r, be * cval)
                if use_ga:
                    # c^s_{ir} = -c^s_{ri}
                    for r, cval in colnz[i][s]:
                        _acc(row, j * n + r, ga * (-cval))
                data.append(list(row.items()))
    return ParamMatrix(n ** 3, n * n, data, t)


def build_general(lie, kappa):
    """System for the q-cochains c with

        0 = sum_p (-1)^p kappa_pp [x_p, c(..x_p..)]
          + sum_{p<p'} (-1)^{p+p'} kappa_pp' c([x_p, x_p'], ..x_p..x_p'..)

    (0-based positions, hats mark omitted arguments) over all ordered
    (q+1)-tuples of basis vectors; n^(q+2) rows, n*C(n,q) unknowns."""
    q = kappa.q
    n = lie.dim
    if q > n:
        raise ValueError("cochain dimension %d exceeds algebra dimension %d" % (q, n))
    t = common_tower(lie.tower, kappa.tower)
    kap = [[kappa.entry(i, j).lift(t) for j in range(q + 1)] for i in range(q + 1)]
    combos = list(combinations(range(1, n + 1), q))
    combo_pos = {T: m for m, T in enumerate(combos)}
    cols = n * len(combos)
    nz = _nonzero_brackets(lie)
    adj = _adjoint_rows(lie, nz)
    positions = range(q + 1)
    pairs = [(p1, p2) for p1 in positions for p2 in range(p1 + 1, q + 1)]
    f_terms = [(p, 1 if p % 2 == 0 else -1) for p in positions if not kap[p][p].is_zero()]
    c_terms = [
        (p1, p2, 1 if (p1 + p2) % 2 == 0 else -1)
        for p1, p2 in pairs
        if not kap[p1][p2].is_zero()
    ]
    data = []
    for X in product(range(1, n + 1), repeat=q + 1):
        block = [dict() for _ in range(n)]
        for p, sgn0 in f_terms:
            res = _resolve(X[:p] + X[p + 1:])
            if res is None:
                continue
            sgn, T = res
            base = combo_pos[T] * n
            kp = kap[p][p]
            for k, s, cval in adj[X[p] - 1]:
                _acc(block[s], base + k, kp * (cval if sgn * sgn0 > 0 else -cval))
        for p1, p2, sgn0 in c_terms:
            brk = nz[X[p1] - 1][X[p2] - 1]
            if not brk:
                continue
            rest = tuple(X[m] for m in positions if m != p1 and m != p2)
            kp = kap[p1][p2]
            for r, cval in brk:
                res = _resolve((r + 1,) + rest)
                if res is None:
                    continue
                sgn, T = res
                base = combo_pos[T] * n
                term = kp * (cval if sgn * sgn0 > 0 else -cval)
                for s in range(n):
                    _acc(block[s], base + s, term)
        for s in range(n):
            data.append(list(block[s].items()))
    return ParamMatrix(n ** (q + 2), cols, data, t)


def build_two_cocycle(lie, p, repeated_tuples=True):
    """System for the six-parameter 2-cochain spaces, one vector
    equation per ordered triple (x, y, z) of basis vectors:

        0 = a1 B(x,[y,z]) + a2 B(z,[x,y]) + a3 B(y,[z,x])
          + b1 [x,B(y,z)] + b2 [z,B(x,y)] + b3 [y,B(z,x)].

    repeated_tuples=False drops the triples with a repeated index; that
    variant is NOT equivalent (regression guard in the tests)."""
    n = lie.dim
    if n < 2:
        raise ValueError("2-cochains need dimension >= 2")
    a1, a2, a3, b1, b2, b3 = p.as_tuple()
    t = common_tower(lie.tower, a1.tower)
    a1, a2, a3, b1, b2, b3 = (v.lift(t) for v in (a1, a2, a3, b1, b2, b3))
    combos = list(combinations(range(1, n + 1), 2))
    combo_pos = {T: m for m, T in enumerate(combos)}
    cols = n * len(combos)
    nz = _nonzero_brackets(lie)
    adj = _adjoint_rows(lie, nz)
    data = []
    rows = 0
    for x, y, z in product(range(1, n + 1), repeat=3):
        if not repeated_tuples and (x == y or y == z or x == z):
            continue
        rows += n
        block = [dict() for _ in range(n)]
        for coeff, first, (u, v) in (
            (a1, x, (y, z)),
            (a2, z, (x, y)),
            (a3, y, (z, x)),
        ):
            if coeff.is_zero():
                continue
            for r, cval in nz[u - 1][v - 1]:
                res = _resolve2(first, r + 1)
                if res is None:
                    continue
                sgn, T = res
                base = combo_pos[T] * n
                term = coeff * (cval if sgn > 0 else -cval)
                for s in range(n):
                    _acc(block[s], base + s, term)
        for coeff, outer, (u, v) in (
            (b1, x, (y, z)),
            (b2, z, (x, y)),
            (b3, y, (z, x)),
        ):
            if coeff.is_zero():
                continue
            res = _resolve2(u, v)
            if res is None:
                continue
            sgn, T = res
            base = combo_pos[T] * n
            for k, s, cval in adj[outer - 1]:
                _acc(block[s], base + k, coeff * (cval if sgn > 0 else -cval))
        for s in range(n):
            data.append(list(block[s].items()))
    return ParamMatrix(rows, cols, data, t)


# -- sixteen-case normalization ----------------------------------------------


def normalize_six(p):
    """Rewrite a constant six-tuple into one of the sixteen canonical
    forms defining the same 2-cochain subspace for every algebra.

    The identity behind every branch: the space of p equals the
    intersection of the spaces of its "difference" part
    (0, c, -c, 0, d, -d), c = a2-a3, d = b2-b3, and its "sum" part
    (2 a1, x, x, 2 b1, z, z), x = a2+a3, z = b2+b3 -- and conversely
    merging any two such parts back into a single six-tuple preserves
    the intersection.  Each part may be rescaled freely, so the branch
    structure below is a case split on which of c, d, x, z vanish, with
    scalings chosen to land exactly on the canonical forms.

    Returns (canonical SixParams, case label 1-16)."""
    vals = p.as_tuple()
    for v in vals:
        if not v.is_constant():
            raise ValueError("normalize_six requires constant parameters")
    t = vals[0].tower
    a1, a2, a3, b1, b2, b3 = (v.constant_term() for v in vals)
    c = a2 - a3
    d = b2 - b3
    w = a1 + a1
    x = a2 + a3
    y = b1 + b1
    z = b2 + b3
    one = t.one()

    def six(*vs):
        return SixParams(*(Poly.constant(t.scalar(v)) for v in vs))

    if d.is_zero() and c.is_zero():
        if z.is_zero():
            if x.is_zero():
                return six(a1, 0, 0, b1, 0, 0), 1
            return six(w / x, 1, 1, y / x, 0, 0), 10
        if x.is_zero():
            return six(w / z, 0, 0, y / z, 1, 1), 6
        return six(w / z, x / z, x / z, y / z, 1, 1), 16
    if d.is_zero():
        if z.is_zero():
            if x.is_zero():
                return six(a1, 1, -one, b1, 0, 0), 3
            h = x + x
            return six(w / h, 1, 0, y / h, 0, 0), 9
        if x.is_zero():
            return six(w / z, 1, -one, y / z, 1, 1), 8
        return six(w / z, x / z + one, x / z - one, y / z, 1, 1), 14
    e = c / d
    if z.is_zero():
        if x.is_zero():
            if e.is_zero():
                return six(a1, 0, 0, b1, 1, -one), 2
            return six(a1, e, -e, b1, 1, -one), 4
        h = x + x
        if e.is_zero():
            return six(w / x, 1, 1, y / x, 1, -one), 12
        g = e + e
        return six(w / h, 1, 0, y / h, one / g, -(one / g)), 11
    h = z + z
    if x.is_zero():
        if e.is_zero():
            return six(w / h, 0, 0, y / h, 1, 0), 5
        half_e = e / (one + one)
        return six(w / h, half_e, -half_e, y / h, 1, 0), 7
    if e.is_zero():
        return six(w / x, 1, 1, y / x, z / x + one, z / x - one), 15
    two = one + one
    return six(
        w / h, (x / z + e) / two, (x / z - e) / two, y / h, 1, 0
    ), 13
