"""Generic and exceptional kernel analysis of parametric matrices.

Two elimination routes live here:

* `bareiss_generic_rank` is classical fraction-free Bareiss over the
  polynomial entries (pivot rule: lowest degree, then smallest
  coefficient height, then row-major).  Its certificate is the final
  pivot, an honest r x r minor of the input.  Intended for matrices of
  moderate size; no row is ever rescaled or content-reduced.

* `kernel_profile` drives the scalable integer engine: rows are
  constant-normalized and deduplicated (pointwise-safe), cleared of
  denominators, and echelonized incrementally by cross-multiplication
  with content stripping.  Soundness/completeness of the candidate set:
  every echelon row is a polynomial combination of input rows divided
  only by the recorded content factors, and the echelon is triangular
  with the recorded pivots on its steps; hence at any twist value where
  every pivot and every stripped content is nonzero the specialized
  echelon still has full generic rank, so the rank cannot drop there.
  Conversely every candidate root is verified by exact pointwise rank
  (dynamic evaluation for algebraic candidates), so the exceptional list
  is exact.  The certificate stored on the profile is the monic
  square-free polynomial whose roots are precisely the candidate set.

All Scalar/Branch evaluation results are exact; nothing here touches
floating point.
"""

from gmpy2 import lcm, mpq, mpz

from ..exactmath.branch import Branch, branch_invert
from ..exactmath.gaussian import GaussianRational
from ..exactmath.poly import Poly
from ..exactmath.tower import Scalar, common_tower
from . import _engine as engine
from .matrix import ParamMatrix

__all__ = [
    "KernelProfile",
    "bareiss_generic_rank",
    "kernel_profile",
    "rank_at_point",
    "kernel_basis_at",
    "subspace_equal",
]


# -- engine contexts: tower <-> flat integer data -----------------------------


class _EngineCtx:
    """Conversion data for one tower: the generator is rescaled t = N*s so
    that reduction of t^d stays in Gaussian integers."""

    def __init__(self, tower):
        self.tower = tower
        self.dd = tower.degree
        self.stride = 2 * self.dd
        if self.dd == 1:
            self.N = 1
            self.red = None
            return
        N = mpz(1)
        for c in tower.minpoly[:-1]:
            N = lcm(N, c.re.denominator)
            N = lcm(N, c.im.denominator)
        self.N = int(N)
        d = self.dd
        base = []
        for k in range(d):
            g = tower.minpoly[k]
            vre = -g.re * self.N ** (d - k)
            vim = -g.im * self.N ** (d - k)
            base.append(_exact_int(vre))
            base.append(_exact_int(vim))
        red = [base]
        for _ in range(1, d - 1):
            red.append(self._times_t(red[-1], base))
        self.red = red

    def _times_t(self, block, base):
        d = self.dd
        out = [0] * (2 * d)
        for k in range(d - 1):
            out[2 * (k + 1)] = block[2 * k]
            out[2 * (k + 1) + 1] = block[2 * k + 1]
        cr = block[2 * (d - 1)]
        ci = block[2 * (d - 1) + 1]
        if cr or ci:
            for u in range(d):
                br = base[2 * u]
                bi = base[2 * u + 1]
                out[2 * u] += cr * br - ci * bi
                out[2 * u + 1] += cr * bi + ci * br
        return out

    def scalar_blocks(self, s):
        """Scalar -> list of 2*dd mpq values (re/im on 1, t, ..)."""
        out = []
        npow = mpz(1)
        for k in range(self.dd):
            g = s.coeffs[k]
            out.append(g.re / npow)
            out.append(g.im / npow)
            npow *= self.N
        return out

    def flat_to_poly(self, p):
        t = self.tower
        stride = self.stride
        coeffs = []
        for kx in range(len(p) // stride):
            gs = []
            npow = mpz(1)
            for k in range(self.dd):
                re = mpq(p[kx * stride + 2 * k]) * npow
                im = mpq(p[kx * stride + 2 * k + 1]) * npow
                gs.append(GaussianRational(re, im))
                npow *= self.N
            coeffs.append(Scalar(t, gs))
        return Poly(t, coeffs)


def _exact_int(q):
    if q.denominator != 1:
        raise AssertionError("expected integral value in engine conversion")
    return int(q.numerator)


def _rows_to_engine(ctx, sparse_rows, entries_are_scalars=False):
    """Clear denominators rowwise and flatten to engine format."""
    erows = []
    for row in sparse_rows:
        staged = []
        den = mpz(1)
        for col, p in row:
            if entries_are_scalars:
                flat = ctx.scalar_blocks(ctx.tower.scalar(p))
            else:
                flat = []
                for c in p.coeffs:
                    flat.extend(ctx.scalar_blocks(ctx.tower.scalar(c)))
            for q in flat:
                den = lcm(den, q.denominator)
            staged.append((col, flat))
        erow = []
        for col, flat in staged:
            ints = engine.trim_flat([_exact_int(q * den) for q in flat], ctx.stride)
            if ints:
                erow.append((col, ints))
        if erow:
            erows.append(erow)
    return erows


def _make_content_hook(ctx, recorded):
    """Strip x-power and common polynomial content from a surviving row,
    recording every stripped polynomial factor (their roots must join the
    candidate set)."""
    stride = ctx.stride

    def hook(v):
        val = None
        for p in v.values():
            k = 0
            while k * stride < len(p) and not any(
                p[k * stride : (k + 1) * stride]
            ):
                k += 1
            val = k if val is None else min(val, k)
            if val == 0:
                break
        if val:
            for p in v.values():
                del p[: stride * val]
            recorded.append(Poly.x(ctx.tower) ** val)
        if all(len(p) > stride for p in v.values()):
            polys = [ctx.flat_to_poly(p) for p in v.values()]
            g = polys[0]
            for q in polys[1:]:
                g = g.gcd(q)
                if g.degree < 1:
                    break
            if g.degree >= 1:
                recorded.append(g)
                reduced = []
                for col, p in sorted(v.items()):
                    quo, rem = ctx.flat_to_poly(p).divmod(g)
                    if not rem.is_zero():
                        raise AssertionError("content division must be exact")
                    reduced.append((col, quo))
                v = dict(_rows_to_engine(ctx, [reduced])[0])
        return v

    return hook


# -- profiles -------------------------------------------------------------------


def branch_sort_key(br):
    """Exact points first in scalar order, then branches by degree/coeffs."""
    if br.degree == 1:
        return (0, br.point().key())
    return (1, br.degree, br.modulus.key())


class KernelProfile:
    """Kernel dimension of a parametric matrix as a function of the twist.

    generic_kernel_dim holds off a finite exceptional set; exceptional is
    a sorted tuple of (Branch, kernel_dim) with strictly larger
    dimensions; certificate is the monic square-free polynomial whose
    roots are the verified candidate set (every exceptional branch
    modulus divides it).
    """

    __slots__ = (
        "generic_kernel_dim",
        "certificate",
        "exceptional",
        "cols",
        "generic_rank",
        "tower",
    )

    def __init__(self, generic_kernel_dim, certificate, exceptional, cols, generic_rank, tower):
        for br, dim in exceptional:
            if dim <= generic_kernel_dim:
                raise ValueError("exceptional dimension must exceed generic")
        object.__setattr__(self, "generic_kernel_dim", generic_kernel_dim)
        object.__setattr__(self, "certificate", certificate)
        object.__setattr__(
            self, "exceptional", tuple(sorted(exceptional, key=lambda e: branch_sort_key(e[0])))
        )
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "generic_rank", generic_rank)
        object.__setattr__(self, "tower", tower)

    def __setattr__(self, name, value):
        raise AttributeError("KernelProfile is immutable")

    def value_at(self, at):
        """Kernel dimension at an exact point (Scalar or Branch).

        A Branch must lie inside a single exceptional branch or avoid all
        of them; straddling branches raise ValueError."""
        if isinstance(at, Scalar):
            for br, dim in self.exceptional:
                if br.tower == at.tower or br.tower.is_base() or at.tower.is_base():
                    if br.modulus.eval(at).is_zero():
                        return dim
            return self.generic_kernel_dim
        if isinstance(at, Branch):
            for br, dim in self.exceptional:
                g = br.modulus.gcd(at.modulus)
                if g.degree == at.degree:
                    return dim
                if g.degree >= 1:
                    raise ValueError("branch straddles an exceptional point")
            return self.generic_kernel_dim
        raise TypeError("value_at expects a Scalar or Branch")

    def __eq__(self, other):
        if not isinstance(other, KernelProfile):
            return NotImplemented
        return (
            self.generic_kernel_dim == other.generic_kernel_dim
            and self.exceptional == other.exceptional
            and self.cols == other.cols
        )

    def __repr__(self):
        exc = ", ".join("%s -> %d" % (br, d) for br, d in self.exceptional)
        return "KernelProfile(generic %d%s)" % (
            self.generic_kernel_dim,
            "; " + exc if exc else "",
        )


def _poly_height(p):
    h = mpz(0)
    for c in p.coeffs:
        for g in c.coeffs:
            for q in (g.re, g.im):
                a = abs(q.numerator)
                if a > h:
                    h = a
                if q.denominator > h:
                    h = mpz(q.denominator)
    return h


def bareiss_generic_rank(m):
    """Fraction-free Bareiss over the polynomial entries.

    Returns (rank over the rational-function field, certificate Poly); the
    certificate is the last pivot, a nonzero r x r minor of the input
    (1 when rank is 0).  Pivoting: lowest entry degree, then smallest
    coefficient height, then row-major position.
    """
    dense = m.dense()
    act_rows = list(range(m.rows))
    act_cols = list(range(m.cols))
    prev = Poly.one(m.tower)
    rank = 0
    while act_rows and act_cols:
        best = None
        for ri, i in enumerate(act_rows):
            for rj, j in enumerate(act_cols):
                p = dense[i][j]
                if p.is_zero():
                    continue
                key = (p.degree, _poly_height(p), ri, rj)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        piv = dense[pi][pj]
        for i in act_rows:
            if i == pi:
                continue
            vc = dense[i][pj]
            for j in act_cols:
                if j == pj:
                    continue
                num = piv * dense[i][j] - vc * dense[pi][j]
                quo, rem = num.divmod(prev)
                if not rem.is_zero():
                    raise AssertionError("Bareiss division must be exact")
                dense[i][j] = quo
            dense[i][pj] = Poly.zero(m.tower)
        act_rows.remove(pi)
        act_cols.remove(pj)
        prev = piv
        rank += 1
    return rank, (prev if rank else Poly.one(m.tower))


def _normalized_rows(m):
    """Constant-normalize and deduplicate sparse rows (pointwise-safe)."""
    seen = set()
    rows = []
    for row in m.sparse_rows():
        if not row:
            continue
        inv = row[0][1].leading().inverse()
        nr = tuple((c, p * inv) for c, p in row)
        key = tuple((c, p.coeffs) for c, p in nr)
        if key in seen:
            continue
        seen.add(key)
        rows.append(nr)
    return rows


def kernel_profile(m):
    """Generic kernel dimension plus the exact exceptional set (see module
    docstring for the candidate-then-verify argument)."""
    ctx = _EngineCtx(m.tower)
    rows = _normalized_rows(m)
    erows = _rows_to_engine(ctx, rows)
    recorded = []
    rank, pivots = engine.echelon(
        erows, m.cols, ctx.stride, ctx.red, _make_content_hook(ctx, recorded)
    )
    generic_kernel = m.cols - rank
    cert = Poly.one(m.tower)
    for _, pp in pivots:
        if len(pp) > ctx.stride:
            cert = cert * ctx.flat_to_poly(pp).squarefree_part()
    for g in recorded:
        cert = cert * g.squarefree_part()
    cert = cert.squarefree_part() if cert.degree >= 1 else Poly.one(m.tower)
    exceptional = []
    if cert.degree >= 1:
        for br, r_at in rank_at_point(m, Branch(cert)):
            dim = m.cols - r_at
            if dim > generic_kernel:
                exceptional.append((br, dim))
    return KernelProfile(generic_kernel, cert, exceptional, m.cols, rank, m.tower)


# -- pointwise evaluation ---------------------------------------------------------


def _rank_at_scalar(m, point):
    t = common_tower(m.tower, point.tower)
    ctx = _EngineCtx(t)
    point = t.scalar(point)
    rows = []
    for row in m.sparse_rows():
        r2 = []
        for c, p in row:
            val = p.lift(t).eval(point)
            if not val.is_zero():
                r2.append((c, val))
        if r2:
            rows.append(r2)
    erows = _rows_to_engine(ctx, rows, entries_are_scalars=True)
    rank, _ = engine.echelon(erows, m.cols, ctx.stride, ctx.red, None)
    return rank


def _d5_rank(m, rows, br, rank):
    """Dynamic-evaluation rank: residues modulo the branch modulus, with
    splits whenever invertibility differs between roots."""
    while True:
        if br.degree == 1:
            return [(br, _rank_at_scalar(m, br.point()))]
        pivot = None
        splitter = None
        for ri, row in enumerate(rows):
            for c, p in row:
                g = br.modulus.gcd(p)
                if g.is_one():
                    pivot = (ri, c, p)
                    break
                if splitter is None and 1 <= g.degree < br.degree:
                    splitter = g
            if pivot:
                break
        if pivot is None:
            if splitter is None:
                return [(br, rank)]
            out = []
            for mod in (splitter, (br.modulus // splitter).monic()):
                bb = Branch(mod)
                rr = []
                for row in rows:
                    r2 = [(c, bb.reduce(p)) for c, p in row]
                    r2 = [(c, p) for c, p in r2 if not p.is_zero()]
                    if r2:
                        rr.append(r2)
                out.extend(_d5_rank(m, rr, bb, rank))
            return out
        ri, pc, p = pivot
        tag, inv = branch_invert(p, br)
        if tag != "inverse":
            raise AssertionError("unit pivot must invert")
        prow = rows.pop(ri)
        prow = [(c, br.reduce(inv * q)) for c, q in prow]
        newrows = []
        for row in rows:
            d = dict(row)
            coef = d.pop(pc, None)
            if coef is None:
                newrows.append(row)
                continue
            for c, q in prow:
                if c == pc:
                    continue
                w = br.reduce(coef * q)
                got = d.get(c)
                r = br.reduce(got - w) if got is not None else br.reduce(-w)
                if r.is_zero():
                    d.pop(c, None)
                else:
                    d[c] = r
            if d:
                newrows.append(sorted(d.items()))
        rows = newrows
        rank += 1


def rank_at_point(m, at):
    """Exact rank of m(at); a Branch may split (union of moduli is preserved)."""
    if isinstance(at, Scalar):
        return [(at, _rank_at_scalar(m, at))]
    if not isinstance(at, Branch):
        raise TypeError("rank_at_point expects a Scalar or Branch")
    if at.degree == 1:
        return [(at, _rank_at_scalar(m, at.point()))]
    t = common_tower(m.tower, at.tower)
    rows = []
    for row in m.sparse_rows():
        r2 = []
        for c, p in row:
            res = at.reduce(p.lift(t))
            if not res.is_zero():
                r2.append((c, res))
        if r2:
            rows.append(r2)
    out = _d5_rank(m, rows, at, 0)
    out.sort(key=lambda e: branch_sort_key(e[0]))
    return out


# -- kernel bases and subspaces -----------------------------------------------------


class _FieldOps:
    """Exact field operations at a Scalar point."""

    def __init__(self, tower):
        self.tower = tower

    def mul(self, a, b):
        return a * b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a):
        return a.is_zero()

    def one(self):
        return self.tower.one()

    def zero(self):
        return self.tower.zero()


class _BranchOps:
    """Exact residue operations on a branch; raises if a split is forced."""

    def __init__(self, br):
        self.br = br

    def mul(self, a, b):
        return self.br.reduce(a * b)

    def sub(self, a, b):
        return self.br.reduce(a - b)

    def neg(self, a):
        return self.br.reduce(-a)

    def inv(self, a):
        tag, payload = branch_invert(a, self.br)
        if tag != "inverse":
            raise ValueError(
                "kernel basis is not constant across this branch; "
                "split it with rank_at_point first"
            )
        return payload

    def is_zero(self, a):
        return a.is_zero()

    def one(self):
        return Poly.one(self.br.tower)

    def zero(self):
        return Poly.zero(self.br.tower)


def _rref_kernel(rows, cols, ops):
    """Reduced row echelon over exact field-like ops; returns kernel basis
    vectors (free column = 1 convention), deterministic."""
    pivots = {}
    for row in rows:
        v = dict(row)
        for pc, prow in pivots.items():
            coef = v.pop(pc, None)
            if coef is None:
                continue
            for c, val in prow.items():
                if c == pc:
                    continue
                w = ops.mul(coef, val)
                got = v.get(c)
                r = ops.sub(got, w) if got is not None else ops.neg(w)
                if ops.is_zero(r):
                    v.pop(c, None)
                else:
                    v[c] = r
        if not v:
            continue
        pc = min(v)
        inv = ops.inv(v[pc])
        prow = {c: ops.mul(val, inv) for c, val in v.items()}
        for pc2, prow2 in pivots.items():
            coef = prow2.pop(pc, None)
            if coef is None:
                continue
            for c, val in prow.items():
                if c == pc:
                    continue
                w = ops.mul(coef, val)
                got = prow2.get(c)
                r = ops.sub(got, w) if got is not None else ops.neg(w)
                if ops.is_zero(r):
                    prow2.pop(c, None)
                else:
                    prow2[c] = r
        pivots[pc] = prow
    zero = ops.zero()
    basis = []
    free = [c for c in range(cols) if c not in pivots]
    for f in free:
        vec = [zero] * cols
        vec[f] = ops.one()
        for pc, prow in pivots.items():
            val = prow.get(f)
            if val is not None:
                vec[pc] = ops.neg(val)
        basis.append(tuple(vec))
    return basis, len(pivots)


def kernel_basis_at(m, at):
    """Exact basis of the null space of m(at) for a Scalar point or a
    non-splitting Branch; reduced-echelon deterministic form."""
    if isinstance(at, Branch) and at.degree == 1:
        at = at.point()
    if isinstance(at, Scalar):
        t = common_tower(m.tower, at.tower)
        at = t.scalar(at)
        rows = []
        for row in m.sparse_rows():
            r2 = []
            for c, p in row:
                val = p.lift(t).eval(at)
                if not val.is_zero():
                    r2.append((c, val))
            if r2:
                rows.append(r2)
        basis, _ = _rref_kernel(rows, m.cols, _FieldOps(t))
        return basis
    if isinstance(at, Branch):
        t = common_tower(m.tower, at.tower)
        rows = []
        for row in m.sparse_rows():
            r2 = []
            for c, p in row:
                res = at.reduce(p.lift(t))
                if not res.is_zero():
                    r2.append((c, res))
            if r2:
                rows.append(r2)
        basis, _ = _rref_kernel(rows, m.cols, _BranchOps(at))
        return basis
    raise TypeError("kernel_basis_at expects a Scalar or Branch")


def _span_rank(vectors, ops):
    rows = []
    for v in vectors:
        row = [(c, val) for c, val in enumerate(v) if not ops.is_zero(val)]
        if row:
            rows.append(row)
    if not rows:
        return 0
    cols = max(c for row in rows for c, _ in row) + 1
    _, rank = _rref_kernel(rows, cols, ops)
    return rank


def subspace_equal(a, b):
    """True iff span(a) == span(b) (exact rank comparison of stacks)."""
    a = list(a)
    b = list(b)
    if not a and not b:
        return True
    vecs = a or b
    n = len(vecs[0])
    for v in a + b:
        if len(v) != n:
            raise ValueError("subspace_equal needs vectors of equal length")
    t = None
    for v in a + b:
        for s in v:
            t = s.tower if t is None else common_tower(t, s.tower)
    ops = _FieldOps(t)
    ra = _span_rank(a, ops)
    rb = _span_rank(b, ops)
    if ra != rb:
        return False
    return _span_rank(a + b, ops) == ra
