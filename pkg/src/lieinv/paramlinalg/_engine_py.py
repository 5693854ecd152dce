"""Fraction-free elimination kernels (pure Python backend).

Everything here works on integer data only.  A tower element is a flat
block of `stride = 2*d` Python ints (re/im pairs of the coefficients on
1, t, ..., t^(d-1) for a rescaled generator t = N*s chosen by the caller
so that reduction stays integral); a polynomial in the twist variable x
is a flat list of such blocks, ascending, trimmed; a sparse row is a dict
col -> poly.

The main entry point `echelon` performs incremental row echelon by
cross-multiplication (v <- piv*v - c*e), stripping the integer content
after every elimination step and handing each surviving row to a caller
hook that may strip polynomial content.  Certificate bookkeeping (why
stripping is sound) lives in the caller; this module is plain arithmetic.

The compiled twin `_speedups` must match this module's semantics
bit-for-bit; tests compare the two backends on real systems.
"""

from math import gcd

BACKEND = "pure"


# -- flat polynomial helpers ---------------------------------------------------


def trim_flat(p, stride):
    n = len(p)
    while n and not any(p[n - stride : n]):
        n -= stride
    del p[n:]
    return p


def block_mul(a, ao, b, bo, dd, red):
    """Product of tower blocks a[ao:ao+2dd] * b[bo:bo+2dd] -> new list."""
    tmp = [0] * (2 * (2 * dd - 1))
    for u in range(dd):
        ar = a[ao + 2 * u]
        ai = a[ao + 2 * u + 1]
        if ar == 0 and ai == 0:
            continue
        for w in range(dd):
            br = b[bo + 2 * w]
            bi = b[bo + 2 * w + 1]
            if br or bi:
                k = 2 * (u + w)
                tmp[k] += ar * br - ai * bi
                tmp[k + 1] += ar * bi + ai * br
    for j in range(2 * dd - 2, dd - 1, -1):
        cr = tmp[2 * j]
        ci = tmp[2 * j + 1]
        if cr or ci:
            rr = red[j - dd]
            for u in range(dd):
                mr = rr[2 * u]
                mi = rr[2 * u + 1]
                if mr or mi:
                    tmp[2 * u] += cr * mr - ci * mi
                    tmp[2 * u + 1] += cr * mi + ci * mr
    return tmp[: 2 * dd]


def poly_mul(p, q, stride, red):
    """Flat poly product; stride=2 is the Gaussian-integer fast path."""
    if not p or not q:
        return []
    if stride == 2:
        n1 = len(p) >> 1
        n2 = len(q) >> 1
        out = [0] * (2 * (n1 + n2 - 1))
        for a in range(n1):
            pr = p[2 * a]
            pi = p[2 * a + 1]
            if pr == 0 and pi == 0:
                continue
            base = 2 * a
            for b in range(n2):
                qr = q[2 * b]
                qi = q[2 * b + 1]
                if qr or qi:
                    k = base + 2 * b
                    out[k] += pr * qr - pi * qi
                    out[k + 1] += pr * qi + pi * qr
        return trim_flat(out, 2)
    dd = stride >> 1
    n1 = len(p) // stride
    n2 = len(q) // stride
    out = [0] * (stride * (n1 + n2 - 1))
    for a in range(n1):
        ablock = p[a * stride : (a + 1) * stride]
        if not any(ablock):
            continue
        for b in range(n2):
            if not any(q[b * stride : (b + 1) * stride]):
                continue
            blk = block_mul(p, a * stride, q, b * stride, dd, red)
            k = (a + b) * stride
            for u in range(stride):
                out[k + u] += blk[u]
    return trim_flat(out, stride)


def poly_is_one(p, stride):
    return len(p) == stride and p[0] == 1 and not any(p[1:])


def poly_neg(p):
    return [-t for t in p]


# -- sparse row operations ----------------------------------------------------


def row_combine(piv, v, c, erow, stride, red):
    """v <- piv*v - c*e for sparse dict v and echelon row erow (list of
    (col, poly)); returns a new dict with exact zeros removed."""
    out = {}
    if poly_is_one(piv, stride):
        for col, p in v.items():
            out[col] = list(p)
    else:
        for col, p in v.items():
            out[col] = poly_mul(piv, p, stride, red)
    negc = poly_neg(c)
    for col, q in erow:
        w = poly_mul(negc, q, stride, red)
        got = out.get(col)
        if got is None:
            if w:
                out[col] = w
        else:
            if len(got) < len(w):
                got.extend([0] * (len(w) - len(got)))
            for k in range(len(w)):
                got[k] += w[k]
            trim_flat(got, stride)
            if not got:
                del out[col]
    return out


def strip_int_content(v):
    """Divide all entries of sparse row v by their common integer content."""
    g = 0
    for p in v.values():
        for t in p:
            if t:
                g = gcd(g, t)
                if g == 1:
                    return v
    if g > 1:
        for p in v.values():
            for k in range(len(p)):
                p[k] //= g
    return v


# -- main elimination ----------------------------------------------------------


def echelon(rows, ncols, stride, red, content_hook=None):
    """Incremental fraction-free echelon.

    rows: iterable of sparse rows (dict col->poly or list of (col, poly)).
    Returns (rank, pivots) with pivots a list of (col, poly) in insertion
    order.  content_hook(vdict) -> vdict is called once per surviving row
    before pivot selection (the caller records stripped content there).
    """
    ech = []
    pivots = []
    for r in rows:
        v = dict(r)
        for pc, pp, erow in ech:
            c = v.get(pc)
            if c is not None:
                v = row_combine(pp, v, c, erow, stride, red)
                strip_int_content(v)
        if not v:
            continue
        if content_hook is not None:
            v = content_hook(v)
        best_key = None
        best_col = -1
        for col, p in v.items():
            deg = len(p) // stride - 1
            h = max(map(abs, p))
            key = (deg, h, col)
            if best_key is None or key < best_key:
                best_key = key
                best_col = col
        pp = list(v[best_col])
        erow = sorted(v.items())
        ech.append((best_col, pp, erow))
        pivots.append((best_col, pp))
        if len(ech) == ncols:
            break
    return len(ech), pivots
