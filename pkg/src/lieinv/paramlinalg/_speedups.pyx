# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Fraction-free elimination kernels (compiled backend).

Bit-for-bit twin of `_engine_py`; see that module for the data layout
and the meaning of stride/red.  All entries are arbitrary-precision
Python ints, so the win here is loop and dispatch overhead, not word
arithmetic.
"""

from math import gcd

BACKEND = "compiled"


# -- flat polynomial helpers ---------------------------------------------------


def trim_flat(list p, Py_ssize_t stride):
    cdef Py_ssize_t n = len(p)
    cdef Py_ssize_t k
    cdef bint nz
    while n:
        nz = False
        for k in range(n - stride, n):
            if p[k] != 0:
                nz = True
                break
        if nz:
            break
        n -= stride
    del p[n:]
    return p


def block_mul(list a, Py_ssize_t ao, list b, Py_ssize_t bo, Py_ssize_t dd, list red):
    """Product of tower blocks a[ao:ao+2dd] * b[bo:bo+2dd] -> new list."""
    cdef list tmp = [0] * (2 * (2 * dd - 1))
    cdef list rr
    cdef Py_ssize_t u, w, j, k
    cdef object ar, ai, br, bi, cr, ci, mr, mi
    for u in range(dd):
        ar = a[ao + 2 * u]
        ai = a[ao + 2 * u + 1]
        if ar == 0 and ai == 0:
            continue
        for w in range(dd):
            br = b[bo + 2 * w]
            bi = b[bo + 2 * w + 1]
            if br != 0 or bi != 0:
                k = 2 * (u + w)
                tmp[k] = tmp[k] + (ar * br - ai * bi)
                tmp[k + 1] = tmp[k + 1] + (ar * bi + ai * br)
    for j in range(2 * dd - 2, dd - 1, -1):
        cr = tmp[2 * j]
        ci = tmp[2 * j + 1]
        if cr != 0 or ci != 0:
            rr = red[j - dd]
            for u in range(dd):
                mr = rr[2 * u]
                mi = rr[2 * u + 1]
                if mr != 0 or mi != 0:
                    tmp[2 * u] = tmp[2 * u] + (cr * mr - ci * mi)
                    tmp[2 * u + 1] = tmp[2 * u + 1] + (cr * mi + ci * mr)
    return tmp[: 2 * dd]


def poly_mul(list p, list q, Py_ssize_t stride, red):
    """Flat poly product; stride=2 is the Gaussian-integer fast path."""
    cdef Py_ssize_t n1, n2, a, b, k, base, u
    cdef list out, blk
    cdef object pr, pi, qr, qi
    cdef bint nz
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
                if qr != 0 or qi != 0:
                    k = base + 2 * b
                    out[k] = out[k] + (pr * qr - pi * qi)
                    out[k + 1] = out[k + 1] + (pr * qi + pi * qr)
        return trim_flat(out, 2)
    cdef Py_ssize_t dd = stride >> 1
    n1 = len(p) // stride
    n2 = len(q) // stride
    out = [0] * (stride * (n1 + n2 - 1))
    for a in range(n1):
        nz = False
        for u in range(a * stride, (a + 1) * stride):
            if p[u] != 0:
                nz = True
                break
        if not nz:
            continue
        for b in range(n2):
            nz = False
            for u in range(b * stride, (b + 1) * stride):
                if q[u] != 0:
                    nz = True
                    break
            if not nz:
                continue
            blk = block_mul(p, a * stride, q, b * stride, dd, red)
            k = (a + b) * stride
            for u in range(stride):
                out[k + u] = out[k + u] + blk[u]
    return trim_flat(out, stride)


def poly_is_one(list p, Py_ssize_t stride):
    cdef Py_ssize_t k
    if len(p) != stride or p[0] != 1:
        return False
    for k in range(1, stride):
        if p[k] != 0:
            return False
    return True


def poly_neg(list p):
    cdef Py_ssize_t k
    cdef list out = [0] * len(p)
    for k in range(len(p)):
        out[k] = -p[k]
    return out


# -- sparse row operations ----------------------------------------------------


def row_combine(list piv, dict v, list c, list erow, Py_ssize_t stride, red):
    """v <- piv*v - c*e for sparse dict v and echelon row erow (list of
    (col, poly)); returns a new dict with exact zeros removed."""
    cdef dict out = {}
    cdef list negc, w, got
    cdef Py_ssize_t k, lw, lg
    if poly_is_one(piv, stride):
        for col, p in v.items():
            out[col] = list(p)
    else:
        for col, p in v.items():
            out[col] = poly_mul(piv, p, stride, red)
    negc = poly_neg(c)
    for col, q in erow:
        w = poly_mul(negc, q, stride, red)
        got = <list> out.get(col)
        if got is None:
            if w:
                out[col] = w
        else:
            lw = len(w)
            lg = len(got)
            if lg < lw:
                got.extend([0] * (lw - lg))
            for k in range(lw):
                got[k] = got[k] + w[k]
            trim_flat(got, stride)
            if not got:
                del out[col]
    return out


def strip_int_content(dict v):
    """Divide all entries of sparse row v by their common integer content."""
    cdef object g = 0
    cdef list p
    cdef Py_ssize_t k
    for p in v.values():
        for k in range(len(p)):
            if p[k] != 0:
                g = gcd(g, p[k])
                if g == 1:
                    return v
    if g > 1:
        for p in v.values():
            for k in range(len(p)):
                p[k] = p[k] // g
    return v


# -- main elimination ----------------------------------------------------------


def echelon(rows, Py_ssize_t ncols, Py_ssize_t stride, red, content_hook=None):
    """Incremental fraction-free echelon.

    rows: iterable of sparse rows (dict col->poly or list of (col, poly)).
    Returns (rank, pivots) with pivots a list of (col, poly) in insertion
    order.  content_hook(vdict) -> vdict is called once per surviving row
    before pivot selection (the caller records stripped content there).
    """
    cdef list ech = []
    cdef list pivots = []
    cdef dict v
    cdef list p, pp, erow
    cdef Py_ssize_t deg, k
    cdef object c, h, t, a, best_key, key
    cdef long best_col
    for r in rows:
        v = dict(r)
        for item in ech:
            c = v.get((<tuple> item)[0])
            if c is not None:
                v = row_combine(
                    <list> (<tuple> item)[1], v, <list> c,
                    <list> (<tuple> item)[2], stride, red,
                )
                strip_int_content(v)
        if not v:
            continue
        if content_hook is not None:
            v = content_hook(v)
        best_key = None
        best_col = -1
        for col, p in v.items():
            deg = len(p) // stride - 1
            h = 0
            for k in range(len(p)):
                t = p[k]
                a = -t if t < 0 else t
                if a > h:
                    h = a
            key = (deg, h, col)
            if best_key is None or key < best_key:
                best_key = key
                best_col = col
        pp = list(<list> v[best_col])
        erow = sorted(v.items())
        ech.append((best_col, pp, erow))
        pivots.append((best_col, pp))
        if len(ech) == ncols:
            break
    return len(ech), pivots
