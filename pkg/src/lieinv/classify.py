"""Identify an algebra inside the catalog from its step functions alone.

The bracket tables never enter the comparison: the invariant values do.
For dimension 3 either psi or phi0 separates all catalog rows; for
dimension 4 the pair (psi, phi) does.  Matching happens in two stages:

1. occurrence signatures (value -> number of exceptional points) pick
   the catalog entry; the routing tables are generated from the fixture
   tables, and generation fails loudly if two entries ever collide;
2. for parametric entries the parameter is read off the exceptional
   points themselves, one short rule per entry, and the candidate is
   accepted only if the entry's fixture tables at that value reproduce
   the computed step functions exactly.

Exceptional points may come back from the kernel profile merged into
one square-free modulus, so recovery starts by splitting branches into
exact roots: Q(i) roots by trial division over the Gaussian integers,
quadratic remainders by an explicit square root in the tower (adjoining
a fresh square root when the algebra itself lives over plain Q(i)).

Recovered parameters are normalised to a canonical orbit representative
(minimal under the Scalar total order), so two isomorphic inputs always
produce identical Identifications.
"""

from itertools import permutations
from math import lcm

from gmpy2 import isqrt, mpq

from . import catalog
from .catalog import CatalogError
from .exactmath import BASE, FieldTower, GaussianRational, Poly, Scalar, format_scalar
from .invariant import phi, phi0, psi, signature, step_equal

__all__ = [
    "ClassifyError",
    "Identification",
    "canonical_params",
    "catalog_isomorphic",
    "classify3",
    "exact_roots",
    "identify4",
]


class ClassifyError(ValueError):
    pass


# -- exact roots of a square-free modulus -----------------------------------


def _mpq_sqrt(q):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    a, b = isqrt(num), isqrt(den)
    if a * a == num and b * b == den:
        return mpq(a) / mpq(b)
    return None


def _gauss_sqrt(g):
    """A square root of g in Q(i), or None if there is none."""
    re, im = g.re, g.im
    if not im:
        r = _mpq_sqrt(re)
        if r is not None:
            return GaussianRational(r, 0)
        r = _mpq_sqrt(-re)
        return None if r is None else GaussianRational(0, r)
    n = _mpq_sqrt(re * re + im * im)
    if n is None:
        return None
    x = _mpq_sqrt((re + n) / 2)
    if x is None or not x:
        return None
    # (x + yi)^2 = g holds identically once x^2 = (re + |g|)/2 and y = im/2x
    return GaussianRational(x, im / (2 * x))


def _factor_int(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _two_squares(p):
    """Write a prime p = 1 (mod 4) as a^2 + b^2 (Hermite-Serret)."""
    r = 2
    while pow(r, (p - 1) // 2, p) != p - 1:
        r += 1
    x = pow(r, (p - 1) // 4, p)
    r0, r1 = p, x
    while r1 * r1 > p:
        r0, r1 = r1, r0 % r1
    a, b = r1, r0 % r1
    if a * a + b * b != p:
        raise ArithmeticError("two-squares decomposition failed for %d" % p)
    return a, b


def _gdiv(z, w):
    """Exact quotient of Gaussian integers (as int pairs), or None."""
    a, b = z
    c, d = w
    n = c * c + d * d
    re, im = a * c + b * d, b * c - a * d
    if re % n or im % n:
        return None
    return re // n, im // n


def _gaussian_divisors(z):
    """All divisors of a nonzero Gaussian integer, up to units."""
    a, b = z
    n = a * a + b * b
    if n == 1:
        return [(1, 0)]
    prime_powers = []
    for p in _factor_int(n):
        if p == 2:
            pis = [(1, 1)]
        elif p % 4 == 3:
            pis = [(p, 0)]
        else:
            c, d = _two_squares(p)
            pis = [(c, d), (c, -d)]
        for pi in pis:
            k, w = 0, (a, b)
            while True:
                q = _gdiv(w, pi)
                if q is None:
                    break
                w, k = q, k + 1
            if k:
                prime_powers.append((pi, k))
    divs = [(1, 0)]
    for (c, d), k in prime_powers:
        grown = []
        for e, f in divs:
            for _ in range(k + 1):
                grown.append((e, f))
                e, f = e * c - f * d, e * d + f * c
        divs = grown
    return list(dict.fromkeys(divs))


def _base_roots(coeffs):
    """All Q(i) roots of a polynomial given by Gaussian coefficients
    (ascending, nonzero constant term), by trial division: a root p/q
    must have p dividing the constant and q the leading coefficient."""
    den = 1
    for c in coeffs:
        den = lcm(den, int(c.re.denominator), int(c.im.denominator))
    ints = [(int(c.re * den), int(c.im * den)) for c in coeffs]
    units = ((1, 0), (0, 1), (-1, 0), (0, -1))
    roots, seen = [], set()
    for pa, pb in _gaussian_divisors(ints[0]):
        for qa, qb in _gaussian_divisors(ints[-1]):
            qn = qa * qa + qb * qb
            for ua, ub in units:
                na, nb = ua * pa - ub * pb, ua * pb + ub * pa
                key = (mpq(na * qa + nb * qb, qn), mpq(nb * qa - na * qb, qn))
                if key in seen:
                    continue
                seen.add(key)
                cand = GaussianRational(*key)
                acc = GaussianRational(*[mpq(v) for v in ints[-1]])
                for av, bv in reversed(ints[:-1]):
                    acc = acc * cand + GaussianRational(mpq(av), mpq(bv))
                if acc.is_zero():
                    roots.append(cand)
    return roots


def _scalar_sqrt(d):
    """A Scalar y with y*y == d inside d's own tower, or None."""
    t = d.tower
    if t.is_base():
        g = _gauss_sqrt(d.as_gaussian())
        return None if g is None else t.scalar(g)
    if t.degree != 2:
        raise NotImplementedError(
            "square roots are only supported over quadratic extensions"
        )
    c0, c1 = t.minpoly[0], t.minpoly[1]
    d0, d1 = d.coeffs
    # y = u + v*s, s^2 = -c0 - c1*s:  y^2 = (u^2 - c0 v^2) + (2uv - c1 v^2) s
    if d1.is_zero():
        u = _gauss_sqrt(d0)
        if u is not None:
            return t.scalar(u)
        denom = c1 * c1 - c0 * 4
        if not denom.is_zero():
            v = _gauss_sqrt(d0 * 4 / denom)
            if v is not None:
                y = t.scalar(c1 * v / 2) + t.gen() * v
                if y * y == d:
                    return y
        return None
    a2 = c1 * c1 - c0 * 4
    b1 = c1 * d1 * 2 - d0 * 4
    c = d1 * d1
    sw = _gauss_sqrt(b1 * b1 - a2 * c * 4)
    if sw is None:
        return None
    for w in ((sw - b1) / (a2 * 2), (-sw - b1) / (a2 * 2)):
        if w.is_zero():
            continue
        v = _gauss_sqrt(w)
        if v is None:
            continue
        y = t.scalar((d1 + c1 * w) / (v * 2)) + t.gen() * v
        if y * y == d:
            return y
    return None


def exact_roots(modulus):
    """All roots of a square-free Poly, as Scalars.

    Roots are found over the modulus' own tower; an irreducible
    quadratic over plain Q(i) gets a fresh square-root extension
    adjoined so its roots still come back exactly.  Remainders that
    would need anything beyond one quadratic extension raise
    NotImplementedError.
    """
    t = modulus.tower
    m = modulus.monic()
    roots = []
    if m.degree >= 1 and m.constant_term().is_zero():
        roots.append(t.zero())
        m = m // Poly.x(t)
    gauss = [c.as_gaussian() for c in m.coeffs]
    if m.degree >= 2 and all(g is not None for g in gauss):
        found = [t.scalar(g) for g in _base_roots(gauss)]
        if found:
            roots.extend(found)
            q, r = m.divmod(Poly.from_roots(found))
            if not r.is_zero():
                raise ArithmeticError("root deflation left a remainder")
            m = q
    if m.degree == 1:
        roots.append(-m.constant_term())
    elif m.degree == 2:
        p, q = m.coeffs[1], m.coeffs[0]
        y = _scalar_sqrt(p * p - q * 4)
        if y is not None:
            roots.extend([(y - p) / 2, (-y - p) / 2])
        elif t.is_base():
            ext = FieldTower("s", [q.as_gaussian(), p.as_gaussian(), 1])
            s = ext.gen()
            roots.extend([s, -s - ext.scalar(p.as_gaussian())])
        else:
            raise NotImplementedError(
                "branch splitting needs a second extension over %r"
                % t.minpoly_text()
            )
    elif m.degree >= 3:
        raise NotImplementedError(
            "cannot split a residual branch of degree %d" % m.degree
        )
    return sorted(roots, key=lambda r: r.key())


def _points_at(f, value):
    """The exact exceptional points of a step function at one value."""
    pts = []
    for br, v in f.exceptional:
        if v != value:
            continue
        if br.degree == 1:
            pts.append(br.point())
        else:
            pts.extend(exact_roots(br.modulus))
    return sorted(pts, key=lambda p: p.key())


# -- signature routing tables ------------------------------------------------


def _fixture_signature(entry, fam):
    generic, pairs = entry.tables[fam]
    counts = {}
    for _, v in pairs:
        counts[v] = counts.get(v, 0) + 1
    occ = tuple(sorted(counts.items(), key=lambda p: (-p[0], p[1])))
    return ",".join(["%d_%d" % p for p in occ] + [str(generic)])


_ROUTES = {}


def _routes(dim, families):
    """(signature tuple) -> entry name, generated from the fixture tables."""
    key = (dim, families)
    if key not in _ROUTES:
        table = {}
        for e in catalog.list_entries(dim):
            sig = tuple(_fixture_signature(e, f) for f in families)
            if sig in table:
                raise ArithmeticError(
                    "fixture signatures collide: %s vs %s" % (table[sig], e.name)
                )
            table[sig] = e.name
        _ROUTES[key] = table
    return _ROUTES[key]


# -- parameter recovery ------------------------------------------------------

# Each rule reads the free parameters of one parametric entry off the
# exceptional points; it may return several candidates, and the caller
# keeps the first one whose fixture tables reproduce the computed step
# functions.  Filters quote the fixed points sharing the read value.


def _rule_pair_13(P, F):
    # a and b from the three phi = 13 points a+b, (1+a)/b, (1+b)/a
    cands = []
    for z2, z3 in permutations(_points_at(F, 13), 2):
        if (z2 + 1).is_zero():
            continue
        cands.append({"a": (z3 + 1) / (z2 + 1), "b": (z2 * z3 - 1) / (z2 + 1)})
    return cands


_RULES4 = {
    "g3.4(a)+g1": lambda P, F: [{"a": z} for z in _points_at(P, 6) if z != 1],
    "g4.2(a)": lambda P, F: [
        {"a": z1 - 1}
        for z1, z2 in permutations(_points_at(F, 13), 2)
        if not z2.is_zero() and z1 - 1 == 2 / z2
    ],
    "g4.5(a,b)": _rule_pair_13,
    "g4.5(a,-1-a)": lambda P, F: [{"a": z} for z in _points_at(P, 5)],
    "g4.5(a,a^2)": lambda P, F: [{"a": z} for z in _points_at(P, 6) if z != 1],
    "g4.5(a,1)": lambda P, F: [{"a": z - 1} for z in _points_at(F, 15)],
    "g4.5(a,-1)": lambda P, F: [{"a": z + 1} for z in _points_at(F, 13)],
    "g4.8(a)": lambda P, F: [{"a": z} for z in _points_at(P, 4) if z != 2],
}

_RULES3 = {
    ("g3.4(a)", "psi"): lambda f: [{"a": z} for z in _points_at(f, 4) if z != 1],
    ("g3.4(a)", "phi0"): lambda f: [{"a": z - 1} for z in _points_at(f, 1)],
}


# -- canonical parameter orbits ----------------------------------------------

# Parameter values that generate isomorphic algebras within one entry.
# Entries not listed have rigid parameters (or none).


def _inv(d):
    return {"a": 1 / d["a"]}


_ORBITS = {
    "g3.4(a)": (_inv,),
    "g3.4(a)+g1": (_inv,),
    "g4.8(a)": (_inv,),
    "g4.5(a,a^2)": (_inv,),
    "g4.5(a,-1)": (lambda d: {"a": -d["a"]},),
    "g4.5(a,-1-a)": (
        _inv,
        lambda d: {"a": -1 - d["a"]},
        lambda d: {"a": -1 / (1 + d["a"])},
        lambda d: {"a": -d["a"] / (1 + d["a"])},
        lambda d: {"a": -(1 + d["a"]) / d["a"]},
    ),
    "g4.5(a,b)": (
        lambda d: {"a": d["b"], "b": d["a"]},
        lambda d: {"a": 1 / d["a"], "b": d["b"] / d["a"]},
        lambda d: {"a": d["b"] / d["a"], "b": 1 / d["a"]},
        lambda d: {"a": 1 / d["b"], "b": d["a"] / d["b"]},
        lambda d: {"a": d["a"] / d["b"], "b": 1 / d["b"]},
    ),
}


def canonical_params(label, params=None):
    """The canonical full parameter map for a catalog label: the orbit
    member minimal under the Scalar total order, pins re-evaluated."""
    fam, e, full = catalog._resolve(label, params)
    free = {p: full[p] for p in e.params}
    best, best_key = full, tuple(full[p].key() for p in fam.params)
    for move in _ORBITS.get(e.name, ()):
        cand = move(free)
        cand_full = e.resolve(cand)
        if e.violated(cand_full) is not None:
            continue
        k = tuple(cand_full[p].key() for p in fam.params)
        if k < best_key:
            best, best_key = cand_full, k
    return {p: best[p] for p in fam.params}


def catalog_isomorphic(one, other):
    """Whether two (label, params) catalog descriptions give isomorphic
    algebras: same entry, equal canonical parameters."""
    label1, params1 = one
    label2, params2 = other
    e1 = catalog._resolve(label1, params1)[1]
    e2 = catalog._resolve(label2, params2)[1]
    if e1.name != e2.name:
        return False
    c1 = canonical_params(label1, params1)
    c2 = canonical_params(label2, params2)
    return all(c1[p] == c2[p] for p in c1)


# -- identification ----------------------------------------------------------


class Identification:
    """A catalog match: label, canonical parameters, and the signatures
    that decided it.  instantiate(label, params) reproduces the input's
    step functions."""

    __slots__ = ("label", "entry", "params", "evidence")

    def __init__(self, label, entry, params, evidence):
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "entry", entry)
        object.__setattr__(self, "params", dict(params))
        object.__setattr__(self, "evidence", dict(evidence))

    def __setattr__(self, name, value):
        raise AttributeError("Identification is immutable")

    def name(self):
        if not self.params:
            return self.label
        inner = ",".join(format_scalar(v) for v in self.params.values())
        return "%s(%s)" % (self.label, inner)

    def to_jsonable(self):
        return {
            "label": self.label,
            "params": {p: format_scalar(v) for p, v in self.params.items()},
            "evidence": dict(self.evidence),
        }

    def __eq__(self, other):
        if not isinstance(other, Identification):
            return NotImplemented
        return (
            self.entry == other.entry
            and self.params == other.params
            and self.evidence == other.evidence
        )

    def __str__(self):
        return self.name()

    def __repr__(self):
        return "Identification(%s)" % self


def _accept(name, candidates, computed):
    """First candidate parameter map whose fixture tables reproduce
    every computed step function; None if none does."""
    for free in candidates:
        ok = True
        for fam, f in computed:
            try:
                expected = catalog.expected_table(name, free, fam)
                ok = step_equal(f, expected)
            except (CatalogError, TypeError):
                ok = False
            if not ok:
                break
        if ok:
            return free
    return None


def _identified(name, free, evidence):
    e = catalog.entry(name)
    full = canonical_params(name, free)
    return Identification(e.label, name, full, evidence)


def classify3(lie, method="psi"):
    """Identify a 3-dimensional algebra from one invariant family alone
    (psi or phi0); both methods give the same answer."""
    if lie.dim != 3:
        raise ClassifyError("classify3 needs a 3-dimensional algebra")
    if method not in ("psi", "phi0"):
        raise ClassifyError("method must be 'psi' or 'phi0'")
    f = psi(lie) if method == "psi" else phi0(lie)
    sig = str(signature(f))
    name = _routes(3, (method,)).get((sig,))
    if name is None:
        raise ClassifyError("no 3-dimensional catalog entry has %s = %s" % (method, sig))
    rule = _RULES3.get((name, method))
    free = _accept(name, rule(f) if rule else [{}], [(method, f)])
    if free is None:
        raise ClassifyError(
            "%s matches the %s signature of %s but no recovered parameter "
            "reproduces its table" % (lie.name or "algebra", method, name)
        )
    return _identified(name, free, {method: sig})


def identify4(lie):
    """Identify a 4-dimensional algebra from its psi and phi tables."""
    if lie.dim != 4:
        raise ClassifyError("identify4 needs a 4-dimensional algebra")
    P, F = psi(lie), phi(lie)
    sig = (str(signature(P)), str(signature(F)))
    name = _routes(4, ("psi", "phi")).get(sig)
    if name is None:
        raise ClassifyError(
            "no 4-dimensional catalog entry has psi = %s and phi = %s" % sig
        )
    rule = _RULES4.get(name)
    free = _accept(name, rule(P, F) if rule else [{}], [("psi", P), ("phi", F)])
    if free is None:
        raise ClassifyError(
            "%s matches the signatures of %s but no recovered parameters "
            "reproduce its tables" % (lie.name or "algebra", name)
        )
    return _identified(name, free, {"psi": sig[0], "phi": sig[1]})
