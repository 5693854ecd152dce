"""Lie algebras as validated structure-constant tables.

Convention: [e_i, e_j] = sum_k c_{ij}^k e_k with 1-based indices in all
user-facing data; storage keeps the full antisymmetric table so builder
code never branches on index order.  change_basis uses e'_i = sum_r
P_{ri} e_r and solves for the conjugated constants exactly.

The JSON file format (shared with the CLI):

    {"format": 1, "name": "sl2", "dim": 3,
     "extension": {"generator": "s", "minpoly": "s^2-7"},   # optional
     "brackets": {"1,2": {"1": "1"}, "1,3": {"2": "2"}, "2,3": {"3": "1"}}}

Only i<j keys are accepted (antisymmetric completion is automatic),
omitted entries are zero, scalar literals follow the exactmath grammar.
"""

import json

from .exactmath.literals import ParseError, format_scalar, parse_scalar
from .exactmath.tower import BASE, FieldTower, Scalar, common_tower

__all__ = [
    "AlgebraError",
    "LieAlgebra",
    "ValidationReport",
    "change_basis",
    "direct_sum",
    "parse_algebra",
    "serialize",
    "validate",
]


class AlgebraError(ValueError):
    """Malformed algebra description (file format or index errors)."""


class ValidationReport:
    """Result of validate(): ok, or the first violation with its residual."""

    __slots__ = ("ok", "kind", "indices", "residual")

    def __init__(self, ok, kind=None, indices=None, residual=None):
        self.ok = ok
        self.kind = kind
        self.indices = indices
        self.residual = residual

    def __bool__(self):
        return self.ok

    def message(self):
        if self.ok:
            return "ok"
        return "%s violation at %s (residual %s)" % (
            self.kind,
            ",".join(str(i) for i in self.indices),
            self.residual,
        )

    def __repr__(self):
        return "ValidationReport(%s)" % self.message()


class LieAlgebra:
    """dim, full constants table c[i][j][k] (0-based storage), tower, name."""

    __slots__ = ("dim", "constants", "tower", "name")

    def __init__(self, dim, constants, tower=None, name=None):
        if dim < 0:
            raise AlgebraError("dimension must be >= 0")
        t = tower
        if t is None:
            t = BASE
            for row in constants:
                for vec in row:
                    for c in vec:
                        if isinstance(c, Scalar):
                            t = common_tower(t, c.tower)
        tab = []
        for i in range(dim):
            row = []
            for j in range(dim):
                vec = [t.scalar(c) for c in constants[i][j]]
                if len(vec) != dim:
                    raise AlgebraError("constants table has wrong shape")
                row.append(tuple(vec))
            tab.append(tuple(row))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "constants", tuple(tab))
        object.__setattr__(self, "tower", t)
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_brackets(dim, brackets, tower=None, name=None):
        """brackets: {(i,j) 1-based, i<j: {k: Scalar/int/literal-free value}};
        the j>i half is filled in antisymmetrically."""
        t = tower
        if t is None:
            t = BASE
            for vec in brackets.values():
                for val in vec.values():
                    if isinstance(val, Scalar):
                        t = common_tower(t, val.tower)
        tab = [[[t.zero()] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in brackets.items():
            if not (1 <= i < j <= dim):
                raise AlgebraError("bracket key (%s,%s) must satisfy 1 <= i < j <= dim" % (i, j))
            for k, val in vec.items():
                if not (1 <= k <= dim):
                    raise AlgebraError("bracket component %s out of range" % k)
                s = t.scalar(val)
                tab[i - 1][j - 1][k - 1] = s
                tab[j - 1][i - 1][k - 1] = -s
        return LieAlgebra(dim, tab, t, name)

    @staticmethod
    def abelian(dim, tower=None, name=None):
        return LieAlgebra.from_brackets(dim, {}, tower, name)

    # -- access ------------------------------------------------------------

    def c(self, i, j, k):
        """Structure constant with 1-based indices."""
        return self.constants[i - 1][j - 1][k - 1]

    def bracket_vector(self, i, j):
        """[e_i, e_j] as a coefficient tuple (0-based i, j)."""
        return self.constants[i][j]

    def rename(self, name):
        return LieAlgebra(self.dim, self.constants, self.tower, name)

    def is_abelian(self):
        return all(
            c.is_zero() for row in self.constants for vec in row for c in vec
        )

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.tower == other.tower
            and self.constants == other.constants
        )

    def __repr__(self):
        return "LieAlgebra(%s, dim %d)" % (self.name or "?", self.dim)


def validate(lie):
    """Antisymmetry and Jacobi, reporting the first violating tuple."""
    n = lie.dim
    c = lie.constants
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = c[i][j][k] + c[j][i][k]
                if not r.is_zero():
                    return ValidationReport(
                        False, "antisymmetry", (i + 1, j + 1, k + 1), r
                    )
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for s in range(n):
                    acc = lie.tower.zero()
                    for r in range(n):
                        acc = acc + (
                            c[i][j][r] * c[r][k][s]
                            + c[j][k][r] * c[r][i][s]
                            + c[k][i][r] * c[r][j][s]
                        )
                    if not acc.is_zero():
                        return ValidationReport(
                            False, "jacobi", (i + 1, j + 1, k + 1, s + 1), acc
                        )
    return ValidationReport(True)


def direct_sum(l1, l2, name=None):
    """Block sum: cross brackets vanish."""
    t = common_tower(l1.tower, l2.tower)
    n1, n2 = l1.dim, l2.dim
    n = n1 + n2
    tab = [[[t.zero()] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k in range(n1):
                tab[i][j][k] = t.scalar(l1.constants[i][j][k])
    for i in range(n2):
        for j in range(n2):
            for k in range(n2):
                tab[n1 + i][n1 + j][n1 + k] = t.scalar(l2.constants[i][j][k])
    return LieAlgebra(n, tab, t, name)


def _invert_matrix(p, t):
    n = len(p)
    aug = [[t.scalar(p[i][j]) for j in range(n)] + [t.one() if j == i else t.zero() for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not aug[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise AlgebraError("singular basis-change matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [[aug[i][n + j] for j in range(n)] for i in range(n)]


def change_basis(lie, p):
    """New algebra on the basis e'_i = sum_r P_{ri} e_r (P given as rows of
    columns: p[r][i] is the coefficient of e_r in e'_i)."""
    n = lie.dim
    t = lie.tower
    for row in p:
        for v in row:
            if isinstance(v, Scalar):
                t = common_tower(t, v.tower)
    pm = [[t.scalar(p[r][i]) for i in range(n)] for r in range(n)]
    pinv = _invert_matrix(pm, t)
    c = lie.constants
    tab = [[[t.zero()] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # w = [e'_i, e'_j] in the old basis
            w = [t.zero()] * n
            for r in range(n):
                pri = pm[r][i]
                if pri.is_zero():
                    continue
                for s in range(n):
                    psj = pm[s][j]
                    if psj.is_zero():
                        continue
                    f = pri * psj
                    for u in range(n):
                        cu = c[r][s][u]
                        if not cu.is_zero():
                            w[u] = w[u] + f * t.scalar(cu)
            for k in range(n):
                acc = t.zero()
                for u in range(n):
                    if not w[u].is_zero():
                        acc = acc + pinv[k][u] * w[u]
                tab[i][j][k] = acc
    return LieAlgebra(n, tab, t, lie.name)


# -- file format ---------------------------------------------------------------


def _reject_dup_pairs(pairs):
    d = {}
    for k, v in pairs:
        if k in d:
            raise AlgebraError("duplicate key %r in algebra file" % k)
        d[k] = v
    return d


def parse_algebra(text):
    """Parse the JSON algebra format (see module docstring); validates
    structure, not the Jacobi identity (use validate() for that)."""
    try:
        doc = json.loads(text, object_pairs_hook=_reject_dup_pairs)
    except json.JSONDecodeError as e:
        raise AlgebraError("invalid JSON: %s" % e) from e
    if not isinstance(doc, dict):
        raise AlgebraError("algebra file must be a JSON object")
    if doc.get("format", 1) != 1:
        raise AlgebraError("unsupported format version %r" % doc.get("format"))
    if "dim" not in doc or not isinstance(doc["dim"], int) or doc["dim"] < 1:
        raise AlgebraError("missing or invalid 'dim'")
    n = doc["dim"]
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise AlgebraError("'name' must be a string")
    tower = BASE
    if doc.get("extension") is not None:
        ext = doc["extension"]
        if not isinstance(ext, dict) or "generator" not in ext or "minpoly" not in ext:
            raise AlgebraError("'extension' needs 'generator' and 'minpoly'")
        try:
            tower = FieldTower.parse(ext["generator"], ext["minpoly"])
        except (ParseError, ValueError) as e:
            raise AlgebraError("invalid extension: %s" % e) from e
    brackets = {}
    raw = doc.get("brackets", {})
    if not isinstance(raw, dict):
        raise AlgebraError("'brackets' must be an object")
    for key, vec in raw.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise AlgebraError("bracket key %r is not 'i,j'" % key)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise AlgebraError("bracket key %r is not 'i,j'" % key) from None
        if not (1 <= i < j <= n):
            raise AlgebraError(
                "bracket key %r must satisfy 1 <= i < j <= dim" % key
            )
        if not isinstance(vec, dict):
            raise AlgebraError("bracket value for %r must be an object" % key)
        out = {}
        for ks, lit in vec.items():
            try:
                k = int(ks)
            except ValueError:
                raise AlgebraError("component key %r is not an index" % ks) from None
            if not (1 <= k <= n):
                raise AlgebraError("component index %r out of range" % ks)
            if isinstance(lit, bool) or isinstance(lit, float):
                raise AlgebraError("scalar %r must be an int or literal string" % lit)
            if isinstance(lit, int):
                s = tower.scalar(lit)
            elif isinstance(lit, str):
                try:
                    s = parse_scalar(lit, tower)
                except ParseError as e:
                    raise AlgebraError(
                        "bad scalar literal %r in bracket %r: %s" % (lit, key, e)
                    ) from e
            else:
                raise AlgebraError("scalar %r must be an int or literal string" % lit)
            out[k] = s
        brackets[(i, j)] = out
    return LieAlgebra.from_brackets(n, brackets, tower, name)


def serialize(lie):
    """Canonical JSON text; parse_algebra(serialize(L)) == L."""
    doc = {"format": 1}
    if lie.name is not None:
        doc["name"] = lie.name
    doc["dim"] = lie.dim
    if not lie.tower.is_base():
        doc["extension"] = {
            "generator": lie.tower.generator,
            "minpoly": lie.tower.minpoly_text(),
        }
    brackets = {}
    for i in range(lie.dim):
        for j in range(i + 1, lie.dim):
            vec = {}
            for k in range(lie.dim):
                v = lie.constants[i][j][k]
                if not v.is_zero():
                    vec[str(k + 1)] = format_scalar(v)
            if vec:
                brackets["%d,%d" % (i + 1, j + 1)] = vec
    doc["brackets"] = brackets
    return json.dumps(doc, indent=2) + "\n"
