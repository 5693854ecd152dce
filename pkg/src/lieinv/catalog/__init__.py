"""The algebra inventory: every complex Lie algebra of dimension 2-4 as
printed in the classification tables, plus the 8-dimensional nilpotent
continuum L17.7(a), together with the expected psi/phi/phi0 tables as
machine-readable fixtures.

A *family* (one data/ file) is a bracket template over named parameters
in the shared algebra file format.  An *entry* (one row of a fixtures/
file) pins some parameters and/or excludes values, and carries the
expected step-function tables; the entries of a family partition its
admissible parameter space, so instantiate() dispatches on the first
entry whose region contains the given values.  Exclusion lists are
exactly the printed constraints -- they are what routes e.g. (a,b) with
b = a^2 past the generic g4.5 region into the g4.5(a,a^2) row.

Values for parameters may be given as ints, rationals, Scalars or
literal strings; literals that mention an extension generator (the
sqrt(3)/sqrt(7) entries) are parsed over the tower the entry declares.
"""

import json
from importlib import resources

from ..exactmath import BASE, FieldTower, ParseError, Scalar, format_scalar, parse_scalar
from ..exactmath.tower import common_tower
from ..invariant import StepFunction
from ..liealg import LieAlgebra, validate

__all__ = [
    "CatalogEntry",
    "CatalogError",
    "Family",
    "entry",
    "expected_table",
    "families",
    "family",
    "instantiate",
    "list_entries",
]

_FAMILY_ORDER = (
    "2g1", "g2.1",
    "3g1", "g2.1+g1", "g3.1", "g3.2", "g3.3", "g3.4", "sl2",
    "4g1", "g2.1+2g1", "g2.1+g2.1", "g3.1+g1", "g3.2+g1", "g3.3+g1",
    "g3.4+g1", "sl2+g1", "g4.1", "g4.2", "g4.3", "g4.4", "g4.5",
    "g4.7", "g4.8",
    "L17.7",
)

_TABLE_FAMILIES = ("psi", "phi", "phi0")


class CatalogError(ValueError):
    """Unknown label, missing/extra parameters, or an excluded value."""


class Family:
    """Bracket template: label, dim, parameter names, literal brackets."""

    __slots__ = ("label", "dim", "params", "brackets", "entries")

    def __init__(self, label, dim, params, brackets, entries):
        self.label = label
        self.dim = dim
        self.params = tuple(params)
        self.brackets = brackets
        self.entries = tuple(entries)

    def __repr__(self):
        return "Family(%s, dim %d)" % (self.label, self.dim)


class CatalogEntry:
    """One classification row: a region of a family plus its tables."""

    __slots__ = (
        "name", "label", "dim", "family_params", "params", "pins",
        "excluded", "constraint", "extension", "sample", "tables",
    )

    def __init__(self, raw, label, dim, family_params):
        self.name = raw["name"]
        self.label = label
        self.dim = dim
        self.family_params = tuple(family_params)
        self.params = tuple(raw.get("params", ()))
        self.pins = dict(raw.get("pins", {}))
        self.excluded = {k: tuple(v) for k, v in raw.get("excluded", {}).items()}
        self.constraint = raw.get("constraint")
        ext = raw.get("extension")
        self.extension = (
            FieldTower.parse(ext["generator"], ext["minpoly"]) if ext else None
        )
        self.sample = dict(raw.get("sample", {}))
        self.tables = {
            k: (t["generic"], tuple((p, v) for p, v in t["exceptional"]))
            for k, t in raw["tables"].items()
        }

    def __repr__(self):
        return "CatalogEntry(%s)" % self.name

    def _eval_tower(self, values):
        t = self.extension or BASE
        for v in values:
            t = common_tower(t, v.tower)
        return t

    def resolve(self, free):
        """Free-parameter values -> full family-parameter map (pins filled)."""
        t = self._eval_tower(free.values())
        full = dict(free)
        for name, expr in self.pins.items():
            full[name] = parse_scalar(expr, t, params=free)
        return full

    def violated(self, given):
        """The first excluded value hit by `given`, as (param, literal),
        or None when the values lie in this entry's region."""
        t = self._eval_tower(given.values())
        for p, exprs in self.excluded.items():
            for expr in exprs:
                if given[p] == parse_scalar(expr, t, params=given):
                    return (p, expr)
        return None

    def matches(self, given):
        """Does the full family-parameter map land in this region?"""
        free = {p: given[p] for p in self.params}
        full = self.resolve(free)
        if any(full[p] != given[p] for p in self.pins):
            return False
        return self.violated(given) is None

    def sample_values(self):
        t = self.extension or BASE
        return {p: parse_scalar(v, t) for p, v in self.sample.items()}


def _read(kind, stem):
    res = resources.files(__package__) / kind / (stem + ".json")
    return json.loads(res.read_text(encoding="utf-8"))


_BY_LABEL = None
_BY_NAME = None


def _load():
    global _BY_LABEL, _BY_NAME
    if _BY_LABEL is None:
        by_label, by_name = {}, {}
        for label in _FAMILY_ORDER:
            data = _read("data", label)
            fix = _read("fixtures", label)
            entries = [
                CatalogEntry(raw, label, data["dim"], data.get("params", ()))
                for raw in fix["entries"]
            ]
            by_label[label] = Family(
                label, data["dim"], data.get("params", ()), data["brackets"], entries
            )
            for e in entries:
                by_name[e.name] = e
        _BY_LABEL, _BY_NAME = by_label, by_name
    return _BY_LABEL, _BY_NAME


def families():
    return tuple(_load()[0].values())


def family(label):
    fam = _load()[0].get(label)
    if fam is None:
        raise CatalogError("unknown catalog label %r" % label)
    return fam


def entry(name):
    e = _load()[1].get(name)
    if e is None:
        raise CatalogError("unknown catalog entry %r" % name)
    return e


def list_entries(dim=None):
    out = []
    for fam in families():
        if dim is None or fam.dim == dim:
            out.extend(fam.entries)
    return out


def _coerce_value(name, value, towers):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        err = None
        for t in (BASE, *towers):
            try:
                return parse_scalar(value, t)
            except ParseError as exc:
                err = exc
        raise CatalogError("cannot parse value for %s: %s" % (name, err))
    try:
        return BASE.scalar(value)
    except TypeError as exc:
        raise CatalogError("cannot coerce value for %s: %s" % (name, exc))


def _coerce_params(fam, wanted, params):
    params = params or {}
    if params and not wanted:
        raise CatalogError("%s takes no parameters" % fam.label)
    extra = set(params) - set(wanted)
    if extra:
        raise CatalogError(
            "%s does not take parameter(s) %s"
            % (fam.label, ", ".join(sorted(extra)))
        )
    missing = [p for p in wanted if p not in params]
    if missing:
        raise CatalogError(
            "%s needs value(s) for %s" % (fam.label, ", ".join(missing))
        )
    towers = [e.extension for e in fam.entries if e.extension is not None]
    return {p: _coerce_value(p, params[p], towers) for p in wanted}


def _generic_entry(fam):
    return max(fam.entries, key=lambda e: (len(e.params), fam.entries.index(e)))


def _refuse(fam, given):
    gen = _generic_entry(fam)
    shown = ", ".join("%s=%s" % (p, format_scalar(given[p])) for p in fam.params)
    why = " (%s)" % gen.constraint if gen.constraint else ""
    raise CatalogError("%s: excluded parameter value %s%s" % (fam.label, shown, why))


def _resolve(label, params):
    """label (family or entry name) + params -> (family, entry, full map)."""
    by_label, by_name = _load()
    if label in by_name and label not in by_label:
        e = by_name[label]
        fam = by_label[e.label]
        free = _coerce_params(fam, e.params, params)
        full = e.resolve(free)
        if e.violated(full) is not None:
            _refuse(fam, full)
        return fam, e, full
    fam = family(label)
    given = _coerce_params(fam, fam.params, params)
    t = BASE
    try:
        for v in given.values():
            t = common_tower(t, v.tower)
    except TypeError:
        raise CatalogError(
            "%s: parameter values lie over incompatible extensions" % fam.label
        )
    for e in fam.entries:
        if e.matches(given):
            return fam, e, given
    _refuse(fam, given)


def instantiate(label, params=None):
    """Build the validated LieAlgebra for a catalog label at exact
    parameter values; refuses values outside every printed region."""
    fam, _, given = _resolve(label, params)
    t = BASE
    for v in given.values():
        t = common_tower(t, v.tower)
    brackets = {}
    for key, vec in fam.brackets.items():
        i, j = (int(p) for p in key.split(","))
        brackets[(i, j)] = {
            int(k): parse_scalar(expr, t, params=given) for k, expr in vec.items()
        }
    if fam.params:
        name = "%s(%s)" % (
            fam.label,
            ",".join(format_scalar(given[p]) for p in fam.params),
        )
    else:
        name = fam.label
    lie = LieAlgebra.from_brackets(fam.dim, brackets, tower=t, name=name)
    report = validate(lie)
    if not report.ok:
        raise CatalogError(
            "catalog instantiation %s failed validation: %s" % (name, report.message())
        )
    return lie


def expected_table(label, params=None, family="psi"):
    """The printed step-function table as a fixture StepFunction, with
    parameter expressions evaluated exactly at the given values."""
    if family not in _TABLE_FAMILIES:
        raise CatalogError("unknown invariant family %r" % family)
    fam, e, given = _resolve(label, params)
    tab = e.tables.get(family)
    if tab is None:
        raise CatalogError("no %s fixture for %s" % (family, e.name))
    generic, pairs = tab
    t = e._eval_tower(given.values())
    pts = [(parse_scalar(expr, t, params=given), v) for expr, v in pairs]
    n = fam.dim
    cols = n * n if family == "psi" else n * n * (n - 1) // 2
    return StepFunction(family, generic, pts, cols)
