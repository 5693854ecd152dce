"""Necessary criteria for one algebra being a degeneration of another.

If L contracts properly onto L0 (a limit of basis changes collapses L's
bracket onto L0's), the step functions cannot move freely:

  C1  psi_L(x)  <= psi_L0(x)   at every x
  C2  psi_L(1)  <  psi_L0(1)   (the derivation algebra must grow)
  C3  phi_L(x)  <= phi_L0(x)   at every x
  C4  phi0_L(x) <= phi0_L0(x)  at every x

plus, for any constant symmetric twist kappa, dim Z^q(L, ad, kappa) <=
dim Z^q(L0, ad, kappa); callers can add such checks via extra_kappas.

A failed criterion EXCLUDES the contraction, with an exact witness
point.  All criteria passing proves nothing in general -- the verdict
then reads "admissible by these criteria" -- except in dimension 3,
where C1 and C2 together are also sufficient: decide3d settles
existence outright, and contraction_graph3d draws the full directed
graph over the three-dimensional catalog rows.
"""

from .exactmath import BASE, Scalar, format_scalar
from .invariant import leq_pointwise, phi, phi0, psi
from .paramlinalg import bareiss_generic_rank
from .cocycle import build_general
from . import catalog

__all__ = [
    "ContractionReport",
    "CriterionResult",
    "contraction_graph3d",
    "criteria_report",
    "decide3d",
]


class CriterionResult:
    __slots__ = ("name", "test", "passed", "witness", "value", "value0")

    def __init__(self, name, test, passed, witness=None, value=None, value0=None):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "test", test)
        object.__setattr__(self, "passed", bool(passed))
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "value0", value0)

    def __setattr__(self, name, value):
        raise AttributeError("CriterionResult is immutable")

    def to_jsonable(self):
        w = self.witness
        if isinstance(w, Scalar):
            w = format_scalar(w)
        elif w is not None:
            w = str(w)
        return {
            "name": self.name,
            "test": self.test,
            "passed": self.passed,
            "witness": w,
            "value_L": self.value,
            "value_L0": self.value0,
        }

    def __repr__(self):
        return "CriterionResult(%s: %s)" % (
            self.name,
            "pass" if self.passed else "fail",
        )


class ContractionReport:
    """Criterion-by-criterion record for the candidate contraction
    L -> L0; excluded as soon as one necessary condition fails."""

    __slots__ = ("name", "name0", "criteria")

    def __init__(self, name, name0, criteria):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "name0", name0)
        object.__setattr__(self, "criteria", tuple(criteria))

    def __setattr__(self, name, value):
        raise AttributeError("ContractionReport is immutable")

    def passed(self):
        return all(c.passed for c in self.criteria)

    @property
    def verdict(self):
        return "admissible by these criteria" if self.passed() else "excluded"

    def to_jsonable(self):
        return {
            "from": self.name,
            "to": self.name0,
            "criteria": [c.to_jsonable() for c in self.criteria],
            "verdict": self.verdict,
        }

    def __repr__(self):
        return "ContractionReport(%s -> %s: %s)" % (self.name, self.name0, self.verdict)


def _value_near(f, point):
    if isinstance(point, Scalar):
        return f.value_at(point)
    return f.evaluate(point)[0][1]


def _leq_criterion(name, test, f, f0):
    ok, witness = leq_pointwise(f, f0)
    if ok:
        return CriterionResult(name, test, True)
    return CriterionResult(
        name, test, False, witness, _value_near(f, witness), _value_near(f0, witness)
    )


def _dim_z(lie, kappa):
    m = build_general(lie, kappa)
    return m.cols - bareiss_generic_rank(m)[0]


def criteria_report(lie, lie0, extra_kappas=()):
    """Run every necessary contraction criterion on the candidate
    lie -> lie0; extra_kappas adds constant-twist cocycle comparisons."""
    if lie.dim != lie0.dim:
        raise ValueError("contractions keep the dimension fixed")
    one = BASE.scalar(1)
    try:
        P, P0 = psi(lie), psi(lie0)
        crits = [
            _leq_criterion("C1", "psi(L) <= psi(L0) pointwise", P, P0),
            CriterionResult(
                "C2",
                "psi(L)(1) < psi(L0)(1)",
                P.value_at(one) < P0.value_at(one),
                one,
                P.value_at(one),
                P0.value_at(one),
            ),
            _leq_criterion(
                "C3", "phi(L) <= phi(L0) pointwise", phi(lie), phi(lie0)
            ),
            _leq_criterion(
                "C4", "phi0(L) <= phi0(L0) pointwise", phi0(lie), phi0(lie0)
            ),
        ]
        for k, kappa in enumerate(extra_kappas, start=1):
            if not all(p.is_constant() for row in kappa.entries for p in row):
                raise ValueError("extra twist matrices must be constant")
            d, d0 = _dim_z(lie, kappa), _dim_z(lie0, kappa)
            crits.append(
                CriterionResult(
                    "K%d" % k,
                    "dim Z^%d(L, kappa_%d) <= dim Z^%d(L0, kappa_%d)"
                    % (kappa.q, k, kappa.q, k),
                    d <= d0,
                    None,
                    d,
                    d0,
                )
            )
    except TypeError:
        raise ValueError(
            "the two algebras live over incompatible extensions; "
            "rebuild them over a common tower first"
        )
    return ContractionReport(lie.name or "L", lie0.name or "L0", crits)


def decide3d(lie, lie0):
    """Whether a proper contraction lie -> lie0 exists; in dimension 3
    the psi criteria C1 and C2 are necessary AND sufficient."""
    if lie.dim != 3 or lie0.dim != 3:
        raise ValueError("decide3d settles three-dimensional contractions only")
    one = BASE.scalar(1)
    P, P0 = psi(lie), psi(lie0)
    return leq_pointwise(P, P0)[0] and P.value_at(one) < P0.value_at(one)


def contraction_graph3d():
    """The full proper-contraction graph over the three-dimensional
    catalog rows (parametric row taken at a = 2); edges as ordered
    (name, name0) pairs, nodes in catalog order."""
    nodes = []
    for e in catalog.list_entries(3):
        lie = catalog.instantiate(e.name, e.sample_values() if e.params else {})
        nodes.append((lie.name, psi(lie)))
    one = BASE.scalar(1)
    edges = []
    for name, P in nodes:
        for name0, P0 in nodes:
            if name == name0:
                continue
            if leq_pointwise(P, P0)[0] and P.value_at(one) < P0.value_at(one):
                edges.append((name, name0))
    return [n for n, _ in nodes], edges
