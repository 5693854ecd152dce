"""Exact invariants of finite-dimensional complex Lie algebras.

Dimensions of twisted cocycle spaces, viewed as integer step functions of
one twist parameter, computed entirely in exact arithmetic over Q(i)
(optionally one quadratic extension): parametric linear systems are
reduced by fraction-free elimination, exceptional twist values are
certified by evaluation on branches of the certificate polynomial.  On
top of that sit the invariant families psi/phi/phi0, a catalog of the
low-dimensional algebras with their expected tables, identification of
3- and 4-dimensional algebras from invariants alone, and necessary
criteria for the existence of contractions.
"""

__version__ = "0.1.0"
