"""Matrices of polynomials in the twist variable.

ParamMatrix rows are stored sparsely as sorted (col, Poly) pairs; the
cocycle systems this module analyzes have a handful of nonzero entries
per row but can have thousands of rows.  Entries all live over one
FieldTower; mixing towers at construction lifts base-field entries into
the common extension.  Instances are immutable.
"""

from ..exactmath.poly import Poly
from ..exactmath.tower import BASE, common_tower

__all__ = ["ParamMatrix", "stack_systems"]


class ParamMatrix:
    __slots__ = ("rows", "cols", "tower", "_data")

    def __init__(self, rows, cols, data, tower=None):
        """data: iterable of sparse rows, each an iterable of (col, Poly)
        with 0 <= col < cols; zero polys are dropped, duplicate columns
        within a row are an error."""
        if rows < 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        norm = []
        t = tower or BASE
        staged = []
        for r in data:
            row = sorted((c, p) for c, p in r if not p.is_zero())
            cs = [c for c, _ in row]
            if len(set(cs)) != len(cs):
                raise ValueError("duplicate column in sparse row")
            if cs and (cs[0] < 0 or cs[-1] >= cols):
                raise ValueError("column index out of range")
            for _, p in row:
                t = common_tower(t, p.tower)
            staged.append(row)
        if len(staged) != rows:
            raise ValueError("row count mismatch")
        for row in staged:
            norm.append(tuple((c, p.lift(t)) for c, p in row))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "tower", t)
        object.__setattr__(self, "_data", tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("ParamMatrix is immutable")

    @staticmethod
    def from_dense(entries, tower=None):
        """Build from a dense list of lists of Poly/Scalar/int."""
        rows = len(entries)
        cols = len(entries[0]) if rows else 1
        data = []
        for r in entries:
            if len(r) != cols:
                raise ValueError("ragged dense matrix")
            row = []
            for c, e in enumerate(r):
                p = e if isinstance(e, Poly) else Poly.constant(e)
                if not p.is_zero():
                    row.append((c, p))
            data.append(row)
        return ParamMatrix(rows, max(cols, 1), data, tower)

    def sparse_rows(self):
        return self._data

    def entry(self, i, j):
        for c, p in self._data[i]:
            if c == j:
                return p
            if c > j:
                break
        return Poly.zero(self.tower)

    def dense(self):
        return [
            [self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)
        ]

    def evaluate_at(self, point):
        """Rows of Scalars: every entry evaluated at the Scalar point."""
        out = []
        for row in self._data:
            out.append([(c, p.eval(point)) for c, p in row])
        return out

    def max_entry_degree(self):
        d = 0
        for row in self._data:
            for _, p in row:
                if p.degree > d:
                    d = p.degree
        return d

    def __eq__(self, other):
        if not isinstance(other, ParamMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __repr__(self):
        return "ParamMatrix(%dx%d, %d nonzero)" % (
            self.rows,
            self.cols,
            sum(len(r) for r in self._data),
        )


def stack_systems(m1, m2):
    """Row concatenation; the kernel of the stack is the intersection."""
    if m1.cols != m2.cols:
        raise ValueError("stacked systems must have equal column counts")
    return ParamMatrix(
        m1.rows + m2.rows, m1.cols, list(m1.sparse_rows()) + list(m2.sparse_rows())
    )
