"""Dense matrices of polynomials.

Every map in the construction is a matrix in fixed bases; ranks stay small
(at most a few dozen), so dense storage is the right trade-off.  Entries
are `Poly`; matrices are immutable by convention.
"""

from .errors import NotDivisible, NotUnimodular, ShapeMismatch
from .poly import divide_exact


class PolyMatrix:
    """A rows x cols matrix of polynomials over a common ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries, rows=None, cols=None):
        if rows is None:
            rows = len(entries)
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeMismatch(f"expected {rows}x{cols} entries")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = [list(r) for r in entries]

    @classmethod
    def zero(cls, ring, rows, cols):
        z = ring.zero
        return cls(ring, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, ring, n, value):
        z = ring.zero
        return cls(ring, [[value if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, ring, columns, rows):
        entries = [[col[i] for col in columns] for i in range(rows)]
        return cls(ring, entries, rows, len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def row(self, i):
        return list(self.entries[i])

    def __add__(self, other):
        self._same_shape(other)
        return PolyMatrix(
            self.ring,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other):
        self._same_shape(other)
        return PolyMatrix(
            self.ring,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.entries])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        z = self.ring.zero
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, self.rows, other.cols)

    def __mul__(self, scalar_poly):
        p = (
            scalar_poly
            if hasattr(scalar_poly, "terms")
            else self.ring.constant(scalar_poly)
        )
        return PolyMatrix(self.ring, [[a * p for a in r] for r in self.entries])

    __rmul__ = __mul__

    def transpose(self):
        return PolyMatrix(
            self.ring,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def apply(self, vector):
        """Matrix times a column given as a list of Poly."""
        if len(vector) != self.cols:
            raise ShapeMismatch("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = self.ring.zero
            for k, v in enumerate(vector):
                if v.terms and self.entries[i][k].terms:
                    acc = acc + self.entries[i][k] * v
            out.append(acc)
        return out

    def select_columns(self, indices):
        return PolyMatrix(
            self.ring,
            [[self.entries[i][j] for j in indices] for i in range(self.rows)],
            self.rows,
            len(indices),
        )

    def select_rows(self, indices):
        return PolyMatrix(
            self.ring,
            [list(self.entries[i]) for i in indices],
            len(indices),
            self.cols,
        )

    def map_entries(self, fn):
        return PolyMatrix(self.ring, [[fn(a) for a in r] for r in self.entries])

    def is_zero(self):
        return all(a.is_zero() for r in self.entries for a in r)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and other.rows == self.rows
            and other.cols == self.cols
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(a) for a in row) for row in self.entries
        )
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"


def hstack(blocks):
    """Concatenate matrices left to right."""
    blocks = [b for b in blocks]
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ShapeMismatch("hstack row mismatch")
    entries = [sum((b.row(i) for b in blocks), []) for i in range(rows)]
    cols = sum(b.cols for b in blocks)
    return PolyMatrix(blocks[0].ring, entries, rows, cols)


def vstack(blocks):
    """Concatenate matrices top to bottom."""
    blocks = [b for b in blocks]
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ShapeMismatch("vstack column mismatch")
    entries = [row for b in blocks for row in b.entries]
    rows = sum(b.rows for b in blocks)
    return PolyMatrix(blocks[0].ring, entries, rows, cols)


def block_matrix(grid):
    """Assemble a matrix from a grid (list of rows) of blocks."""
    return vstack([hstack(row) for row in grid])


def determinant(m):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    n = m.rows
    ring = m.ring
    if n == 0:
        return ring.one
    a = [list(r) for r in m.entries]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        pivot_row = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if pivot_row is None:
            return ring.zero
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev) if not num.is_zero() else ring.zero
            a[i][k] = ring.zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def unimodular_det(m):
    """The determinant, provided it is a nonzero constant; else NotUnimodular."""
    det = determinant(m)
    if det.is_zero() or not det.is_constant():
        raise NotUnimodular(det)
    return det
