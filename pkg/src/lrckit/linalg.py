"""Dense exact linear algebra over GF(q).

Gaussian elimination with exact field inverses: reduced row echelon form,
rank, canonical null-space bases, Vandermonde builders, and polynomial
interpolation.  Everything works on small dense matrices of FieldElement;
no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DuplicateNode, LengthMismatch
from .gf import FieldElement, FieldSpec


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; rdata is a tuple of row tuples."""

    field: FieldSpec
    rdata: tuple[tuple[FieldElement, ...], ...]

    @property
    def nrows(self) -> int:
        return len(self.rdata)

    @property
    def ncols(self) -> int:
        return len(self.rdata[0]) if self.rdata else 0

    def at(self, i: int, j: int) -> FieldElement:
        return self.rdata[i][j]

    def row(self, i: int) -> tuple[FieldElement, ...]:
        return self.rdata[i]

    def col(self, j: int) -> tuple[FieldElement, ...]:
        return tuple(r[j] for r in self.rdata)

    def to_encs(self) -> list[list[int]]:
        return [[e.enc for e in r] for r in self.rdata]

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "Matrix":
        return cls(field, tuple(tuple(r) for r in rows))

    @classmethod
    def from_encs(cls, field: FieldSpec, rows) -> "Matrix":
        return cls(field, tuple(tuple(field.element(e) for e in r) for r in rows))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        zero, one = field.zero(), field.one()
        return cls(field, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        ))

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero()
        return cls(field, tuple(tuple(zero for _ in range(ncols)) for _ in range(nrows)))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise LengthMismatch(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    zero = a.field.zero()
    bt = [b.col(j) for j in range(b.ncols)]
    out = []
    for row in a.rdata:
        out.append(tuple(
            _dot(row, colv, zero) for colv in bt
        ))
    return Matrix(a.field, tuple(out))


def vec_mat(vec, m: Matrix) -> list[FieldElement]:
    """Row vector times matrix."""
    if len(vec) != m.nrows:
        raise LengthMismatch(f"vector length {len(vec)} != matrix rows {m.nrows}")
    zero = m.field.zero()
    out = [zero] * m.ncols
    for x, row in zip(vec, m.rdata):
        if not x:
            continue
        out = [acc + x * r for acc, r in zip(out, row)]
    return out


def _dot(u, v, zero: FieldElement) -> FieldElement:
    acc = zero
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def rref(mat: Matrix, pivot_cols: int | None = None) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form, rank, and ascending pivot columns.

    pivot_cols limits pivot search to the first so-many columns (row
    operations still span the full width), which turns an augmented matrix
    into a multi-right-hand-side solver.
    """
    rows = [list(r) for r in mat.rdata]
    nrows, ncols = mat.nrows, mat.ncols
    pivots: list[int] = []
    pr = 0
    for col in range(ncols if pivot_cols is None else min(pivot_cols, ncols)):
        pivot = next((r for r in range(pr, nrows) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[pr], rows[pivot] = rows[pivot], rows[pr]
        inv = rows[pr][col].inverse()
        rows[pr] = [x * inv for x in rows[pr]]
        for r in range(nrows):
            if r != pr and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[pr])]
        pivots.append(col)
        pr += 1
        if pr == nrows:
            break
    return Matrix.from_rows(mat.field, rows), len(pivots), tuple(pivots)


def rank(mat: Matrix) -> int:
    return rref(mat)[1]


def null_space(mat: Matrix) -> Matrix:
    """Canonical basis of {x : mat . x = 0}, one row per free column, ascending.

    Row for free column f has a 1 at f and -R[i][f] at each pivot column.
    """
    reduced, rk, pivots = rref(mat)
    field = mat.field
    ncols = mat.ncols
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    zero, one = field.zero(), field.one()
    rows = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for i, pc in enumerate(pivots):
            vec[pc] = -reduced.at(i, f)
        rows.append(tuple(vec))
    return Matrix(field, tuple(rows))


def vandermonde(nodes, cols: int) -> Matrix:
    """Rows (1, x, x^2, ..., x^{cols-1}) per node; 0^0 is 1."""
    if len(set(n.enc for n in nodes)) != len(nodes):
        raise DuplicateNode("vandermonde nodes must be pairwise distinct")
    if cols < 1:
        raise LengthMismatch("vandermonde needs at least one column")
    field = nodes[0].field
    rows = []
    for x in nodes:
        acc = field.one()
        row = [acc]
        for _ in range(cols - 1):
            acc = acc * x
            row.append(acc)
        rows.append(tuple(row))
    return Matrix(field, tuple(rows))


def solve_interpolation(nodes, values) -> list[FieldElement]:
    """Coefficients (low to high) of the unique degree < d polynomial through
    the d given (node, value) pairs."""
    if len(nodes) != len(values):
        raise LengthMismatch(f"{len(nodes)} nodes but {len(values)} values")
    if not nodes:
        raise LengthMismatch("interpolation needs at least one point")
    d = len(nodes)
    v = vandermonde(nodes, d)
    aug = Matrix(v.field, tuple(
        row + (val,) for row, val in zip(v.rdata, values)
    ))
    reduced, rk, pivots = rref(aug)
    # Distinct nodes make the system nonsingular: pivots are exactly 0..d-1.
    assert rk == d and pivots == tuple(range(d))
    return [reduced.at(i, d) for i in range(d)]


def poly_eval(coeffs, x: FieldElement) -> FieldElement:
    """Horner evaluation of low-to-high coefficients."""
    acc = x.field.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_from_roots(field: FieldSpec, roots) -> list[FieldElement]:
    """Monic product of (x - root); low-to-high coefficients."""
    coeffs = [field.one()]
    zero = field.zero()
    for root in roots:
        coeffs = [zero] + coeffs
        coeffs = [c - root * n for c, n in zip(coeffs, coeffs[1:] + [zero])]
    return coeffs


def solve_left_many(a: Matrix, rhs_rows) -> list[list[FieldElement] | None]:
    """Solve x . a = b for every row b of rhs_rows with one elimination.

    Free variables are set to zero; entries are None for rows outside the
    row space of a.
    """
    field = a.field
    n = a.nrows
    aug_rows = [
        tuple(a.at(i, j) for i in range(n)) + tuple(b[j] for b in rhs_rows)
        for j in range(a.ncols)
    ]
    reduced, rk, pivots = rref(Matrix(field, tuple(aug_rows)), pivot_cols=n)
    zero = field.zero()
    out: list[list[FieldElement] | None] = []
    for idx in range(len(rhs_rows)):
        col = n + idx
        # Rows past the rank have zero coefficient parts: any nonzero
        # right-hand entry there certifies inconsistency.
        if any(reduced.at(row, col) for row in range(rk, a.ncols)):
            out.append(None)
            continue
        x = [zero] * n
        for i, pc in enumerate(pivots):
            x[pc] = reduced.at(i, col)
        out.append(x)
    return out


def solve_left(a: Matrix, b) -> list[FieldElement] | None:
    """Solve x . a = b; None when b is outside the row space of a."""
    return solve_left_many(a, [b])[0]


def reduce_in_rowspace(basis_rref: Matrix, pivots, vec) -> list[FieldElement] | None:
    """Express vec in an RREF basis; None when vec is outside the row space."""
    residual = list(vec)
    coeffs = []
    for i, pc in enumerate(pivots):
        c = residual[pc]
        coeffs.append(c)
        if c:
            row = basis_rref.row(i)
            residual = [a - c * b for a, b in zip(residual, row)]
    if any(residual):
        return None
    return coeffs
