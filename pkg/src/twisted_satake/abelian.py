"""Exact integer-matrix algebra and finitely generated abelian groups.

Everything downstream (coinvariant lattices, fundamental groups, component
groups) is a quotient of some Z^n by the column span of an integer matrix.
This module provides the substrate: Smith normal form with recorded
unimodular transformations, canonical quotient presentations with decidable
equality of classes, and exact membership tests in integer spans.

All arithmetic is arbitrary-precision (Python int / Fraction); no floats,
no machine-width overflow anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class DimensionMismatch(ValueError):
    """Raised when vector/matrix dimensions do not line up."""


class DependentBasisError(ValueError):
    """Raised when a claimed basis is linearly dependent over Q."""


class InvariantViolation(AssertionError):
    """An internal theorem-backed invariant failed: a defect, not an input error."""


# ---------------------------------------------------------------------------
# Integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows):
        rows = [tuple(int(x) for x in r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise DimensionMismatch("ragged rows")
        return IntMatrix(n, m, tuple(x for r in rows for x in r))

    @staticmethod
    def from_columns(cols, nrows=None):
        cols = [tuple(int(x) for x in c) for c in cols]
        if cols:
            n = len(cols[0])
            if any(len(c) != n for c in cols):
                raise DimensionMismatch("ragged columns")
        else:
            if nrows is None:
                raise DimensionMismatch("empty column list needs explicit nrows")
            n = nrows
        m = len(cols)
        return IntMatrix(n, m, tuple(cols[j][i] for i in range(n) for j in range(m)))

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zero(n, m):
        return IntMatrix(n, m, (0,) * (n * m))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def mul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.cols} != {other.rows}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other[k, j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v):
        """Matrix times column vector, as a tuple."""
        v = tuple(v)
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector length {len(v)}, expected {self.cols}")
        return tuple(sum(self.row(i)[k] * v[k] for k in range(self.cols)) for i in range(self.rows))

    def determinant(self):
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.row_list()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self):
        return self.rows == self.cols and self.determinant() in (1, -1)

    def inverse_unimodular(self):
        """Inverse of a unimodular matrix, exact and integral."""
        n = self.rows
        if n != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        # Gauss-Jordan over Q; integrality follows from det = +-1.
        a = [[Fraction(x) for x in self.row(i)] + [Fraction(int(i == j)) for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            pv = a[col][col]
            a[col] = [x / pv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        out = []
        for i in range(n):
            for j in range(n):
                q = a[i][n + j]
                if q.denominator != 1:
                    raise ValueError("matrix is not unimodular")
                out.append(int(q))
        return IntMatrix(n, n, tuple(out))


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} != {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """U * original * V = D with U, V unimodular and D in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    original: IntMatrix

    @property
    def diagonal(self):
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(n))

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def _swap_rows(a, u, i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _negate_row(a, u, i):
    a[i] = [-x for x in a[i]]
    u[i] = [-x for x in u[i]]


def _row_op(a, u, i, j, q):
    # row_i -= q * row_j
    a[i] = [x - q * y for x, y in zip(a[i], a[j])]
    u[i] = [x - q * y for x, y in zip(u[i], u[j])]


def _col_op(a, v, i, j, q):
    # col_i -= q * col_j
    for row in a:
        row[i] -= q * row[j]
    for row in v:
        row[i] -= q * row[j]


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with deterministic pivoting.

    Pivot rule: smallest absolute nonzero entry of the working block, ties
    broken by (row, column) position.  The diagonal of D is nonnegative with
    d_i | d_{i+1}.  Rows of U beyond the rank are sign-normalized (first
    nonzero entry positive) so quotient coordinates are reproducible.
    """
    n, mcols = m.rows, m.cols
    a = m.row_list()
    u = IntMatrix.identity(n).row_list()
    v = IntMatrix.identity(mcols).row_list()

    def find_pivot(t):
        best = None
        for i in range(t, n):
            for j in range(t, mcols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(n, mcols):
        pos = find_pivot(t)
        if pos is None:
            break
        _swap_rows(a, u, t, pos[0])
        _swap_cols(a, v, t, pos[1])
        if a[t][t] < 0:
            _negate_row(a, u, t)
        while True:
            # Reduce the pivot column and row.  A nonzero remainder becomes
            # the new, strictly smaller pivot, so this terminates.
            dirty = False
            for i in range(t + 1, n):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    _row_op(a, u, i, t, q)
                    if a[i][t] != 0:
                        _swap_rows(a, u, t, i)
                        if a[t][t] < 0:
                            _negate_row(a, u, t)
                        dirty = True
            for j in range(t + 1, mcols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    _col_op(a, v, j, t, q)
                    if a[t][j] != 0:
                        _swap_cols(a, v, t, j)
                        dirty = True
            if dirty:
                continue
            # Pivot must divide every remaining entry for the divisor chain.
            witness = None
            for i in range(t + 1, n):
                for j in range(t + 1, mcols):
                    if a[i][j] % a[t][t] != 0:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            _row_op(a, u, t, witness, -1)
        t += 1

    rank = t
    # Sign-normalize the U-rows that define free quotient coordinates; the
    # matching D-rows are zero, so U*original*V = D is untouched.
    for i in range(rank, n):
        lead = next((x for x in u[i] if x != 0), 0)
        if lead < 0:
            u[i] = [-x for x in u[i]]

    U = IntMatrix.from_rows(u) if n else IntMatrix(0, 0, ())
    V = IntMatrix.from_rows(v) if mcols else IntMatrix(0, 0, ())
    D = IntMatrix.from_rows(a) if a else IntMatrix(0, mcols, ())

    dec = SmithDecomposition(U=U, D=D, V=V, original=m)
    _check_smith(dec)
    return dec


def _check_smith(dec: SmithDecomposition):
    if not dec.U.is_unimodular() or not dec.V.is_unimodular():
        raise InvariantViolation("Smith transform matrices must be unimodular")
    if dec.U.mul(dec.original).mul(dec.V) != dec.D:
        raise InvariantViolation("U * A * V != D")
    diag = dec.diagonal
    for i in range(dec.D.rows):
        for j in range(dec.D.cols):
            if i != j and dec.D[i, j] != 0:
                raise InvariantViolation("D is not diagonal")
    for i, d in enumerate(diag):
        if d < 0:
            raise InvariantViolation("negative diagonal entry")
        if i + 1 < len(diag) and d != 0 and diag[i + 1] % d != 0:
            raise InvariantViolation("divisor chain broken")
        if d == 0 and i + 1 < len(diag) and diag[i + 1] != 0:
            raise InvariantViolation("zero before nonzero on diagonal")


# ---------------------------------------------------------------------------
# Finitely generated abelian groups and quotient presentations


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with 1 < d_1 | d_2 | ... | d_k."""

    free_rank: int
    invariant_factors: tuple

    def __post_init__(self):
        prev = 1
        for d in self.invariant_factors:
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
            if d % prev != 0:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        if not self.is_finite:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class QuotientPresentation:
    """Z^ambient_rank modulo the column span of `relations`.

    Classes carry a canonical normal form: the coordinates U*v, with torsion
    slots reduced mod their invariant factor and unit slots dropped.  Equality
    of classes is equality of normal forms.
    """

    ambient_rank: int
    relations: IntMatrix
    smith: SmithDecomposition
    quotient: FgAbelianGroup
    u_inverse: IntMatrix

    @property
    def torsion_slots(self):
        """(smith index, invariant factor) pairs for the torsion coordinates."""
        return tuple(
            (i, d) for i, d in enumerate(self.smith.diagonal) if d > 1
        )

    @property
    def free_slots(self):
        return tuple(range(self.smith.rank, self.ambient_rank))

    def class_of(self, v):
        """Canonical normal form (free coords, torsion coords) of v's class."""
        v = tuple(int(x) for x in v)
        if len(v) != self.ambient_rank:
            raise DimensionMismatch(
                f"vector length {len(v)}, ambient rank {self.ambient_rank}"
            )
        w = self.smith.U.apply(v)
        free = tuple(w[i] for i in self.free_slots)
        torsion = tuple(w[i] % d for i, d in self.torsion_slots)
        return (free, torsion)

    def lift(self, cls):
        """A representative in Z^ambient_rank of a normal-form class."""
        free, torsion = cls
        if len(free) != len(self.free_slots) or len(torsion) != len(self.torsion_slots):
            raise DimensionMismatch("class does not match this presentation")
        w = [0] * self.ambient_rank
        for x, i in zip(free, self.free_slots):
            w[i] = int(x)
        for x, (i, _d) in zip(torsion, self.torsion_slots):
            w[i] = int(x)
        return self.u_inverse.apply(w)

    def zero_class(self):
        return ((0,) * len(self.free_slots), (0,) * len(self.torsion_slots))

    def add(self, c1, c2):
        f = tuple(a + b for a, b in zip(c1[0], c2[0]))
        t = tuple((a + b) % d for (a, b), (_i, d) in zip(zip(c1[1], c2[1]), self.torsion_slots))
        return (f, t)

    def neg(self, c):
        f = tuple(-a for a in c[0])
        t = tuple((-a) % d for a, (_i, d) in zip(c[1], self.torsion_slots))
        return (f, t)

    def sub(self, c1, c2):
        return self.add(c1, self.neg(c2))

    def scale(self, n, c):
        f = tuple(n * a for a in c[0])
        t = tuple((n * a) % d for a, (_i, d) in zip(c[1], self.torsion_slots))
        return (f, t)


def quotient_group(ambient_rank: int, relations: IntMatrix) -> QuotientPresentation:
    """Present Z^ambient_rank / column-span(relations)."""
    if relations.rows != ambient_rank:
        raise DimensionMismatch(
            f"relations have {relations.rows} rows, ambient rank is {ambient_rank}"
        )
    dec = smith_normal_form(relations)
    factors = tuple(d for d in dec.diagonal if d > 1)
    free_rank = ambient_rank - dec.rank
    q = FgAbelianGroup(free_rank=free_rank, invariant_factors=factors)
    u_inv = dec.U.inverse_unimodular() if ambient_rank else IntMatrix(0, 0, ())
    return QuotientPresentation(
        ambient_rank=ambient_rank,
        relations=relations,
        smith=dec,
        quotient=q,
        u_inverse=u_inv,
    )


def class_of(q: QuotientPresentation, v):
    return q.class_of(v)


# ---------------------------------------------------------------------------
# Exact rational linear algebra helpers


def rational_solve(columns, target):
    """Solve sum_j x_j * columns[j] = target over Q.

    Returns the unique solution when the columns are independent, None when
    the target is outside the span.  Raises DependentBasisError when the
    columns are dependent.
    """
    cols = [tuple(c) for c in columns]
    k = len(cols)
    n = len(target) if not cols else len(cols[0])
    if any(len(c) != n for c in cols) or len(target) != n:
        raise DimensionMismatch("ragged solve input")
    # Augmented row-reduction over Q.
    rows = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if len(pivots) < k:
        raise DependentBasisError("columns are linearly dependent over Q")
    for i in range(r, n):
        if rows[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = rows[i][k]
    return tuple(sol)


def membership_and_coordinates(basis, v):
    """Integer coordinates of v in the integral span of `basis`, or None.

    The basis must be linearly independent over Q; dependent input is
    rejected with DependentBasisError.
    """
    if not basis:
        return () if all(x == 0 for x in v) else None
    sol = rational_solve(basis, v)
    if sol is None:
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def integer_kernel_basis(m: IntMatrix):
    """Basis of the integer kernel lattice of m, as a list of tuples."""
    dec = smith_normal_form(m)
    r = dec.rank
    return [dec.V.column(j) for j in range(r, m.cols)]


def induced_map_kernel(m: IntMatrix, q: QuotientPresentation):
    """Generators of ker(Z^k -> Z^n/relations) for the map v -> class(m*v).

    The kernel is the projection to the first k coordinates of the integer
    kernel of the block matrix [m | relations].
    """
    if m.rows != q.ambient_rank:
        raise DimensionMismatch("map target does not match presentation ambient")
    k = m.cols
    combined = IntMatrix.from_columns(
        [m.column(j) for j in range(k)]
        + [q.relations.column(j) for j in range(q.relations.cols)],
        nrows=m.rows,
    )
    return [vec[:k] for vec in integer_kernel_basis(combined)]


def solve_integer(m: IntMatrix, target):
    """One integer solution x of m x = target, or None.

    Via Smith form: with U m V = D and w = U target, the system needs
    d_i | w_i on the diagonal and w_i = 0 beyond the rank.
    """
    target = tuple(int(x) for x in target)
    if len(target) != m.rows:
        raise DimensionMismatch("target length does not match matrix rows")
    dec = smith_normal_form(m)
    w = dec.U.apply(target)
    y = [0] * m.cols
    diag = dec.diagonal
    for i in range(m.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if w[i] != 0:
                return None
        else:
            if w[i] % d != 0:
                return None
            if i < m.cols:
                y[i] = w[i] // d
    return dec.V.apply(y)


def group_from_quotient_of_quotient(q: QuotientPresentation, extra_columns):
    """Invariants of (Z^n / relations) / <extra classes>: adjoin columns and re-present."""
    cols = [q.relations.column(j) for j in range(q.relations.cols)] + [tuple(c) for c in extra_columns]
    pres = quotient_group(q.ambient_rank, IntMatrix.from_columns(cols, nrows=q.ambient_rank))
    return pres.quotient
