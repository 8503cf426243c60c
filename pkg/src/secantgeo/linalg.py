"""Exact linear algebra over Q(i).

Ranks use fraction-free (Bareiss) elimination after clearing row
denominators, so intermediate entries stay Gaussian integers of bounded
size.  Subspaces carry a canonical reduced-row-echelon basis, hence
subspace equality is plain syntactic equality of bases.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Scalar, _coerce


def _as_scalar_row(row) -> list[Scalar]:
    return [_coerce(x) for x in row]


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", tuple(tuple(r) for r in data))
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise ValueError("matrix shape mismatch")

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        data = [_as_scalar_row(r) for r in rows]
        if not data:
            raise ValueError("from_rows needs at least one row")
        return Matrix(len(data), len(data[0]), data)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [[ZERO] * cols for _ in range(rows)])

    def at(self, i: int, j: int) -> Scalar:
        return self.data[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.data[i]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, zip(*self.data)) if self.data else Matrix(0, 0, [])

    def mul_vec(self, vec: Sequence[Scalar]) -> list[Scalar]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self.data:
            acc = ZERO
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("matmul shape mismatch")
        cols = other.transpose().data
        data = [[_dot(r, c) for c in cols] for r in self.data]
        return Matrix(self.rows, other.cols, data)

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix(self.rows, self.cols, [[c * x for x in r] for r in self.data])

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("add shape mismatch")
        return Matrix(self.rows, self.cols,
                      [[x + y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == self.data[j][i] for i in range(self.rows) for j in range(i))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "Matrix(%d x %d)" % (self.rows, self.cols)


def _dot(u, v) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def stack_rows(mats: Sequence[Matrix]) -> Matrix:
    cols = mats[0].cols
    data = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("stack_rows column mismatch")
        data.extend(m.data)
    return Matrix(len(data), cols, data)


def _cleared_rows(m: Matrix) -> list[list[Scalar]]:
    # scale each row to Gaussian-integer entries; rank and kernels unchanged
    out = []
    for r in m.data:
        lcm = 1
        for x in r:
            for part in (x.re, x.im):
                d = part.denominator
                if d != 1:
                    g = _gcd(lcm, d)
                    lcm = lcm // g * d
        if lcm == 1:
            out.append(list(r))
        else:
            c = Scalar(lcm)
            out.append([c * x for x in r])
    return out


def _gcd(a, b):
    a, b = int(a), int(b)
    while b:
        a, b = b, a % b
    return a


def rank(m: Matrix) -> int:
    """Rank by Bareiss fraction-free elimination."""
    rows = [r for r in _cleared_rows(m) if any(r)]
    if not rows:
        return 0
    ncols = m.cols
    rk = 0
    prev = ONE
    for c in range(ncols):
        piv = None
        for i in range(rk, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        lead = rows[rk][c]
        for i in range(rk + 1, len(rows)):
            head = rows[i][c]
            ri, rr = rows[i], rows[rk]
            if head:
                for j in range(c + 1, ncols):
                    ri[j] = (lead * ri[j] - head * rr[j]) / prev
            else:
                for j in range(c + 1, ncols):
                    ri[j] = (lead * ri[j]) / prev
            ri[c] = ZERO
        prev = lead
        rk += 1
        if rk == len(rows):
            break
    return rk


def rref(m: Matrix) -> tuple[list[int], list[list[Scalar]]]:
    """Reduced row echelon form; returns (pivot columns, nonzero rows)."""
    rows = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots, rows[:r]


class Subspace:
    """A linear subspace of C^ambient_dim with canonical RREF basis rows."""

    __slots__ = ("ambient_dim", "pivots", "basis")

    def __init__(self, ambient_dim: int, pivots: tuple[int, ...], basis: tuple[tuple[Scalar, ...], ...]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "pivots", pivots)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [_as_scalar_row(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("vector length != ambient_dim")
        if not rows:
            return Subspace.zero(ambient_dim)
        pivots, red = rref(Matrix(len(rows), ambient_dim, rows))
        return Subspace(ambient_dim, tuple(pivots), tuple(tuple(r) for r in red))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, (), ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        ident = Matrix.identity(ambient_dim)
        return Subspace(ambient_dim, tuple(range(ambient_dim)), ident.data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Sequence) -> list[Scalar]:
        """Canonical coset representative of vec modulo this subspace
        (entries at pivot columns are zeroed)."""
        v = _as_scalar_row(vec)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length != ambient_dim")
        for p, row in zip(self.pivots, self.basis):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def perp(self) -> "Subspace":
        """Annihilator under the standard bilinear pairing sum(x_i y_i)."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return kernel(Matrix(self.dim, self.ambient_dim, self.basis))

    def complement_indices(self) -> list[int]:
        """Standard coordinates whose basis vectors represent cosets of a
        complement to this subspace."""
        pivot_set = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in pivot_set]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim, self.basis) == (other.ambient_dim, other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return "Subspace(dim %d in C^%d)" % (self.dim, self.ambient_dim)


def kernel(m: Matrix) -> Subspace:
    """Right kernel {x : m x = 0} with canonical basis."""
    pivots, rows = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    vecs = []
    for j in free:
        v = [ZERO] * m.cols
        v[j] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rows[r][j]
        vecs.append(v)
    return Subspace.from_vectors(m.cols, vecs)


def span_sum(spaces: Sequence[Subspace]) -> Subspace:
    if not spaces:
        raise ValueError("span_sum of nothing")
    amb = spaces[0].ambient_dim
    vecs: list[Sequence[Scalar]] = []
    for s in spaces:
        if s.ambient_dim != amb:
            raise ValueError("ambient mismatch")
        vecs.extend(s.basis)
    return Subspace.from_vectors(amb, vecs)


def intersect(spaces: Sequence[Subspace]) -> Subspace:
    """Intersection via the kernel of the stacked annihilator systems."""
    if not spaces:
        raise ValueError("intersect of nothing")
    amb = spaces[0].ambient_dim
    ann_rows: list[Sequence[Scalar]] = []
    for s in spaces:
        if s.ambient_dim != amb:
            raise ValueError("ambient mismatch")
        ann_rows.extend(s.perp().basis)
    if not ann_rows:
        return Subspace.full(amb)
    return kernel(Matrix(len(ann_rows), amb, ann_rows))


def solve_left(rows_a: Matrix, rows_b: Matrix) -> Matrix:
    """C with C @ rows_a == rows_b, for rows_a of full row rank.

    Raises ValueError when some row of rows_b is outside the row space."""
    n = rows_a.rows
    aug = [list(rows_a.data[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    pivots, red = rref(Matrix(n, rows_a.cols + n, aug))
    if len(pivots) != n or any(p >= rows_a.cols for p in pivots):
        raise ValueError("solve_left needs full row rank")
    out = []
    for brow in rows_b.data:
        v = list(brow)
        coeffs = [ZERO] * n
        for r, p in enumerate(pivots):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, red[r][: rows_a.cols])]
                coeffs = [x + c * y for x, y in zip(coeffs, red[r][rows_a.cols:])]
        if any(v):
            raise ValueError("row not in span")
        out.append(coeffs)
    return Matrix(rows_b.rows, n, out)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = [list(m.data[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    pivots, red = rref(Matrix(n, 2 * n, aug))
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(n, n, [r[n:] for r in red])


def random_vector(dim: int, bound: int, stream, gaussian: bool = False) -> list[Scalar]:
    """Entries uniform on the integers in [-bound, bound]; with gaussian=True
    real and imaginary parts are drawn that way (real part first)."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out = []
    for _ in range(dim):
        re = stream.randint(-bound, bound)
        im = stream.randint(-bound, bound) if gaussian else 0
        out.append(Scalar(re, im))
    return out
