"""Exact integer linear algebra.

Everything here works on Python ints, so towers of matrix powers never
overflow. Vectors are rows: a matrix ``m`` acts on a row vector ``v`` as
``v @ m``, matching the row convention used for abelianisations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols_of_other = [[other[k, j] for k in range(other.rows)] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, c)) for c in cols_of_other])
        return IntMatrix.from_rows(out, other.cols)

    def __pow__(self, n: int) -> IntMatrix:
        if not self.is_square:
            raise DimensionError("only square matrices have powers")
        if n < 0:
            raise DomainError("negative matrix powers are not supported")
        result, base = IntMatrix.identity(self.rows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __str__(self):
        return "[" + ", ".join(str(list(self.row(i))) for i in range(self.rows)) + "]"


@dataclass(frozen=True)
class SmithForm:
    invariants: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d)


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Divisibility chain d_1 | d_2 | ... of ``m``, length min(rows, cols).

    Elementary row/column elimination, always pivoting on the entry of
    smallest absolute value.
    """
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    size = min(nr, nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    for t in range(size):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
            line = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
            line += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
            if line:
                _, i, j = min(line)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
    return SmithForm(tuple(abs(a[i][i]) for i in range(size)))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def characteristic_polynomial(m: IntMatrix) -> tuple[int, ...]:
    """Coefficients of det(xI - m), leading coefficient first (Faddeev-LeVerrier)."""
    if not m.is_square:
        raise DimensionError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [1]
    aux = IntMatrix.zeros(n, n)
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        shifted = m @ aux
        aux = IntMatrix(n, n, tuple(x + coeffs[-1] * y for x, y in zip(shifted.entries, ident.entries)))
        prod = m @ aux
        trace = sum(prod[i, i] for i in range(n))
        # exact: the trace is always divisible by k for integer matrices
        coeffs.append(-trace // k)
    return tuple(coeffs)


def is_primitive_matrix(m: IntMatrix) -> bool:
    """Whether some power of a non-negative square matrix is strictly positive.

    Powers are checked up to the Wielandt bound (r-1)^2 + 1 on the zero
    pattern only.
    """
    if not m.is_square:
        raise DimensionError("primitivity is defined for square matrices")
    if any(x < 0 for x in m.entries):
        raise DomainError("primitivity needs non-negative entries")
    n = m.rows
    if n == 0:
        return False
    pattern = [[m[i, j] > 0 for j in range(n)] for i in range(n)]
    power = pattern
    for _ in range((n - 1) ** 2 + 1):
        if all(all(r) for r in power):
            return True
        power = [
            [any(power[i][k] and pattern[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return False


def hermite_rows(vectors: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive, entries above each pivot lie in [0, pivot), zero
    rows are dropped.
    """
    rows = [list(v) for v in vectors]
    for v in rows:
        if len(v) != ncols:
            raise DimensionError(f"vector of length {len(v)} in ambient rank {ncols}")
    rows = [v for v in rows if any(v)]
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        while True:
            candidates = [i for i in range(r, len(rows)) if rows[i][c]]
            if not candidates:
                break
            p = min(candidates, key=lambda i: abs(rows[i][c]))
            rows[r], rows[p] = rows[p], rows[r]
            settled = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    settled = settled and rows[i][c] == 0
            if settled:
                break
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank stored by its Hermite basis.

    Because the Hermite form is canonical, dataclass equality is lattice
    equality.
    """

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], ambient_rank: int) -> Lattice:
        rows = hermite_rows(vectors, ambient_rank)
        return cls(ambient_rank, IntMatrix.from_rows(rows, ambient_rank))

    @classmethod
    def full(cls, ambient_rank: int) -> Lattice:
        return cls(ambient_rank, IntMatrix.identity(ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple[int, ...]]:
        return [self.basis.row(i) for i in range(self.rank)]

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coordinates of ``v`` in the Hermite basis, or None if v is not in the lattice."""
        if len(v) != self.ambient_rank:
            raise DimensionError("vector length differs from the ambient rank")
        rest = list(v)
        coords = []
        for b in self.vectors():
            pivot = next(j for j, x in enumerate(b) if x)
            q, rem = divmod(rest[pivot], b[pivot])
            if rem:
                return None
            coords.append(q)
            rest = [x - q * y for x, y in zip(rest, b)]
        if any(rest):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None


def _check_action(m: IntMatrix, l: Lattice):
    if not m.is_square or m.rows != l.ambient_rank:
        raise DimensionError(
            f"{m.rows}x{m.cols} matrix cannot act on a lattice in Z^{l.ambient_rank}"
        )


def lattice_image(m: IntMatrix, l: Lattice) -> Lattice:
    _check_action(m, l)
    image = IntMatrix.from_rows(l.vectors(), l.ambient_rank) @ m if l.rank else None
    vectors = image.to_lists() if image is not None else []
    return Lattice.span(vectors, l.ambient_rank)


def lattice_equal(a: Lattice, b: Lattice) -> bool:
    if a.ambient_rank != b.ambient_rank:
        raise DimensionError(
            f"lattices live in Z^{a.ambient_rank} and Z^{b.ambient_rank}"
        )
    return a == b


def restricted_action(m: IntMatrix, l: Lattice) -> IntMatrix:
    """Matrix of ``v -> v @ m`` on ``l``, written in the Hermite basis of ``l``.

    Requires ``l @ m`` to lie inside ``l``.
    """
    _check_action(m, l)
    rows = []
    for b in l.vectors():
        image = IntMatrix.from_rows([b], l.ambient_rank) @ m
        coords = l.coordinates(image.row(0))
        if coords is None:
            raise DomainError("lattice is not invariant under the matrix")
        rows.append(coords)
    return IntMatrix.from_rows(rows, l.rank)
