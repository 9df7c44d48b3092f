"""Exact rational linear algebra.

Matrices hold :class:`fractions.Fraction` entries and subspaces are stored by
the rows of their reduced row-echelon basis, so two equal subspaces always
have identical representations and equality is a plain comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "DimensionError",
    "rat",
    "Mat",
    "Subspace",
    "rref",
    "kernel",
    "subspace_sum",
    "subspace_intersect",
    "contains",
    "subspace_equal",
]


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def rat(x) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def _vec(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(rat(x) for x in v)


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Mat:
        rows = [_vec(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Mat:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> Mat:
        return cls.from_rows(columns, cols=rows).T

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.rows else ()

    def to_rows(self) -> list[tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def T(self) -> Mat:
        return Mat(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: Mat) -> Mat:
        self._same_shape(other)
        return Mat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat) -> Mat:
        self._same_shape(other)
        return Mat(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Mat:
        return Mat(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> Mat:
        c = rat(c)
        return Mat(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: Mat) -> Mat:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return Mat(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        v = _vec(v)
        return tuple(
            sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
            for i in range(self.rows)
        )

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def flatten(self) -> tuple[Fraction, ...]:
        return self.entries

    @classmethod
    def unflatten(cls, v: Sequence, n: int) -> Mat:
        return cls(n, n, _vec(v))

    def inverse(self) -> Mat:
        if not self.is_square():
            raise DimensionError("only square matrices are invertible")
        n = self.rows
        aug = Mat.from_rows([self.row(i) + Mat.identity(n).row(i) for i in range(n)], cols=2 * n)
        red, _ = rref(aug)
        if any(red[i, i] != 1 for i in range(n)) or any(
            red[i, j] for i in range(n) for j in range(n) if i != j
        ):
            raise ZeroDivisionError("matrix is singular")
        return Mat.from_rows([red.row(i)[n:] for i in range(n)], cols=n)

    def _same_shape(self, other: Mat) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(
                f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.to_rows())
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan elimination in place; returns the nonzero rows and pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Mat) -> tuple[Mat, int]:
    """Reduced row-echelon form of ``m`` (same shape, zero rows last) and its rank."""
    rows = [list(m.row(i)) for i in range(m.rows)]
    nonzero, pivots = _rref_rows(rows, m.cols)
    rank = len(pivots)
    padded = [tuple(r) for r in nonzero] + [(Fraction(0),) * m.cols] * (m.rows - rank)
    return Mat(m.rows, m.cols, tuple(x for r in padded for x in r)), rank


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim given by its canonical RREF basis."""

    ambient_dim: int
    basis: Mat

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionError("basis width differs from ambient dimension")

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [list(_vec(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionError(f"vector of length {len(r)} in {ambient_dim}-space")
        nonzero, _ = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, Mat(len(nonzero), ambient_dim, tuple(x for r in nonzero for x in r)))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Mat(0, ambient_dim, ()))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Mat.identity(ambient_dim))

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient_dim: int) -> Subspace:
        """Span of the standard basis vectors with the given indices."""
        idx = sorted(set(indices))
        return cls.span(
            [[int(k == i) for k in range(ambient_dim)] for i in idx], ambient_dim
        )

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis.to_rows())

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return self.basis.to_rows()

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of ``v`` in the canonical basis; raises ValueError if ``v`` is outside."""
        v = _vec(v)
        coords = tuple(v[p] for p in self.pivots)
        recon = [Fraction(0)] * self.ambient_dim
        for c, b in zip(coords, self.vectors()):
            if c:
                for j, x in enumerate(b):
                    if x:
                        recon[j] += c * x
        if tuple(recon) != v:
            raise ValueError("vector does not lie in the subspace")
        return coords

    def image(self, m: Mat) -> Subspace:
        """The subspace ``m(self)``; ``m`` maps ambient vectors (columns) to Q^m.rows."""
        if m.cols != self.ambient_dim:
            raise DimensionError("matrix does not act on this space")
        return Subspace.span([m.apply(v) for v in self.vectors()], m.rows)

    def annihilator(self) -> Subspace:
        """Vectors orthogonal (standard pairing) to every basis vector."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return kernel(self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: Subspace) -> bool:
        _check_dims(self, other)
        return all(contains(other, v) for v in self.vectors())

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim}, basis={self.basis!r})"


def kernel(m: Mat) -> Subspace:
    """Right null space {x : m x = 0} as a canonical subspace of Q^m.cols."""
    red, rank = rref(m)
    n = m.cols
    pivots = []
    for i in range(rank):
        pivots.append(next(j for j in range(n) if red[i, j]))
    free = [j for j in range(n) if j not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        vecs.append(v)
    return Subspace.span(vecs, n)


def _check_dims(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"subspaces of Q^{a.ambient_dim} and Q^{b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return Subspace.span(a.vectors() + b.vectors(), a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """A ∩ B as the annihilator of ann(A) + ann(B)."""
    _check_dims(a, b)
    n = a.ambient_dim
    constraints = a.annihilator().vectors() + b.annihilator().vectors()
    if not constraints:
        return Subspace.full(n)
    return kernel(Mat.from_rows(constraints, cols=n))


def contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in Q^{a.ambient_dim}")
    try:
        a.coordinates(v)
    except ValueError:
        return False
    return True


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check_dims(a, b)
    return a.basis == b.basis
