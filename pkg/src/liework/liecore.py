"""Lie algebras given by structure constants over Q.

A :class:`LieAlgebra` stores ``[e_i, e_j] = sum_k c_ij^k e_k`` only for ``i < j``;
the other orderings follow from antisymmetry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .exactla import (
    DimensionError,
    Mat,
    Subspace,
    contains,
    kernel,
    rat,
)

Vector = tuple[Fraction, ...]


class LieAlgebraError(ValueError):
    """Structure data that does not define a Lie algebra."""


class NotADerivationError(LieAlgebraError):
    pass


class InternalError(RuntimeError):
    """A post-condition that should be impossible failed; indicates a bug."""


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    names: tuple[str, ...]
    sc: Mapping[tuple[int, int], Mapping[int, Fraction]] = field(repr=False)

    def __init__(self, dim: int, sc=None, names: Sequence[str] | None = None):
        names = tuple(names) if names is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(names) != dim:
            raise DimensionError(f"{len(names)} basis names for dimension {dim}")
        if len(set(names)) != dim:
            raise LieAlgebraError("basis names must be distinct")
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in (sc or {}).items():
            if not (0 <= i < j < dim):
                raise LieAlgebraError(f"structure constant key {(i, j)} must satisfy 0 <= i < j < {dim}")
            if isinstance(coeffs, Mapping):
                items = coeffs.items()
            else:
                if len(coeffs) != dim:
                    raise DimensionError(f"bracket vector of length {len(coeffs)} for dimension {dim}")
                items = enumerate(coeffs)
            vec = {}
            for k, c in items:
                if not 0 <= k < dim:
                    raise LieAlgebraError(f"basis index {k} out of range")
                c = rat(c)
                if c:
                    vec[k] = c
            if vec:
                clean[(i, j)] = dict(sorted(vec.items()))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "sc", dict(sorted(clean.items())))

    @cached_property
    def _table(self) -> tuple[tuple[Vector, ...], ...]:
        zero = (Fraction(0),) * self.dim
        table = [[zero] * self.dim for _ in range(self.dim)]
        for (i, j), coeffs in self.sc.items():
            v = [Fraction(0)] * self.dim
            for k, c in coeffs.items():
                v[k] = c
            table[i][j] = tuple(v)
            table[j][i] = tuple(-x for x in v)
        return tuple(tuple(r) for r in table)

    def basis_bracket(self, i: int, j: int) -> Vector:
        return self._table[i][j]

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def same_structure(self, other: LieAlgebra) -> bool:
        return self.dim == other.dim and self.sc == other.sc

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.names == other.names and self.same_structure(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, names={self.names})"


@dataclass(frozen=True)
class AlgSubspace:
    parent: LieAlgebra
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.parent.dim:
            raise DimensionError("subspace does not live in the parent algebra")

    @property
    def dim(self) -> int:
        return self.space.dim

    def vectors(self) -> list[Vector]:
        return self.space.vectors()


@dataclass(frozen=True)
class JacobiViolation:
    i: int
    j: int
    k: int
    residual: Vector


def _check_vec(g: LieAlgebra, v: Sequence) -> Vector:
    if len(v) != g.dim:
        raise DimensionError(f"vector of length {len(v)} in a {g.dim}-dimensional algebra")
    return tuple(rat(x) for x in v)


def _add_into(acc: list[Fraction], c: Fraction, v: Vector) -> None:
    for k, x in enumerate(v):
        if x:
            acc[k] += c * x


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    x = _check_vec(g, x)
    y = _check_vec(g, y)
    acc = [Fraction(0)] * g.dim
    for (i, j), coeffs in g.sc.items():
        c = x[i] * y[j] - x[j] * y[i]
        if c:
            for k, s in coeffs.items():
                acc[k] += c * s
    return tuple(acc)


def ad(g: LieAlgebra, x: Sequence) -> Mat:
    """Matrix of y -> [x, y]; column j is [x, e_j]."""
    x = _check_vec(g, x)
    cols = []
    for j in range(g.dim):
        acc = [Fraction(0)] * g.dim
        for i, xi in enumerate(x):
            if xi:
                _add_into(acc, xi, g.basis_bracket(i, j))
        cols.append(acc)
    return Mat.from_columns(cols, g.dim)


def jacobi_residual(g: LieAlgebra, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    terms = (
        bracket(g, x, bracket(g, y, z)),
        bracket(g, y, bracket(g, z, x)),
        bracket(g, z, bracket(g, x, y)),
    )
    return tuple(sum(t) for t in zip(*terms)) if g.dim else ()


def validate(g: LieAlgebra) -> list[JacobiViolation]:
    """Jacobi identity on all basis triples ``i < j < k``; empty list means valid."""
    out = []
    e = [g.basis_vector(i) for i in range(g.dim)]
    for i, j, k in combinations(range(g.dim), 3):
        r = jacobi_residual(g, e[i], e[j], e[k])
        if any(r):
            out.append(JacobiViolation(i, j, k, r))
    return out


def bracket_spaces(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of all brackets [u, v] with u in a and v in b."""
    return Subspace.span(
        [bracket(g, u, v) for u in a.vectors() for v in b.vectors()], g.dim
    )


def _series(g: LieAlgebra, step) -> list[AlgSubspace]:
    cur = Subspace.full(g.dim)
    out = [AlgSubspace(g, cur)]
    while cur.dim:
        nxt = step(cur)
        out.append(AlgSubspace(g, nxt))
        if nxt == cur:
            break
        cur = nxt
    return out


def lower_central_series(g: LieAlgebra) -> list[AlgSubspace]:
    """g, [g,g], [g,[g,g]], ... until the zero space or a repeated term."""
    full = Subspace.full(g.dim)
    return _series(g, lambda s: bracket_spaces(g, full, s))


def derived_series(g: LieAlgebra) -> list[AlgSubspace]:
    return _series(g, lambda s: bracket_spaces(g, s, s))


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def center(g: LieAlgebra) -> AlgSubspace:
    # x is central iff sum_i x_i [e_i, e_j] = 0 for every j
    rows = []
    for j in range(g.dim):
        cols = [g.basis_bracket(i, j) for i in range(g.dim)]
        rows.extend(Mat.from_columns(cols, g.dim).to_rows())
    if not rows:
        return AlgSubspace(g, Subspace.full(g.dim))
    return AlgSubspace(g, kernel(Mat.from_rows(rows, cols=g.dim)))


def is_ideal(g: LieAlgebra, s: AlgSubspace) -> bool:
    if s.parent is not g and not s.parent.same_structure(g):
        raise ValueError("subspace belongs to a different algebra")
    for i in range(g.dim):
        e = g.basis_vector(i)
        for v in s.vectors():
            if not contains(s.space, bracket(g, e, v)):
                return False
    return True


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    vs = s.vectors()
    return all(contains(s, bracket(g, u, v)) for u, v in combinations(vs, 2))


def restrict(g: LieAlgebra, s: Subspace, names: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra ``s`` as a Lie algebra in the coordinates of its canonical basis."""
    vs = s.vectors()
    sc = {}
    for a, b in combinations(range(len(vs)), 2):
        try:
            sc[(a, b)] = s.coordinates(bracket(g, vs[a], vs[b]))
        except ValueError:
            raise LieAlgebraError("subspace is not closed under the bracket") from None
    return LieAlgebra(len(vs), sc, names)


def change_basis(g: LieAlgebra, t: Mat) -> LieAlgebra:
    """Transport the bracket along the invertible map ``t``: [x, y]' = t[t^-1 x, t^-1 y].

    ``t`` is then an isomorphism from ``g`` onto the result, so any subspace
    ``S`` that is intrinsic to ``g`` corresponds to ``S.image(t)``.
    """
    if t.rows != g.dim or t.cols != g.dim:
        raise DimensionError("basis change must be a square matrix of the algebra dimension")
    tinv = t.inverse()
    cols = [tinv.col(i) for i in range(g.dim)]
    sc = {}
    for i, j in combinations(range(g.dim), 2):
        sc[(i, j)] = t.apply(bracket(g, cols[i], cols[j]))
    return LieAlgebra(g.dim, sc, g.names)


# -- linear Lie algebras of endomorphisms --------------------------------------


def commutator(a: Mat, b: Mat) -> Mat:
    return a @ b - b @ a


@dataclass(frozen=True)
class LinMapAlg:
    """A Lie subalgebra of gl(parent.dim), stored as a canonical subspace of Q^(dim^2).

    Matrices are flattened row-major.  Construction checks closure under the
    commutator, and derivation-ness when ``derivations`` is set.
    """

    parent: LieAlgebra
    space: Subspace
    derivations: bool = False

    def __post_init__(self):
        n = self.parent.dim
        if self.space.ambient_dim != n * n:
            raise DimensionError("space must live in Q^(dim^2)")
        maps = self.basis_maps
        for a, b in combinations(maps, 2):
            if not contains(self.space, commutator(a, b).flatten()):
                raise LieAlgebraError("linear maps are not closed under the commutator")
        if self.derivations:
            for d in maps:
                if not is_derivation(self.parent, d):
                    raise NotADerivationError(f"{d!r} is not a derivation")

    @classmethod
    def span(cls, parent: LieAlgebra, maps: Sequence[Mat], derivations: bool = False) -> LinMapAlg:
        n = parent.dim
        return cls(parent, Subspace.span([m.flatten() for m in maps], n * n), derivations)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis_maps(self) -> list[Mat]:
        n = self.parent.dim
        return [Mat.unflatten(v, n) for v in self.space.vectors()]

    def coordinates(self, m: Mat) -> Vector:
        return self.space.coordinates(m.flatten())

    def __contains__(self, m: Mat) -> bool:
        return contains(self.space, m.flatten())


def is_derivation(g: LieAlgebra, d: Mat) -> bool:
    for i, j in combinations(range(g.dim), 2):
        lhs = d.apply(g.basis_bracket(i, j))
        ei, ej = g.basis_vector(i), g.basis_vector(j)
        r1 = bracket(g, d.col(i), ej)
        r2 = bracket(g, ei, d.col(j))
        if any(a - b - c for a, b, c in zip(lhs, r1, r2)):
            return False
    return True


@dataclass(frozen=True)
class Semidirect:
    """Result of :func:`semidirect`: the algebra plus the two embedded factors."""

    algebra: LieAlgebra
    n_embed: AlgSubspace
    h_embed: AlgSubspace


def semidirect(n: LieAlgebra, h: LinMapAlg, names: Sequence[str] | None = None) -> Semidirect:
    """The semidirect sum n ⋊ h with bracket [(x,D),(y,E)] = ([x,y] + Dy - Ex, DE - ED).

    Basis order: the basis of ``n`` first, then the canonical basis of ``h``.
    """
    if h.parent is not n and not h.parent.same_structure(n):
        raise ValueError("h does not act on n")
    maps = h.basis_maps
    for d in maps:
        if not is_derivation(n, d):
            raise NotADerivationError(f"{d!r} is not a derivation of the base algebra")
    dn, dh = n.dim, len(maps)
    total = dn + dh
    sc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), coeffs in n.sc.items():
        sc[(i, j)] = dict(coeffs)
    for a, d in enumerate(maps):
        # [e_i, D_a] = -D_a e_i
        for i in range(dn):
            col = d.col(i)
            vec = {k: -c for k, c in enumerate(col) if c}
            if vec:
                sc[(i, dn + a)] = vec
    for a, b in combinations(range(dh), 2):
        coords = h.coordinates(commutator(maps[a], maps[b]))
        vec = {dn + k: c for k, c in enumerate(coords) if c}
        if vec:
            sc[(dn + a, dn + b)] = vec
    if names is None:
        names = list(n.names) + [f"D{a + 1}" for a in range(dh)]
    out = LieAlgebra(total, sc, names)
    if validate(out):
        raise InternalError("semidirect sum violates the Jacobi identity")
    return Semidirect(
        out,
        AlgSubspace(out, Subspace.coordinate(range(dn), total)),
        AlgSubspace(out, Subspace.coordinate(range(dn, total), total)),
    )


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {})


def nilpotency_class(g: LieAlgebra) -> int | None:
    """Number of nonzero terms in the lower central series, or None if not nilpotent."""
    series = lower_central_series(g)
    if series[-1].dim:
        return None
    return len(series) - 1
