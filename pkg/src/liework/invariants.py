"""Killing form, radical, nilradical, derivation algebras and isometry algebras.

All computations are exact linear algebra over Q.  The nilradical is found
without eigenvalues: inside the radical ``r``, an element is in the nilradical
exactly when its adjoint action on ``r`` lies in the trace radical of the
associative algebra generated by ``ad_r(r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactla import DimensionError, Mat, Subspace, contains, kernel, subspace_equal
from .liecore import (
    AlgSubspace,
    InternalError,
    LieAlgebra,
    LinMapAlg,
    ad,
    bracket,
    bracket_spaces,
    is_ideal,
    is_nilpotent,
    is_solvable,
    nilpotency_class,
    restrict,
    semidirect,
)


class NotPositiveDefiniteError(ValueError):
    pass


class PreconditionError(ValueError):
    """Input outside the domain where the construction is a theorem."""


def determinant(rows) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def leading_minors(q: Mat) -> list[Fraction]:
    rows = q.to_rows()
    return [determinant([r[: m + 1] for r in rows[: m + 1]]) for m in range(q.rows)]


@dataclass(frozen=True)
class MetricTensor:
    """A positive definite inner product on the Lie algebra (the metric at the identity)."""

    q: Mat

    def __post_init__(self):
        if not self.q.is_square():
            raise DimensionError("metric must be a square matrix")
        if not self.q.is_symmetric():
            raise NotPositiveDefiniteError("metric matrix is not symmetric")
        if any(m <= 0 for m in leading_minors(self.q)):
            raise NotPositiveDefiniteError("metric matrix is not positive definite")

    @classmethod
    def identity(cls, n: int) -> MetricTensor:
        return cls(Mat.identity(n))

    @classmethod
    def from_rows(cls, rows) -> MetricTensor:
        return cls(Mat.from_rows(rows, cols=len(rows)))

    @property
    def parent_dim(self) -> int:
        return self.q.rows

    def scaled(self, c) -> MetricTensor:
        return MetricTensor(self.q.scale(c))


@dataclass(frozen=True)
class NilradicalReport:
    algebra: LieAlgebra
    nilradical: AlgSubspace
    nilpotency_class: int
    radical_dim: int
    hull_dim: int
    trace_radical_dim: int
    ideal_checks: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.nilradical.dim


def killing_form(g: LieAlgebra) -> Mat:
    ads = [ad(g, g.basis_vector(i)) for i in range(g.dim)]
    n = g.dim
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            t = (ads[i] @ ads[j]).trace()
            out[i][j] = out[j][i] = t
    return Mat.from_rows(out, cols=n)


def _verify_ideal(g: LieAlgebra, s: Subspace) -> tuple[tuple[int, int], ...]:
    checks = []
    for i in range(g.dim):
        e = g.basis_vector(i)
        for a, v in enumerate(s.vectors()):
            if not contains(s, bracket(g, e, v)):
                raise InternalError(f"[e{i + 1}, basis vector {a}] escapes the subspace")
            checks.append((i, a))
    return tuple(checks)


def radical(g: LieAlgebra) -> AlgSubspace:
    """Largest solvable ideal: the Killing-orthogonal complement of [g, g]."""
    full = Subspace.full(g.dim)
    derived = bracket_spaces(g, full, full)
    if derived.dim == 0:
        return AlgSubspace(g, full)
    kappa = killing_form(g)
    r = kernel(derived.basis @ kappa)
    sub = AlgSubspace(g, r)
    if not is_ideal(g, sub) or not is_solvable(restrict(g, r)):
        raise InternalError("Killing-orthogonal of [g,g] is not a solvable ideal")
    return sub


def _assoc_hull(gens: list[Mat], k: int) -> list[Mat]:
    """Basis of the associative (non-unital) matrix algebra generated by ``gens``."""
    space = Subspace.span([m.flatten() for m in gens], k * k)
    while True:
        basis = [Mat.unflatten(v, k) for v in space.vectors()]
        prods = [a @ b for a in basis for b in gens]
        new = Subspace.span([m.flatten() for m in basis + prods], k * k)
        if new.dim == space.dim:
            return basis
        space = new


def nilradical(g: LieAlgebra) -> NilradicalReport:
    """Largest nilpotent ideal of ``g`` with a verification certificate."""
    r = radical(g).space
    rvecs = r.vectors()
    k = len(rvecs)
    # ad_r(x) for x in the basis of r, written in r's own coordinates
    gens = []
    for x in rvecs:
        cols = [r.coordinates(bracket(g, x, y)) for y in rvecs]
        gens.append(Mat.from_columns(cols, k) if k else Mat.zeros(0, 0))
    hull = _assoc_hull(gens, k) if k else []
    trace_radical_dim = 0
    if hull:
        # Dickson: Rad(A) = {a in A : tr(ab) = 0 for all b in A}
        gram = Mat.from_rows([[(a @ b).trace() for b in hull] for a in hull], cols=len(hull))
        trace_radical_dim = kernel(gram).dim
        system = Mat.from_rows([[(x @ b).trace() for x in gens] for b in hull], cols=k)
        coeffs = kernel(system).vectors()
    else:
        coeffs = Subspace.full(k).vectors()
    vecs = []
    for c in coeffs:
        v = [Fraction(0)] * g.dim
        for ca, x in zip(c, rvecs):
            if ca:
                for j, xj in enumerate(x):
                    v[j] += ca * xj
        vecs.append(v)
    nil = Subspace.span(vecs, g.dim)
    checks = _verify_ideal(g, nil)
    cls = nilpotency_class(restrict(g, nil))
    if cls is None:
        raise InternalError("computed nilradical is not nilpotent")
    return NilradicalReport(
        algebra=g,
        nilradical=AlgSubspace(g, nil),
        nilpotency_class=cls,
        radical_dim=k,
        hull_dim=len(hull),
        trace_radical_dim=trace_radical_dim,
        ideal_checks=checks,
    )


def _derivation_equations(g: LieAlgebra) -> list[list[Fraction]]:
    """Rows of D[e_i,e_j] - [De_i, e_j] - [e_i, De_j] = 0 in the row-major entries of D."""
    n = g.dim
    rows = []
    for i, j in combinations(range(n), 2):
        cij = g.basis_bracket(i, j)
        for m in range(n):
            row = [Fraction(0)] * (n * n)
            for l, c in enumerate(cij):
                if c:
                    row[m * n + l] += c
            for kk in range(n):
                c = g.basis_bracket(kk, j)[m]
                if c:
                    row[kk * n + i] -= c
                c = g.basis_bracket(i, kk)[m]
                if c:
                    row[kk * n + j] -= c
            if any(row):
                rows.append(row)
    return rows


def _skew_equations(q: Mat) -> list[list[Fraction]]:
    """Rows of (D^T q + q D)_{ab} = 0 for a <= b."""
    n = q.rows
    rows = []
    for a in range(n):
        for b in range(a, n):
            row = [Fraction(0)] * (n * n)
            for kk in range(n):
                if q[kk, b]:
                    row[kk * n + a] += q[kk, b]
                if q[a, kk]:
                    row[kk * n + b] += q[a, kk]
            rows.append(row)
    return rows


def _solve(g: LieAlgebra, rows: list[list[Fraction]]) -> LinMapAlg:
    n = g.dim
    space = kernel(Mat.from_rows(rows, cols=n * n)) if rows else Subspace.full(n * n)
    return LinMapAlg(g, space, derivations=True)


def derivations(g: LieAlgebra) -> LinMapAlg:
    return _solve(g, _derivation_equations(g))


def skew_derivations(g: LieAlgebra, q: MetricTensor) -> LinMapAlg:
    """Derivations D with D^T q + q D = 0."""
    if q.parent_dim != g.dim:
        raise DimensionError(f"metric of size {q.parent_dim} for a {g.dim}-dimensional algebra")
    return _solve(g, _derivation_equations(g) + _skew_equations(q.q))


@dataclass(frozen=True)
class IsometryAlgebra:
    base: LieAlgebra
    metric: MetricTensor
    stab: LinMapAlg
    total: LieAlgebra
    n_embed: AlgSubspace


def isometry_algebra(n: LieAlgebra, q: MetricTensor | None = None) -> IsometryAlgebra:
    """n ⋊ (skew derivations of n); only defined here for nilpotent ``n``."""
    if q is None:
        q = MetricTensor.identity(n.dim)
    if q.parent_dim != n.dim:
        raise DimensionError(f"metric of size {q.parent_dim} for a {n.dim}-dimensional algebra")
    if not is_nilpotent(n):
        raise PreconditionError(
            "isometry algebra requires a nilpotent base algebra; "
            "the semidirect decomposition is only guaranteed for nilpotent connected groups"
        )
    stab = skew_derivations(n, q)
    sd = semidirect(n, stab)
    return IsometryAlgebra(n, q, stab, sd.algebra, sd.n_embed)


@dataclass(frozen=True)
class NilradicalVerdict:
    holds: bool
    nil_found: AlgSubspace
    report: NilradicalReport = field(repr=False)


def check_nilradical_condition(iso: IsometryAlgebra) -> NilradicalVerdict:
    rep = nilradical(iso.total)
    holds = subspace_equal(rep.nilradical.space, iso.n_embed.space)
    return NilradicalVerdict(holds, rep.nilradical, rep)


def random_metric(n: int, rng, spread: int = 3) -> MetricTensor:
    """A random positive definite rational metric B^T B + c I."""
    b = Mat.from_rows(
        [[Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(n)] for _ in range(n)],
        cols=n,
    ) if n else Mat.zeros(0, 0)
    c = Fraction(rng.randint(1, 4), rng.randint(1, 4))
    return MetricTensor(b.T @ b + Mat.identity(n).scale(c))


def is_skew_for(d: Mat, q: MetricTensor) -> bool:
    return (d.T @ q.q + q.q @ d).is_zero()


__all__ = [
    "MetricTensor",
    "NilradicalReport",
    "IsometryAlgebra",
    "NilradicalVerdict",
    "NotPositiveDefiniteError",
    "PreconditionError",
    "killing_form",
    "radical",
    "nilradical",
    "derivations",
    "skew_derivations",
    "isometry_algebra",
    "check_nilradical_condition",
    "random_metric",
    "is_skew_for",
    "leading_minors",
]
