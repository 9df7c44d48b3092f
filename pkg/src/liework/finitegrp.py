"""Finite groups with left-invariant distances.

Brute-force tools for isometry groups of finite metric groups: enumeration of
isometries by backtracking, affine decomposition ``F = L_m o Phi``, and the
four equivalent conditions relating left translations, affine maps and the
identity stabilizer.  Elements are referred to by index throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

from .exactla import rat


@dataclass(frozen=True)
class FiniteMetricGroup:
    labels: tuple[str, ...]
    identity: int
    table: tuple[tuple[int, ...], ...]
    dist: tuple[tuple[Fraction, ...], ...]
    name: str = field(default="", compare=False)

    def __init__(self, labels, table, dist, identity: int = 0, name: str = ""):
        object.__setattr__(self, "labels", tuple(str(x) for x in labels))
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in r) for r in table))
        object.__setattr__(self, "dist", tuple(tuple(rat(x) for x in r) for r in dist))
        object.__setattr__(self, "name", name)

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        e = self.identity
        return next(h for h in range(self.order) if self.table[g][h] == e)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def with_metric(self, dist, name: str | None = None) -> FiniteMetricGroup:
        return FiniteMetricGroup(self.labels, self.table, dist, self.identity, name or self.name)

    def __repr__(self) -> str:
        return f"FiniteMetricGroup({self.name or '?'}, order={self.order})"


def validate_group(m: FiniteMetricGroup) -> list[str]:
    """Every violated axiom (group, metric, left-invariance) as a message; empty if valid."""
    out: list[str] = []
    n = m.order
    if len(m.table) != n or any(len(r) != n for r in m.table):
        return [f"table must be {n}x{n}"]
    if len(m.dist) != n or any(len(r) != n for r in m.dist):
        return [f"distance matrix must be {n}x{n}"]
    if not 0 <= m.identity < n:
        return [f"identity index {m.identity} out of range"]
    if any(not 0 <= x < n for r in m.table for x in r):
        return ["table entry out of range"]
    t, d, e = m.table, m.dist, m.identity
    for g in range(n):
        if t[e][g] != g or t[g][e] != g:
            out.append(f"identity: {m.labels[e]}*{m.labels[g]} or {m.labels[g]}*{m.labels[e]} != {m.labels[g]}")
        if not any(t[g][h] == e and t[h][g] == e for h in range(n)):
            out.append(f"inverse: {m.labels[g]} has no two-sided inverse")
    for a, b, c in product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            out.append(f"associativity fails at ({m.labels[a]}, {m.labels[b]}, {m.labels[c]})")
            break
    for p in range(n):
        for q in range(n):
            if d[p][q] != d[q][p]:
                out.append(f"symmetry: d({m.labels[p]},{m.labels[q]}) != d({m.labels[q]},{m.labels[p]})")
            if p == q and d[p][q] != 0:
                out.append(f"diagonal: d({m.labels[p]},{m.labels[p]}) != 0")
            if p != q and d[p][q] <= 0:
                out.append(f"positivity: d({m.labels[p]},{m.labels[q]}) <= 0")
    for p, q, r in product(range(n), repeat=3):
        if d[p][r] > d[p][q] + d[q][r]:
            out.append(f"triangle: d({m.labels[p]},{m.labels[r]}) > d via {m.labels[q]}")
    for g, p, q in product(range(n), repeat=3):
        if d[t[g][p]][t[g][q]] != d[p][q]:
            out.append(
                f"left-invariance: d({m.labels[g]}*{m.labels[p]}, {m.labels[g]}*{m.labels[q]}) "
                f"!= d({m.labels[p]}, {m.labels[q]})"
            )
    return out


@dataclass(frozen=True, order=True)
class Perm:
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"{self.mapping} is not a bijection")

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(n)))

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def __len__(self) -> int:
        return len(self.mapping)

    def compose(self, other: Perm) -> Perm:
        """``self o other``: apply ``other`` first."""
        return Perm(tuple(self.mapping[i] for i in other.mapping))

    def inverse(self) -> Perm:
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Perm(tuple(inv))


@dataclass(frozen=True)
class IsometrySet:
    group: FiniteMetricGroup
    perms: tuple[Perm, ...]

    def __init__(self, group: FiniteMetricGroup, perms: Iterable[Perm]):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "perms", tuple(sorted(set(perms))))

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.perms)

    def __contains__(self, p: Perm) -> bool:
        return p in self._members

    @cached_property
    def _members(self) -> frozenset[Perm]:
        return frozenset(self.perms)

    def is_group(self) -> bool:
        members = self._members
        if not members:
            return False
        return all(a.compose(b) in members for a in members for b in members) and all(
            a.inverse() in members for a in members
        )

    def same_perms(self, other: IsometrySet) -> bool:
        return self.perms == other.perms


@dataclass(frozen=True)
class AffineWitness:
    translation: int
    automorphism: Perm


def is_isometry(f: Perm, m1: FiniteMetricGroup, m2: FiniteMetricGroup | None = None) -> bool:
    m2 = m2 or m1
    d1, d2 = m1.dist, m2.dist
    n = m1.order
    return all(d2[f(p)][f(q)] == d1[p][q] for p in range(n) for q in range(p + 1, n))


def is_homomorphism(f: Perm, m1: FiniteMetricGroup, m2: FiniteMetricGroup | None = None) -> bool:
    m2 = m2 or m1
    t1, t2 = m1.table, m2.table
    n = m1.order
    return all(f(t1[a][b]) == t2[f(a)][f(b)] for a in range(n) for b in range(n))


def isometries_between(
    m1: FiniteMetricGroup, m2: FiniteMetricGroup, fix_identity: bool = False
) -> list[Perm]:
    """All distance-preserving bijections m1 -> m2, in lexicographic order.

    Backtracking assigns images point by point; a point may only go to a point
    with the same sorted distance row, and every new assignment must preserve
    distances to the points already placed.
    """
    n = m1.order
    if n != m2.order:
        return []
    d1, d2 = m1.dist, m2.dist
    prof1 = [tuple(sorted(r)) for r in d1]
    prof2 = [tuple(sorted(r)) for r in d2]
    cands = [[q for q in range(n) if prof2[q] == prof1[p]] for p in range(n)]
    if fix_identity:
        e1, e2 = m1.identity, m2.identity
        cands[e1] = [e2] if e2 in cands[e1] else []
    out: list[Perm] = []
    img = [-1] * n
    used = [False] * n

    def extend(p: int) -> None:
        if p == n:
            out.append(Perm(tuple(img)))
            return
        row = d1[p]
        for q in cands[p]:
            if used[q]:
                continue
            drow = d2[q]
            if all(drow[img[s]] == row[s] for s in range(p)):
                img[p] = q
                used[q] = True
                extend(p + 1)
                used[q] = False
        img[p] = -1

    extend(0)
    return out


def isometries(m: FiniteMetricGroup) -> IsometrySet:
    return IsometrySet(m, isometries_between(m, m))


def left_translation(m: FiniteMetricGroup, g: int) -> Perm:
    return Perm(m.table[g])


def left_translations(m: FiniteMetricGroup) -> IsometrySet:
    return IsometrySet(m, (left_translation(m, g) for g in range(m.order)))


def automorphisms(m: FiniteMetricGroup, within: Iterable[Perm] | None = None) -> IsometrySet:
    """Group automorphisms of ``m``, optionally only those among ``within``.

    Without ``within`` this backtracks over bijections fixing the identity,
    keeping element orders and multiplicativity on the assigned part.
    """
    if within is not None:
        return IsometrySet(m, (f for f in within if is_homomorphism(f, m)))
    n, t, e = m.order, m.table, m.identity
    orders = [m.element_order(g) for g in range(n)]
    img = [-1] * n
    used = [False] * n
    out: list[Perm] = []
    img[e] = e
    used[e] = True
    rest = [g for g in range(n) if g != e]

    def consistent(p: int) -> bool:
        for s in range(n):
            if img[s] < 0:
                continue
            for a, b in ((p, s), (s, p)):
                c = t[a][b]
                if img[c] >= 0 and img[c] != t[img[a]][img[b]]:
                    return False
        return True

    def extend(k: int) -> None:
        if k == len(rest):
            out.append(Perm(tuple(img)))
            return
        p = rest[k]
        for q in range(n):
            if used[q] or orders[q] != orders[p]:
                continue
            img[p] = q
            used[q] = True
            if consistent(p):
                extend(k + 1)
            used[q] = False
            img[p] = -1

    if n:
        extend(0)
    return IsometrySet(m, out)


def stabilizer(s: IsometrySet) -> IsometrySet:
    e = s.group.identity
    return IsometrySet(s.group, (f for f in s if f(e) == e))


def affine_decompose(f: Perm, m: FiniteMetricGroup) -> AffineWitness | None:
    """Write ``f = L_m o Phi`` with ``Phi`` an automorphism, if possible.

    ``m`` is forced to be ``f(identity)``, so the witness is unique when it exists.
    """
    tr = f(m.identity)
    inv = m.inverse(tr)
    phi = Perm(tuple(m.table[inv][f(p)] for p in range(m.order)))
    if is_homomorphism(phi, m):
        return AffineWitness(tr, phi)
    return None


def conjugate(f: Perm, i: Perm) -> Perm:
    return f.compose(i).compose(f.inverse())


def conjugate_set(f: Perm, s: IsometrySet, target: FiniteMetricGroup | None = None) -> IsometrySet:
    """``{f o I o f^-1 : I in s}``; ``target`` is the codomain group of ``f`` (default: same)."""
    return IsometrySet(target or s.group, (conjugate(f, i) for i in s))


@dataclass(frozen=True)
class TfaeReport:
    a: bool
    b: bool
    c: bool
    d: bool
    isometry_order: int
    translations_order: int
    stabilizer_order: int
    affine_count: int
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def equivalent(self) -> bool:
        return self.a == self.b == self.c == self.d


def check_tfae(m: FiniteMetricGroup, iso: IsometrySet | None = None) -> TfaeReport:
    """Evaluate the four conditions independently.

    (a) left translations are normal in the isometry group;
    (b) every isometry is affine;
    (c) every identity-fixing isometry is an automorphism;
    (d) G is the internal semidirect product of M^L and Stab_1(G).
    """
    g = iso if iso is not None else isometries(m)
    ml = left_translations(m)
    ml_set = set(ml.perms)
    stab = stabilizer(g)
    witnesses: dict = {}

    a = True
    for f in g:
        finv = f.inverse()
        for lp in ml:
            if f.compose(lp).compose(finv) not in ml_set:
                a = False
                witnesses["a"] = {"isometry": list(f.mapping), "translation": list(lp.mapping)}
                break
        if not a:
            break

    affine = 0
    b_witness = None
    for f in g:
        if affine_decompose(f, m) is not None:
            affine += 1
        elif b_witness is None:
            b_witness = f
    b = b_witness is None
    if b_witness is not None:
        witnesses["b"] = {"non_affine": list(b_witness.mapping)}

    c = True
    for f in stab:
        if not is_homomorphism(f, m):
            c = False
            witnesses["c"] = {"non_automorphism": list(f.mapping)}
            break

    # (d): product and intersection, with normality checked only against the
    # stabilizer, which suffices once M^L . Stab_1 = G
    products = {lp.compose(s) for lp in ml for s in stab}
    trivial_meet = ml_set & set(stab.perms) == {Perm.identity(m.order)}
    factorizes = products == set(g.perms)
    normal = all(s.compose(lp).compose(s.inverse()) in ml_set for s in stab for lp in ml)
    d = factorizes and trivial_meet and normal
    if not d:
        witnesses["d"] = {"factorizes": factorizes, "trivial_intersection": trivial_meet, "normal": normal}

    return TfaeReport(a, b, c, d, len(g), len(ml), len(stab), affine, witnesses)


def check_affinity_lemma(m1: FiniteMetricGroup, m2: FiniteMetricGroup) -> tuple[int, list[Perm]]:
    """Test the claim: an identity-fixing isometry conjugating M1^L onto M2^L is an isomorphism.

    Returns the number of isometries satisfying the hypothesis and the list of
    those that are not isomorphisms (which must be empty).
    """
    ml2 = set(left_translations(m2).perms)
    tr1 = [left_translation(m1, g) for g in range(m1.order)]
    hyp = 0
    bad = []
    for f in isometries_between(m1, m2, fix_identity=True):
        finv = f.inverse()
        if all(f.compose(lp).compose(finv) in ml2 for lp in tr1):
            hyp += 1
            if not is_homomorphism(f, m1, m2):
                bad.append(f)
    return hyp, bad


# -- group and metric constructors --------------------------------------------


def _from_elements(elements: Sequence, mul, labels: Sequence[str] | None = None) -> tuple[list[str], list[list[int]]]:
    idx = {x: i for i, x in enumerate(elements)}
    table = [[idx[mul(a, b)] for b in elements] for a in elements]
    return list(labels) if labels else [str(x) for x in elements], table


def direct_product_cyclic(*orders: int) -> tuple[list[str], list[list[int]]]:
    elements = list(product(*(range(k) for k in orders)))

    def mul(a, b):
        return tuple((x + y) % k for x, y, k in zip(a, b, orders))

    labels = ["".join(str(x) for x in el) if el else "e" for el in elements]
    return _from_elements(elements, mul, labels)


def cyclic(n: int) -> tuple[list[str], list[list[int]]]:
    return _from_elements(list(range(n)), lambda a, b: (a + b) % n)


def dihedral(n: int) -> tuple[list[str], list[list[int]]]:
    """Symmetries of the n-gon as pairs (rotation k, reflection s): r^k s^f."""
    elements = [(k, f) for f in (0, 1) for k in range(n)]

    def mul(a, b):
        k1, f1 = a
        k2, f2 = b
        return ((k1 + (-k2 if f1 else k2)) % n, f1 ^ f2)

    labels = [("r%d" % k if k else "e") if not f else ("r%ds" % k if k else "s") for k, f in elements]
    return _from_elements(elements, mul, labels)


def quaternion() -> tuple[list[str], list[list[int]]]:
    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    # unit quaternions as (sign, axis) with axis 0 = real
    units = [(1, 0), (1, 1), (1, 2), (1, 3), (-1, 0), (-1, 1), (-1, 2), (-1, 3)]
    ijk = {(1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2), (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2)}

    def mul(a, b):
        s = a[0] * b[0]
        if a[1] == 0:
            return (s, b[1])
        if b[1] == 0:
            return (s, a[1])
        if a[1] == b[1]:
            return (-s, 0)
        s2, ax = ijk[(a[1], b[1])]
        return (s * s2, ax)

    return _from_elements(units, mul, names)


def metric_from_length(labels, table, length: Sequence, identity: int = 0) -> list[list[Fraction]]:
    """``d(p, q) = length(p^-1 q)``; left-invariant by construction."""
    n = len(labels)
    inv = [next(h for h in range(n) if table[g][h] == identity) for g in range(n)]
    return [[rat(length[table[inv[p]][q]]) for q in range(n)] for p in range(n)]


def discrete_length(n: int, identity: int = 0, value=1) -> list[Fraction]:
    return [Fraction(0) if g == identity else rat(value) for g in range(n)]


def word_length(table, gens: Iterable[int], identity: int = 0) -> list[Fraction]:
    """Word length for a generating set closed under inverses."""
    n = len(table)
    gens = list(gens)
    dist = [-1] * n
    dist[identity] = 0
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = table[x][s]
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    if min(dist) < 0:
        raise ValueError("generators do not generate the group")
    return [Fraction(x) for x in dist]


def random_length(table, rng: random.Random, identity: int = 0) -> list[Fraction]:
    """Symmetric length with values in [1, 2]; the triangle inequality then holds automatically."""
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == identity) for g in range(n)]
    length = [Fraction(0)] * n
    for g in range(n):
        if g == identity or (inv[g] < g):
            continue
        v = 1 + Fraction(rng.randint(0, 4), 4)
        length[g] = length[inv[g]] = v
    return length


def is_triangle_length(table, length, identity: int = 0) -> bool:
    n = len(table)
    return all(length[table[a][b]] <= length[a] + length[b] for a in range(n) for b in range(n))


@dataclass(frozen=True)
class CorpusGroup:
    name: str
    labels: list
    table: list

    @property
    def order(self) -> int:
        return len(self.labels)


def small_groups(max_order: int = 8) -> list[CorpusGroup]:
    """One representative of every isomorphism class of groups of order <= 8 (up to 8)."""
    out = [CorpusGroup("Z1", *cyclic(1))]
    for n in range(2, max_order + 1):
        out.append(CorpusGroup(f"Z{n}", *cyclic(n)))
        if n == 4:
            out.append(CorpusGroup("Z2xZ2", *direct_product_cyclic(2, 2)))
        if n == 6:
            out.append(CorpusGroup("S3", *dihedral(3)))
        if n == 8:
            out.append(CorpusGroup("Z4xZ2", *direct_product_cyclic(4, 2)))
            out.append(CorpusGroup("Z2xZ2xZ2", *direct_product_cyclic(2, 2, 2)))
            out.append(CorpusGroup("D4", *dihedral(4)))
            out.append(CorpusGroup("Q8", *quaternion()))
    return out


def corpus(max_order: int = 8, metrics_per_group: int = 5, seed: int = 0) -> list[FiniteMetricGroup]:
    """Finite metric groups: every group of order <= max_order with several left-invariant metrics.

    Per group: the discrete metric, a word metric for a symmetric generating
    set, a scaled discrete metric and random lengths in [1, 2] up to
    ``metrics_per_group`` entries.
    """
    rng = random.Random(seed)
    out = []
    for cg in small_groups(max_order):
        n = cg.order
        lengths = [discrete_length(n), discrete_length(n, value=Fraction(5, 2))]
        if n > 1:
            lengths.append(word_length(cg.table, sorted(_generating_set(cg.table))))
        while len(lengths) < metrics_per_group:
            lengths.append(random_length(cg.table, rng) if n > 1 else discrete_length(n, value=len(lengths)))
        for k, length in enumerate(lengths):
            assert is_triangle_length(cg.table, length)
            dist = metric_from_length(cg.labels, cg.table, length)
            out.append(FiniteMetricGroup(cg.labels, cg.table, dist, 0, f"{cg.name}/m{k}"))
    return out


def _generating_set(table) -> set[int]:
    """A small symmetric generating set chosen greedily by element index."""
    n = len(table)
    gens: set[int] = set()
    span = {0}
    for g in range(1, n):
        if g in span:
            continue
        gens.add(g)
        gens.add(next(h for h in range(n) if table[g][h] == 0))
        span = _closure(table, gens)
        if len(span) == n:
            break
    return gens


def _closure(table, gens) -> set[int]:
    span = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = table[x][s]
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span
