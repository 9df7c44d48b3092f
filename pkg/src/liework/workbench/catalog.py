"""Built-in algebras and finite metric groups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from ..exactla import Mat, Subspace
from ..finitegrp import (
    FiniteMetricGroup,
    cyclic,
    direct_product_cyclic,
    discrete_length,
    metric_from_length,
    validate_group,
    word_length,
)
from ..invariants import MetricTensor
from ..liecore import LieAlgebra, LinMapAlg, abelian, semidirect, validate


@dataclass(frozen=True)
class LieEntry:
    algebra: LieAlgebra
    metric: MetricTensor


Payload = Union[LieEntry, FiniteMetricGroup]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "lie-algebra" or "finite-group"
    payload: Payload
    provenance: str

    def validate(self) -> list:
        if self.kind == "lie-algebra":
            return validate(self.payload.algebra)
        return validate_group(self.payload)


def heisenberg3() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): {2: 1}})


def filiform4() -> LieAlgebra:
    return LieAlgebra(4, {(0, 1): {2: 1}, (0, 2): {3: 1}})


def rototranslation() -> LieAlgebra:
    # [e3,e1] = e2, [e3,e2] = -e1, stored with i < j
    return LieAlgebra(3, {(0, 2): {1: -1}, (1, 2): {0: 1}})


def so3() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})


def euclid3() -> LieAlgebra:
    """Translations e1..e3 then rotations r1..r3, as abelian(3) ⋊ so(3)."""
    n = abelian(3)
    gens = []
    for i, j in ((1, 2), (2, 0), (0, 1)):
        rows = [[0] * 3 for _ in range(3)]
        rows[j][i] = 1
        rows[i][j] = -1
        gens.append(Mat.from_rows(rows))
    h = LinMapAlg(n, Subspace.span([g.flatten() for g in gens], 9))
    return semidirect(n, h, names=["e1", "e2", "e3", "r1", "r2", "r3"]).algebra


def _fmg(name: str, labels, table, length) -> FiniteMetricGroup:
    return FiniteMetricGroup(labels, table, metric_from_length(labels, table, length), 0, name)


def fourpoint_discrete() -> FiniteMetricGroup:
    """{1, i, -1, -i} under complex multiplication with the discrete distance."""
    labels = ["1", "i", "-1", "-i"]
    _, table = cyclic(4)
    return _fmg("fourpoint-discrete", labels, table, discrete_length(4))


def z4_cycle() -> FiniteMetricGroup:
    labels, table = cyclic(4)
    return _fmg("z4-cycle", labels, table, word_length(table, [1, 3]))


def klein4_discrete() -> FiniteMetricGroup:
    labels, table = direct_product_cyclic(2, 2)
    return _fmg("klein4-discrete", labels, table, discrete_length(4))


@lru_cache(maxsize=1)
def _entries() -> tuple[CatalogEntry, ...]:
    std = "standard construction"
    lie = [
        ("heisenberg3", heisenberg3(), "standard construction: [e1,e2] = e3"),
        ("filiform4", filiform4(), "standard construction: [e1,e2] = e3, [e1,e3] = e4"),
        (
            "rototranslation",
            rototranslation(),
            "solvable group isometric to Euclidean 3-space; "
            "brackets obtained by differentiating the rototranslation product",
        ),
        ("so3", so3(), std + ": cyclic brackets [e1,e2] = e3"),
        ("euclid3", euclid3(), std + ": abelian(3) semidirect so(3)"),
    ] + [(f"abelian{n}", abelian(n), std) for n in range(1, 5)]
    out = [
        CatalogEntry(name, "lie-algebra", LieEntry(g, MetricTensor.identity(g.dim)), prov)
        for name, g, prov in lie
    ]
    out += [
        CatalogEntry(
            "fourpoint-discrete",
            "finite-group",
            fourpoint_discrete(),
            "fourth roots of unity with the discrete distance; every permutation is an isometry",
        ),
        CatalogEntry("z4-cycle", "finite-group", z4_cycle(), std + ": Z/4 with the 4-cycle graph distance"),
        CatalogEntry("klein4-discrete", "finite-group", klein4_discrete(), std + ": Z/2 x Z/2, discrete distance"),
    ]
    return tuple(sorted(out, key=lambda e: e.name))


def catalog() -> list[CatalogEntry]:
    return list(_entries())


def lookup(name: str) -> CatalogEntry:
    for e in _entries():
        if e.name == name:
            return e
    raise KeyError(name)


def names() -> list[str]:
    return [e.name for e in _entries()]


__all__ = [
    "CatalogEntry",
    "LieEntry",
    "catalog",
    "lookup",
    "names",
    "heisenberg3",
    "filiform4",
    "rototranslation",
    "so3",
    "euclid3",
    "fourpoint_discrete",
    "z4_cycle",
    "klein4_discrete",
]
