import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liework.exactla import DimensionError, Mat, Subspace, subspace_equal
from liework.liecore import (
    AlgSubspace,
    LieAlgebra,
    LinMapAlg,
    NotADerivationError,
    abelian,
    ad,
    bracket,
    center,
    change_basis,
    derived_series,
    is_ideal,
    is_nilpotent,
    is_solvable,
    jacobi_residual,
    lower_central_series,
    restrict,
    semidirect,
    validate,
)
from liework.invariants import MetricTensor, skew_derivations
from liework.workbench.catalog import catalog, heisenberg3, rototranslation, so3

from conftest import random_invertible

LIE = {e.name: e.payload.algebra for e in catalog() if e.kind == "lie-algebra"}
vec3 = st.lists(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)), min_size=3, max_size=3)


def test_validate_heisenberg():
    assert validate(heisenberg3()) == []


@pytest.mark.parametrize("n", range(0, 5))
def test_validate_abelian(n):
    assert validate(abelian(n)) == []


def test_validate_catches_corruption():
    # [e1,e2] = e2, [e1,e3] = e3: e1 acts as the identity on span{e2, e3}
    g = LieAlgebra(3, {(0, 1): {1: 1}, (0, 2): {2: 1}})
    assert validate(g) == []
    bad = LieAlgebra(3, {(0, 1): {1: 1}, (0, 2): {2: 1}, (1, 2): {2: 1}})
    violations = validate(bad)
    assert violations and any(violations[0].residual)


def test_validate_reports_residual():
    # [e1,e2] = e1, [e1,e3] = e3 leaves Jacobi residual -e3 on (e1, e2, e3)
    g = LieAlgebra(3, {(0, 1): {0: 1}, (0, 2): {2: 1}})
    (v,) = validate(g)
    assert (v.i, v.j, v.k) == (0, 1, 2)
    assert v.residual == (0, 0, -1)


def test_bracket_heisenberg():
    g = heisenberg3()
    assert bracket(g, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert bracket(g, (0, 1, 0), (1, 0, 0)) == (0, 0, -1)


@given(vec3)
def test_bracket_self_is_zero(x):
    for g in (heisenberg3(), rototranslation(), so3()):
        assert not any(bracket(g, x, x))


@given(vec3, vec3)
def test_ad_matches_bracket(x, y):
    g = so3()
    assert ad(g, x).apply(y) == bracket(g, x, y)


def test_ad_abelian_is_zero():
    assert ad(abelian(3), (1, 2, 3)).is_zero()


def test_length_mismatch():
    with pytest.raises(DimensionError):
        bracket(heisenberg3(), (1, 0), (0, 1, 0))


@settings(max_examples=30)
@given(vec3, vec3, vec3)
def test_jacobi_on_random_vectors(x, y, z):
    for g in (heisenberg3(), rototranslation(), so3()):
        assert not any(jacobi_residual(g, x, y, z))


def dims(series):
    return [s.dim for s in series]


def test_series_heisenberg():
    assert dims(lower_central_series(heisenberg3())) == [3, 1, 0]


def test_series_abelian():
    assert dims(lower_central_series(abelian(4))) == [4, 0]


def test_series_rototranslation_stabilizes():
    lcs = lower_central_series(rototranslation())
    assert dims(lcs) == [3, 2, 2]
    assert subspace_equal(lcs[1].space, Subspace.coordinate([0, 1], 3))
    assert dims(derived_series(rototranslation())) == [3, 2, 0]


def test_series_so3_constant():
    assert dims(derived_series(so3())) == [3, 3]


def test_predicates():
    h, r, s = heisenberg3(), rototranslation(), so3()
    assert is_nilpotent(h) and is_solvable(h)
    assert not is_nilpotent(r) and is_solvable(r)
    assert not is_solvable(s)
    assert subspace_equal(center(h).space, Subspace.coordinate([2], 3))


def test_zero_dimensional_algebra():
    g = abelian(0)
    assert validate(g) == [] and is_nilpotent(g) and is_solvable(g)
    assert is_ideal(g, AlgSubspace(g, Subspace.zero(0)))


def test_ideals():
    h = heisenberg3()
    assert is_ideal(h, center(h))
    assert is_ideal(h, AlgSubspace(h, Subspace.coordinate([2], 3)))
    assert not is_ideal(h, AlgSubspace(h, Subspace.coordinate([0], 3)))


@pytest.mark.parametrize("name", sorted(LIE))
def test_series_terms_are_ideals(name):
    g = LIE[name]
    for s in lower_central_series(g) + derived_series(g):
        assert is_ideal(g, s)


@pytest.mark.parametrize("name", sorted(LIE))
def test_nilpotent_implies_solvable(name):
    g = LIE[name]
    assert not is_nilpotent(g) or is_solvable(g)


@pytest.mark.parametrize("name", sorted(LIE))
def test_center_brackets_to_zero(name):
    g = LIE[name]
    for z in center(g).vectors():
        for i in range(g.dim):
            assert not any(bracket(g, z, g.basis_vector(i)))


def test_semidirect_rotation_is_rototranslation():
    rot = Mat.from_rows([[0, -1], [1, 0]])
    sd = semidirect(abelian(2), LinMapAlg.span(abelian(2), [rot]))
    assert sd.algebra.dim == 3 and validate(sd.algebra) == []
    # the canonical basis of h is -rot, so flipping e3 recovers the catalog constants
    flipped = change_basis(sd.algebra, Mat.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, -1]]))
    assert flipped.same_structure(rototranslation())


def test_semidirect_with_zero_h_returns_base():
    h = heisenberg3()
    sd = semidirect(h, LinMapAlg(h, Subspace.zero(9)))
    assert sd.algebra.same_structure(h)


def test_semidirect_heisenberg_skew():
    h = heisenberg3()
    sd = semidirect(h, skew_derivations(h, MetricTensor.identity(3)))
    assert sd.algebra.dim == 4 and validate(sd.algebra) == []


def test_semidirect_rejects_non_derivation():
    h = heisenberg3()
    with pytest.raises(NotADerivationError):
        semidirect(h, LinMapAlg.span(h, [Mat.identity(3)]))


def test_semidirect_restriction_and_action():
    h = heisenberg3()
    stab = skew_derivations(h, MetricTensor.identity(3))
    sd = semidirect(h, stab)
    assert restrict(sd.algebra, sd.n_embed.space, h.names).same_structure(h)
    d = stab.basis_maps[0]
    for i in range(3):
        y = h.basis_vector(i)
        assert bracket(sd.algebra, (0, 0, 0, 1), y + (0,)) == d.apply(y) + (0,)


def test_change_basis_is_isomorphism(rng):
    g = heisenberg3()
    t = random_invertible(3, rng)
    g2 = change_basis(g, t)
    assert validate(g2) == []
    for i, j in combinations(range(3), 2):
        x, y = g.basis_vector(i), g.basis_vector(j)
        assert bracket(g2, t.apply(x), t.apply(y)) == t.apply(bracket(g, x, y))
