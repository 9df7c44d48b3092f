import random
from fractions import Fraction

import pytest

from liework.exactla import Mat, Subspace, subspace_equal
from liework.invariants import (
    MetricTensor,
    NotPositiveDefiniteError,
    PreconditionError,
    check_nilradical_condition,
    derivations,
    is_skew_for,
    isometry_algebra,
    killing_form,
    nilradical,
    radical,
    random_metric,
    skew_derivations,
)
from liework.liecore import (
    abelian,
    bracket_spaces,
    change_basis,
    is_ideal,
    is_nilpotent,
    is_solvable,
    nilpotency_class,
    restrict,
)
from liework.workbench.catalog import catalog, euclid3, filiform4, heisenberg3, rototranslation, so3

import oracles
from conftest import random_invertible

LIE = {e.name: e.payload.algebra for e in catalog() if e.kind == "lie-algebra"}
NILPOTENT = ["heisenberg3", "abelian1", "abelian2", "abelian3", "abelian4", "filiform4"]
I3 = MetricTensor.identity(3)


def test_killing_abelian_zero():
    assert killing_form(abelian(3)).is_zero()


def test_killing_heisenberg_zero():
    assert killing_form(heisenberg3()).is_zero()


def test_killing_so3():
    assert killing_form(so3()) == Mat.identity(3).scale(-2)


@pytest.mark.parametrize("name", sorted(LIE))
def test_killing_symmetric(name):
    assert killing_form(LIE[name]).is_symmetric()


def test_radical_of_solvable_is_everything():
    for g in (heisenberg3(), rototranslation(), filiform4()):
        assert radical(g).dim == g.dim


def test_radical_so3_zero():
    assert radical(so3()).dim == 0


def test_radical_euclid3_translations():
    assert subspace_equal(radical(euclid3()).space, Subspace.coordinate(range(3), 6))


def test_nilradical_examples():
    assert nilradical(heisenberg3()).dim == 3
    assert subspace_equal(nilradical(rototranslation()).nilradical.space, Subspace.coordinate([0, 1], 3))
    assert nilradical(so3()).dim == 0
    assert nilradical(heisenberg3()).nilpotency_class == 2


@pytest.mark.parametrize("name", sorted(LIE))
def test_nilradical_is_nilpotent_ideal(name):
    g = LIE[name]
    rep = nilradical(g)
    assert is_ideal(g, rep.nilradical)
    assert is_nilpotent(restrict(g, rep.nilradical.space))
    assert nilpotency_class(restrict(g, rep.nilradical.space)) == rep.nilpotency_class


@pytest.mark.parametrize("name", sorted(LIE))
def test_nilradical_radical_relations(name):
    g = LIE[name]
    nil = nilradical(g).nilradical.space
    rad = radical(g).space
    assert bracket_spaces(g, Subspace.full(g.dim), rad) <= nil
    assert nil <= rad
    assert (rad.dim == g.dim) == is_solvable(g)
    assert (nil.dim == g.dim) == is_nilpotent(g)


@pytest.mark.parametrize("name", sorted(LIE))
def test_nilradical_matches_ad_nilpotent_elements_of_radical(name, rng):
    # oracle: inside the radical, the nilradical is exactly the ad-nilpotent elements
    g = LIE[name]
    nil = nilradical(g).nilradical.space
    rad = radical(g).space
    for _ in range(5):
        coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rad.dim)]
        x = [sum((c * v[k] for c, v in zip(coeffs, rad.vectors())), Fraction(0)) for k in range(g.dim)]
        assert oracles.ad_is_nilpotent(g, x) == (x in nil)


@pytest.mark.parametrize("name", sorted(LIE))
def test_nilradical_equivariance(name):
    g = LIE[name]
    rng = random.Random(name)
    nil = nilradical(g).nilradical.space
    for _ in range(3):
        t = random_invertible(g.dim, rng)
        moved = nilradical(change_basis(g, t)).nilradical.space
        assert subspace_equal(moved, nil.image(t))


def test_derivation_examples():
    for n in range(1, 5):
        assert derivations(abelian(n)).dim == n * n
    assert derivations(heisenberg3()).dim == 6
    assert derivations(so3()).dim == 3


@pytest.mark.parametrize("name", sorted(LIE))
def test_derivation_dims_match_symbolic_solver(name):
    g = LIE[name]
    assert derivations(g).dim == oracles.derivation_dim(g)
    assert skew_derivations(g, MetricTensor.identity(g.dim)).dim == oracles.derivation_dim(g, Mat.identity(g.dim))


def test_skew_derivation_examples():
    for n in range(1, 5):
        assert skew_derivations(abelian(n), MetricTensor.identity(n)).dim == n * (n - 1) // 2
    sk = skew_derivations(heisenberg3(), I3)
    assert sk.dim == 1
    assert sk.basis_maps[0] in {Mat.from_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]),
                                Mat.from_rows([[0, -1, 0], [1, 0, 0], [0, 0, 0]])}
    assert skew_derivations(rototranslation(), I3).dim == 1


@pytest.mark.parametrize("name", sorted(LIE))
def test_skew_derivations_are_skew_derivations(name, rng):
    g = LIE[name]
    q = random_metric(g.dim, rng)
    sk = skew_derivations(g, q)
    assert sk.space <= derivations(g).space
    assert all(is_skew_for(d, q) for d in sk.basis_maps)
    assert sk.dim == oracles.derivation_dim(g, q.q)


@pytest.mark.parametrize("name", NILPOTENT)
def test_skew_derivations_scaling_invariance(name, rng):
    g = LIE[name]
    q = random_metric(g.dim, rng)
    for c in (Fraction(1, 3), Fraction(7, 2), 5):
        assert subspace_equal(skew_derivations(g, q.scaled(c)).space, skew_derivations(g, q).space)


def test_metric_validation():
    with pytest.raises(NotPositiveDefiniteError):
        MetricTensor(Mat.from_rows([[1, 2], [2, 1]]))
    with pytest.raises(NotPositiveDefiniteError):
        MetricTensor(Mat.from_rows([[1, 1], [0, 1]]))
    with pytest.raises(NotPositiveDefiniteError):
        MetricTensor(Mat.from_rows([[0, 0], [0, 1]]))
    MetricTensor(Mat.from_rows([[2, 1], [1, 2]]))


def test_isometry_algebra_examples():
    assert isometry_algebra(heisenberg3(), I3).total.dim == 4
    assert isometry_algebra(abelian(3), I3).total.dim == 6
    with pytest.raises(PreconditionError):
        isometry_algebra(rototranslation(), I3)


def test_isometry_algebra_structure():
    iso = isometry_algebra(heisenberg3(), I3)
    assert iso.total.dim == iso.base.dim + iso.stab.dim
    assert is_ideal(iso.total, iso.n_embed)
    assert restrict(iso.total, iso.n_embed.space, iso.base.names).same_structure(iso.base)


def test_nilradical_condition_examples():
    v = check_nilradical_condition(isometry_algebra(heisenberg3(), I3))
    assert v.holds and v.nil_found.dim == 3
    v = check_nilradical_condition(isometry_algebra(abelian(3), I3))
    assert v.holds and subspace_equal(v.nil_found.space, Subspace.coordinate(range(3), 6))
    iso = isometry_algebra(abelian(1), MetricTensor.identity(1))
    assert iso.total.dim == 1 and check_nilradical_condition(iso).holds


@pytest.mark.parametrize("name", NILPOTENT)
def test_nilradical_condition_metric_independent(name):
    g = LIE[name]
    rng = random.Random(f"metric-{name}")
    for _ in range(3):
        assert check_nilradical_condition(isometry_algebra(g, random_metric(g.dim, rng))).holds
