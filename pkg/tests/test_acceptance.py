"""Acceptance criteria, one test each.

Every comparison is exact (rational arithmetic, canonical subspaces); the only
tolerances are the wall-clock budgets below.  ``pytest tests/test_acceptance.py``
prints a PASS/FAIL line per criterion in the terminal summary.
"""

import io
import json
import random
import time
from fractions import Fraction

from liework.exactla import Mat, Subspace, subspace_equal, subspace_intersect
from liework.finitegrp import (
    affine_decompose,
    check_affinity_lemma,
    check_tfae,
    corpus,
    isometries,
    small_groups,
)
from liework.invariants import (
    MetricTensor,
    check_nilradical_condition,
    derivations,
    isometry_algebra,
    killing_form,
    nilradical,
    radical,
    random_metric,
    skew_derivations,
)
from liework.liecore import abelian, bracket_spaces, change_basis
from liework.workbench.catalog import catalog, lookup
from liework.workbench.cli import run_command
from liework.workbench.report import digest_section

from conftest import random_invertible

METRIC_SWEEP_BUDGET_S = 60
FINITE_SWEEP_BUDGET_S = 300
METRICS_PER_ALGEBRA = 3
METRICS_PER_GROUP = 5
BASIS_CHANGES = 20


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, _ = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def _algebra(name):
    return lookup(name).payload.algebra


def test_ac1_heisenberg_nilradical_condition():
    code, out, _ = _cli("nilrad-condition", "heisenberg3", "--json")
    assert code == 0
    data = json.loads(out)["checks"][0]["data"]
    assert data["total_dim"] == 4
    assert data["skew_derivation_dim"] == 1
    assert data["nil_found"]["dim"] == 3
    assert data["nil_found"] == data["n_embed"]
    assert data["nil_equals_embedded_base"] is True
    assert data["holds"] is True
    # the same through the library, as canonical subspaces
    iso = isometry_algebra(_algebra("heisenberg3"))
    verdict = check_nilradical_condition(iso)
    assert verdict.holds and subspace_equal(verdict.nil_found.space, Subspace.coordinate(range(3), 4))


def test_ac2_nilradical_condition_metric_sweep():
    rng = random.Random(2024)
    bases = [_algebra("heisenberg3"), abelian(2), abelian(3), abelian(4), _algebra("filiform4")]
    start = time.perf_counter()
    runs = 0
    for g in bases:
        metrics = [MetricTensor.identity(g.dim)] + [random_metric(g.dim, rng) for _ in range(METRICS_PER_ALGEBRA)]
        assert len({q.q for q in metrics}) == len(metrics)  # the random metrics are genuinely different
        for q in metrics:
            iso = isometry_algebra(g, q)
            verdict = check_nilradical_condition(iso)
            assert verdict.holds, (g.names, q.q.to_rows())
            assert subspace_equal(verdict.nil_found.space, iso.n_embed.space)
            runs += 1
    assert runs == len(bases) * (METRICS_PER_ALGEBRA + 1)
    assert time.perf_counter() - start <= METRIC_SWEEP_BUDGET_S


def test_ac3_rototranslation():
    g = _algebra("rototranslation")
    assert skew_derivations(g, MetricTensor.identity(3)).dim == 1
    nil = nilradical(g).nilradical.space
    assert nil.dim == 2 and subspace_equal(nil, Subspace.span([(1, 0, 0), (0, 1, 0)], 3))
    code, _, _ = _cli("isometry-algebra", "rototranslation")
    assert code == 3


def test_ac4_fourpoint_counterexample():
    m = lookup("fourpoint-discrete").payload
    iso = isometries(m)
    assert len(iso) == 24
    witnesses = [w for w in (affine_decompose(f, m) for f in iso) if w is not None]
    assert len(witnesses) == 8
    assert len({w.translation for w in witnesses}) == 4 and len({w.automorphism for w in witnesses}) == 2
    r = check_tfae(m, iso)
    assert (r.a, r.b, r.c, r.d) == (False, False, False, False)
    assert r.equivalent


def test_ac5_tfae_sweep():
    start = time.perf_counter()
    groups = corpus(max_order=8, metrics_per_group=METRICS_PER_GROUP)
    assert len(groups) == len(small_groups(8)) * METRICS_PER_GROUP
    disagreements = []
    tally = {True: 0, False: 0}
    for m in groups:
        r = check_tfae(m)
        tally[r.a] += 1
        if not r.equivalent:
            disagreements.append((m.name, r.a, r.b, r.c, r.d))
    assert disagreements == []
    assert tally[True] and tally[False]  # both verdicts occur, so the sweep is not vacuous
    assert time.perf_counter() - start <= FINITE_SWEEP_BUDGET_S


def test_ac6_identity_fixing_conjugating_isometries_are_isomorphisms():
    start = time.perf_counter()
    groups = corpus(max_order=8, metrics_per_group=METRICS_PER_GROUP)
    hypothesis_cases = 0
    bad = []
    for m1 in groups:
        for m2 in groups:
            if m1.order != m2.order:
                continue  # no bijections between sets of different size
            n, failures = check_affinity_lemma(m1, m2)
            hypothesis_cases += n
            bad.extend((m1.name, m2.name, f.mapping) for f in failures)
    assert bad == []
    assert hypothesis_cases > 0
    assert time.perf_counter() - start <= FINITE_SWEEP_BUDGET_S


def test_ac7_nilradical_equivariance():
    rng = random.Random(7)
    entries = [e for e in catalog() if e.kind == "lie-algebra"]
    assert entries
    for e in entries:
        g = e.payload.algebra
        nil = nilradical(g).nilradical.space
        for _ in range(BASIS_CHANGES):
            t = random_invertible(g.dim, rng)
            moved = nilradical(change_basis(g, t)).nilradical.space
            assert subspace_equal(moved, nil.image(t)), e.name


def test_ac8_oracle_cross_checks():
    assert killing_form(_algebra("so3")) == Mat.identity(3).scale(Fraction(-2))
    e3 = _algebra("euclid3")
    assert subspace_equal(radical(e3).space, Subspace.coordinate(range(3), 6))
    assert derivations(_algebra("heisenberg3")).dim == 6
    for n in range(1, 6):
        assert derivations(abelian(n)).dim == n * n
    for e in catalog():
        if e.kind != "lie-algebra":
            continue
        g = e.payload.algebra
        rad = radical(g).space
        nil = nilradical(g).nilradical.space
        br = bracket_spaces(g, Subspace.full(g.dim), rad)
        assert br <= nil, e.name
        assert subspace_equal(subspace_intersect(br, nil), br)


def test_ac9_verify_all_determinism():
    c1, out1, _ = _cli("verify-all", "--json")
    c2, out2, _ = _cli("verify-all", "--json")
    assert c1 == c2 == 0
    assert digest_section(out1) == digest_section(out2)
    assert json.loads(out1)["digest"] == json.loads(out2)["digest"]
