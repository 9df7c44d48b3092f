"""Check runners shared by the CLI commands and ``verify-all``.

Each runner returns :class:`Check` records.  ``ok`` is False only when a
verdict contradicts what the theory guarantees (or a requested property fails);
precondition violations are raised as :class:`PreconditionError`.
"""

from __future__ import annotations

from ..exactla import Subspace, subspace_equal
from ..finitegrp import (
    FiniteMetricGroup,
    affine_decompose,
    automorphisms,
    check_tfae,
    isometries,
    left_translations,
    stabilizer,
    validate_group,
)
from ..invariants import (
    MetricTensor,
    check_nilradical_condition,
    derivations,
    isometry_algebra,
    killing_form,
    nilradical,
    radical,
    skew_derivations,
)
from ..liecore import (
    LieAlgebra,
    bracket_spaces,
    center,
    derived_series,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    validate,
)
from .report import Check


def lie_check(name: str, g: LieAlgebra) -> list[Check]:
    violations = validate(g)
    return [
        Check(
            "check",
            name,
            not violations,
            {
                "dim": g.dim,
                "basis": list(g.names),
                "jacobi_violations": [[v.i, v.j, v.k, list(v.residual)] for v in violations],
                "nilpotent": is_nilpotent(g),
                "solvable": is_solvable(g),
                "center": center(g),
            },
        )
    ]


def series_check(name: str, g: LieAlgebra) -> list[Check]:
    lcs = lower_central_series(g)
    ds = derived_series(g)
    return [
        Check(
            "series",
            name,
            True,
            {
                "lower_central_dims": [s.dim for s in lcs],
                "derived_dims": [s.dim for s in ds],
                "nilpotent": lcs[-1].dim == 0,
                "solvable": ds[-1].dim == 0,
            },
        )
    ]


def nilradical_check(name: str, g: LieAlgebra) -> list[Check]:
    rep = nilradical(g)
    rad = radical(g)
    nil = rep.nilradical.space
    full = Subspace.full(g.dim)
    contained = bracket_spaces(g, full, rad.space) <= nil
    nil_in_rad = nil <= rad.space
    ok = (
        contained
        and nil_in_rad
        and (rad.dim == g.dim) == is_solvable(g)
        and (nil.dim == g.dim) == is_nilpotent(g)
    )
    return [
        Check(
            "nilradical",
            name,
            ok,
            {
                "dim": g.dim,
                "radical": rad,
                "nilradical": rep.nilradical,
                "nilpotency_class": rep.nilpotency_class,
                "hull_dim": rep.hull_dim,
                "trace_radical_dim": rep.trace_radical_dim,
                "ideal_checks": len(rep.ideal_checks),
                "bracket_with_radical_in_nilradical": contained,
                "nilradical_in_radical": nil_in_rad,
                "killing_form": killing_form(g),
            },
        )
    ]


def derivations_check(name: str, g: LieAlgebra, q: MetricTensor | None = None, skew: bool = False) -> list[Check]:
    der = derivations(g)
    data = {"derivations_dim": der.dim, "derivations": [m for m in der.basis_maps]}
    ok = True
    if skew:
        q = q or MetricTensor.identity(g.dim)
        sk = skew_derivations(g, q)
        ok = sk.space <= der.space
        data.update(skew_dim=sk.dim, skew_derivations=sk.basis_maps, metric=q.q)
    return [Check("derivations", name, ok, data)]


def isometry_algebra_check(name: str, g: LieAlgebra, q: MetricTensor | None = None) -> list[Check]:
    iso = isometry_algebra(g, q)
    return [
        Check(
            "isometry-algebra",
            name,
            True,
            {
                "base_dim": g.dim,
                "skew_derivation_dim": iso.stab.dim,
                "total_dim": iso.total.dim,
                "total_basis": list(iso.total.names),
                "total_brackets": {
                    f"[{iso.total.names[i]},{iso.total.names[j]}]": {iso.total.names[k]: c for k, c in v.items()}
                    for (i, j), v in iso.total.sc.items()
                },
                "n_embed": iso.n_embed,
                "metric": iso.metric.q,
            },
        )
    ]


def nilrad_condition_check(name: str, g: LieAlgebra, q: MetricTensor | None = None) -> list[Check]:
    iso = isometry_algebra(g, q)
    verdict = check_nilradical_condition(iso)
    return [
        Check(
            "nilrad-condition",
            name,
            verdict.holds,
            {
                "holds": verdict.holds,
                "base_dim": g.dim,
                "skew_derivation_dim": iso.stab.dim,
                "total_dim": iso.total.dim,
                "nil_found": verdict.nil_found,
                "n_embed": iso.n_embed,
                "nil_equals_embedded_base": subspace_equal(verdict.nil_found.space, iso.n_embed.space),
            },
            "" if verdict.holds else "nilradical differs from the translation ideal",
        )
    ]


def finite_analyze_check(name: str, m: FiniteMetricGroup) -> list[Check]:
    violations = validate_group(m)
    if violations:
        return [Check("finite-analyze", name, False, {"violations": violations})]
    g = isometries(m)
    ml = left_translations(m)
    st = stabilizer(g)
    aut = automorphisms(m)
    affine = sum(1 for f in g if affine_decompose(f, m) is not None)
    ok = g.is_group() and all(t in g for t in ml) and len(g) == len(ml) * len(st)
    return [
        Check(
            "finite-analyze",
            name,
            ok,
            {
                "order": m.order,
                "isometries": len(g),
                "left_translations": len(ml),
                "automorphisms": len(aut),
                "stabilizer": len(st),
                "affine_isometries": affine,
                "orbit_stabilizer": len(g) == len(ml) * len(st),
            },
        )
    ]


def finite_tfae_check(name: str, m: FiniteMetricGroup) -> list[Check]:
    r = check_tfae(m)
    return [
        Check(
            "finite-tfae",
            name,
            r.equivalent,
            {
                "a": r.a,
                "b": r.b,
                "c": r.c,
                "d": r.d,
                "equivalent": r.equivalent,
                "isometries": r.isometry_order,
                "stabilizer": r.stabilizer_order,
                "affine_isometries": r.affine_count,
                "witnesses": r.witnesses,
            },
            "" if r.equivalent else "the four conditions disagree",
        )
    ]
