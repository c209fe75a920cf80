"""Strong projections, convergence tables and theorem audits."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .discrete import DiscreteBase, DiscreteSet
from .errors import CylprojError
from .measure import (
    FiberProfile,
    MeasureValue,
    fiber_profile,
    gap_bound_at,
    measure_of,
    n_fold_intersection_measure,
    n_fold_union_measure,
    printed_intersection_reading,
    profile_limits,
)
from .sets import CylSet, DimVar, ProductTerm

HOLDS = "holds"
FAILS = "fails"
NOT_MET = "hypothesis-not-met"


class ContinuityViolation(CylprojError, AssertionError):
    """An identity that must hold exactly was found to fail."""


def _prepare(a: CylSet, base: DiscreteBase | None) -> CylSet:
    if isinstance(a, DiscreteSet):
        if base is None:
            raise TypeError("discrete sets need a base")
        return base.restrict(a)
    return a


def _cells_where(a: CylSet, y: DimVar, base, keep) -> CylSet:
    p = fiber_profile(a, y, base)
    return type(a)([ProductTerm(c.components) for c in p.cells if keep(c.q)])


def strong_project(a: CylSet, y: DimVar, base: DiscreteBase | None = None) -> CylSet:
    """Points whose y-fiber has positive measure."""
    return _cells_where(a, y, base, lambda q: q > 0)


def strong_co_project(a: CylSet, y: DimVar, base: DiscreteBase | None = None) -> CylSet:
    """Points whose y-fiber has full measure."""
    return _cells_where(a, y, base, lambda q: q == 1)


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[tuple[int, Fraction, Fraction], ...]
    sup_limit: Fraction
    inf_limit: Fraction
    ordinary_projection_measure: Fraction | None
    ordinary_co_projection_measure: Fraction | None
    continuity_holds: bool | None
    profile: FiberProfile = field(repr=False)
    printed_rows: tuple[Fraction, ...] | None = None

    def gap_bound_at(self, n: int) -> Fraction:
        return gap_bound_at(self.profile, n)


def convergence_table(a: CylSet | FiberProfile, y: DimVar | None, n_max: int,
                      base: DiscreteBase | None = None) -> ConvergenceReport:
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError("n_max must be a positive integer")
    if isinstance(a, FiberProfile):
        prof = a
        ordinary = co_ordinary = None
    else:
        a = _prepare(a, base)
        prof = fiber_profile(a, y, base)
        ordinary = measure_of(a.cylindrify(y), base).exact
        co_ordinary = measure_of(a.co_cylindrify(y), base).exact
    rows = tuple((n, n_fold_union_measure(prof, n).exact,
                  n_fold_intersection_measure(prof, n).exact) for n in range(1, n_max + 1))
    sup, inf = profile_limits(prof)
    printed = None
    if printed_intersection_reading(prof, 1) is not None:
        printed = tuple(printed_intersection_reading(prof, n).exact for n in range(1, n_max + 1))
    return ConvergenceReport(
        rows=rows,
        sup_limit=sup.exact,
        inf_limit=inf.exact,
        ordinary_projection_measure=ordinary,
        ordinary_co_projection_measure=co_ordinary,
        continuity_holds=None if ordinary is None else ordinary == sup.exact,
        profile=prof,
        printed_rows=printed,
    )


@dataclass(frozen=True)
class AuditReport:
    name: str
    hypothesis_evaluations: dict[str, Any]
    conclusion_evaluations: dict[str, Any]
    verdict: str
    witness: CylSet | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict not in (HOLDS, FAILS, NOT_MET):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == FAILS and self.witness is None:
            raise ValueError("a failing audit needs a witness")


def continuity_check(a: CylSet, y: DimVar, base: DiscreteBase | None = None) -> AuditReport:
    """Does the cylindric-sum continuity ``mu(C_y a) = sup_n mu(stage n)`` hold?"""
    a = _prepare(a, base)
    ordinary = measure_of(a.cylindrify(y), base).exact
    total = measure_of(a, base).exact
    sup, _ = profile_limits(fiber_profile(a, y, base))
    holds = ordinary == sup.exact
    shortcuts = {"measure_is_one": total == 1, "projection_measure_is_zero": ordinary == 0}
    notes = tuple(f"sufficient condition met: {k}" for k, v in shortcuts.items() if v)
    return AuditReport(
        name="continuity",
        hypothesis_evaluations={"measure": total, **shortcuts},
        conclusion_evaluations={"projection_measure": ordinary, "sup_limit": sup.exact,
                                "strong_projection_measure":
                                    measure_of(strong_project(a, y, base), base).exact},
        verdict=HOLDS if holds else FAILS,
        witness=None if holds else a,
        notes=notes,
    )


def lemma1_audit(a: CylSet, y: DimVar, base: DiscreteBase | None = None) -> AuditReport:
    """Check that the infimum identity for ``a`` holds iff ``b = a - C^d_y a`` has
    vanishing intersection stages."""
    a = _prepare(a, base)
    co = a.co_cylindrify(y)
    b = a & ~co
    lhs = measure_of(co, base).exact
    _, inf_a = profile_limits(fiber_profile(a, y, base))
    _, inf_b = profile_limits(fiber_profile(b, y, base))
    eq5 = lhs == inf_a.exact
    cond6 = inf_b.exact == 0
    free = y in a.dim_set()
    if not free:
        verdict = NOT_MET
    else:
        verdict = HOLDS if eq5 == cond6 else FAILS
    return AuditReport(
        name="lemma1",
        hypothesis_evaluations={"y_free": free, "b_co_cylinder_empty": b.co_cylindrify(y).is_empty},
        conclusion_evaluations={"co_projection_measure": lhs, "inf_limit": inf_a.exact,
                                "inf_property": eq5, "b_inf_limit": inf_b.exact,
                                "b_condition": cond6},
        verdict=verdict,
        witness=a if verdict == FAILS else None,
    )


def theorem4_audit(a: CylSet, y: DimVar, base: DiscreteBase | None = None) -> AuditReport:
    """Evidence for the majorant-rectangle sufficient condition.

    Hypothesis: the set with every other free dimension cylindrified away has
    measure < 1. Both the supremum identity and the infimum identity are
    evaluated and reported separately; the verdict follows the infimum one,
    which is what the hypothesis forces.
    """
    a = _prepare(a, base)
    others = sorted(a.dim_set() - {y})
    majorant = a
    co_majorant = ~a
    for z in others:
        majorant = majorant.cylindrify(z)
        co_majorant = co_majorant.cylindrify(z)
    m_major = measure_of(majorant, base).exact
    m_co_major = measure_of(co_majorant, base).exact
    prof = fiber_profile(a, y, base)
    sup, inf = profile_limits(prof)
    proj = measure_of(a.cylindrify(y), base).exact
    co_proj = measure_of(a.co_cylindrify(y), base).exact
    sup_prop = proj == sup.exact
    inf_prop = co_proj == inf.exact
    # product step: two renamed majorants live on disjoint dimensions
    fresh = max(a.dim_set() | {y}) + 1
    m1 = majorant.substitute(y, fresh)
    m2 = majorant.substitute(y, fresh + 1)
    product_step = measure_of(m1 & m2, base).exact == m_major ** 2
    hyp = m_major < 1
    if not hyp:
        verdict = NOT_MET
    else:
        verdict = HOLDS if inf_prop else FAILS
    return AuditReport(
        name="theorem4",
        hypothesis_evaluations={"majorant_measure": m_major, "hypothesis": hyp,
                                "complement_majorant_measure": m_co_major,
                                "complement_hypothesis": m_co_major < 1},
        conclusion_evaluations={
            "projection_measure": proj, "sup_limit": sup.exact, "sup_property": sup_prop,
            "co_projection_measure": co_proj, "inf_limit": inf.exact, "inf_property": inf_prop,
            "complement_hypothesis_implies_sup_property": (not m_co_major < 1) or sup_prop,
            "product_step_n2": product_step,
        },
        verdict=verdict,
        witness=a if verdict == FAILS else None,
    )


def infinite_union_measure_discrete(a: DiscreteSet, y: DimVar,
                                    base: DiscreteBase) -> MeasureValue:
    """Measure of the countable union of renamed copies (limit of the union stages);
    checked against the measure of the ordinary projection."""
    a = base.restrict(a)
    sup, _ = profile_limits(fiber_profile(a, y, base))
    proj = measure_of(a.cylindrify(y), base)
    if proj != sup:
        raise ContinuityViolation(f"union limit {sup.exact} differs from projection {proj.exact}")
    return sup
