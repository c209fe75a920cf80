import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from cylproj import (
    AtomSet,
    DiscreteSet,
    FiberProfile,
    FinDimSet,
    continuity_check,
    convergence_table,
    cylindrify,
    infinite_union_measure_discrete,
    lebesgue_measure,
    lemma1_audit,
    strong_co_project,
    strong_project,
    theorem4_audit,
)
from cylproj.projection import FAILS, HOLDS, NOT_MET, AuditReport
from generators import BASE, CHECKER, D1, E1, POINT_BAR, STAIR, Y, Z, iv, rand_base, rand_dset, rand_fds, seeds


def test_strong_project_examples():
    assert strong_project(E1, Y).is_empty
    assert strong_project(CHECKER, Y).is_unit
    assert strong_project(D1, Y, BASE) == cylindrify(D1, Y)


def test_strong_co_project_examples():
    assert strong_co_project(FinDimSet.unit(), Y).is_unit
    assert strong_co_project(STAIR, Y) == FinDimSet([{Z: iv(0, "1/4")}])
    assert strong_co_project(E1, Y).is_empty


def test_convergence_examples():
    r = convergence_table(E1, Y, 3)
    assert r.rows == ((1, 0, 0), (2, 0, 0), (3, 0, 0))
    assert (r.sup_limit, r.inf_limit) == (0, 0)
    assert r.ordinary_projection_measure == 1 and r.continuity_holds is False
    r = convergence_table(CHECKER, Y, 3)
    assert [row[1] for row in r.rows] == [F(1, 2), F(3, 4), F(7, 8)]
    assert [row[2] for row in r.rows] == [F(1, 2), F(1, 4), F(1, 8)]
    assert (r.sup_limit, r.inf_limit, r.ordinary_projection_measure) == (1, 0, 1)
    assert r.continuity_holds is True
    r = convergence_table(FinDimSet.unit(), Y, 1)
    assert r.rows == ((1, 1, 1),) and r.continuity_holds
    with pytest.raises(ValueError):
        convergence_table(E1, Y, 0)


def test_convergence_on_raw_profile():
    r = convergence_table(FiberProfile.raw([(1, 0)]), None, 2)
    assert r.ordinary_projection_measure is None and r.continuity_holds is None
    assert (r.sup_limit, r.inf_limit) == (0, 0)


def test_continuity_examples():
    rep = continuity_check(E1, Y)
    assert rep.verdict == FAILS and rep.witness == E1
    assert continuity_check(CHECKER, Y).verdict == HOLDS
    assert continuity_check(D1, Y, BASE).verdict == HOLDS
    assert "sufficient condition met: measure_is_one" in continuity_check(
        FinDimSet.unit(), Y).notes


def test_lemma1_examples():
    rep = lemma1_audit(STAIR, Y)
    c = rep.conclusion_evaluations
    assert rep.verdict == HOLDS
    assert c["co_projection_measure"] == F(1, 4) == c["inf_limit"] and c["b_inf_limit"] == 0
    rep = lemma1_audit(E1, Y)
    c = rep.conclusion_evaluations
    assert rep.verdict == HOLDS and c["inf_property"] and c["co_projection_measure"] == 0
    assert lemma1_audit(FinDimSet.unit(), Y).verdict == NOT_MET


def test_theorem4_point_bar_evidence():
    rep = theorem4_audit(POINT_BAR, Y)
    h, c = rep.hypothesis_evaluations, rep.conclusion_evaluations
    assert h["hypothesis"] and h["majorant_measure"] == 0
    assert c["inf_property"] and c["co_projection_measure"] == 0 == c["inf_limit"]
    assert not c["sup_property"]
    assert c["projection_measure"] == F(1, 2) and c["sup_limit"] == 0
    assert rep.verdict == HOLDS


def test_theorem4_other_examples():
    a = FinDimSet([{Y: iv(0, "1/2"), Z: iv(0, "1/2")}])
    c = theorem4_audit(a, Y).conclusion_evaluations
    assert c["sup_property"] and c["inf_property"] and c["product_step_n2"]
    assert theorem4_audit(FinDimSet.unit(), Y).verdict == NOT_MET


def test_infinite_union_examples():
    assert infinite_union_measure_discrete(D1, Y, BASE) == 1
    assert infinite_union_measure_discrete(DiscreteSet.empty(), Y, BASE) == 0
    a = DiscreteSet([{Y: AtomSet.finite([0]), Z: AtomSet.finite([0])}])
    assert infinite_union_measure_discrete(a, Y, BASE) == F(1, 2)


def test_audit_report_requires_witness_on_failure():
    with pytest.raises(ValueError):
        AuditReport("x", {}, {}, FAILS)
    with pytest.raises(ValueError):
        AuditReport("x", {}, {}, "maybe")


@given(seeds)
def test_strong_projection_properties(seed):
    rng = random.Random(seed)
    a = rand_fds(rng)
    y = rng.randrange(3)
    sp, sd = strong_project(a, y), strong_co_project(a, y)
    assert sp <= cylindrify(a, y)
    assert sd <= sp or a.is_empty or sd.is_empty
    assert sp == ~strong_co_project(~a, y)
    r = convergence_table(a, y, 2)
    assert lebesgue_measure(sp) == r.sup_limit and lebesgue_measure(sd) == r.inf_limit
    # outputs are ordinary sets again
    assert y not in sp.dim_set() and (sp | sd) == sp


@given(seeds)
def test_nondegenerate_strong_equals_ordinary(seed):
    a = rand_fds(random.Random(seed), degenerate=False)
    assert strong_project(a, Y) == cylindrify(a, Y)


@given(seeds)
def test_discrete_strong_equals_ordinary(seed):
    rng = random.Random(seed)
    base = rand_base(rng)
    a = rand_dset(rng, base, 3)
    assert strong_project(a, Y, base) == cylindrify(base.restrict(a), Y)
    assert continuity_check(a, Y, base).verdict == HOLDS
