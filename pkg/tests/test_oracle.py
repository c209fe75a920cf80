import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from cylproj import BoundExceeded, DiscreteSet, FinDimSet, UnknownAtom, AtomSet, lebesgue_measure
from cylproj.oracle import grid_measure, materialize_n_fold, truncation_measure_discrete
from generators import BASE, CHECKER, D1, E1, Y, Z, rand_fds, seeds


def test_materialize_examples():
    one = materialize_n_fold(CHECKER, Y, 1, "union")
    assert lebesgue_measure(one) == lebesgue_measure(CHECKER)
    assert Y not in one.dim_set()
    two = materialize_n_fold(CHECKER, Y, 2, "intersection")
    assert len(two.dim_set()) == 3 and lebesgue_measure(two) == grid_measure(two) == F(1, 4)
    assert grid_measure(materialize_n_fold(E1, Y, 3, "union")) == 0


def test_materialize_guards():
    with pytest.raises(BoundExceeded):
        materialize_n_fold(CHECKER, Y, 6, "union")
    with pytest.raises(ValueError):
        materialize_n_fold(CHECKER, Y, 2, "sum")
    with pytest.raises(ValueError):
        materialize_n_fold(CHECKER, Y, 0, "union")


def test_grid_examples():
    assert grid_measure(FinDimSet.unit()) == 1
    assert grid_measure(FinDimSet.empty()) == 0
    assert grid_measure(E1) == 0


def test_cell_cap(monkeypatch):
    monkeypatch.setenv("CYLPROJ_MAX_CELLS", "3")
    with pytest.raises(BoundExceeded):
        grid_measure(CHECKER)


def test_truncation_examples():
    assert truncation_measure_discrete(D1, BASE, Y, 2, "intersection") == F(1, 4)
    assert truncation_measure_discrete(DiscreteSet.empty(), BASE) == 0
    for n in (1, 2, 3):
        assert truncation_measure_discrete(DiscreteSet.unit(), BASE, Y, n, "union") == 1
    with pytest.raises(UnknownAtom):
        truncation_measure_discrete(DiscreteSet([{Z: AtomSet.finite([3])}]), BASE)


@given(seeds)
def test_grid_matches_lebesgue(seed):
    rng = random.Random(seed)
    a = rand_fds(rng, n_dims=4, max_terms=6)
    assert grid_measure(a) == lebesgue_measure(a)
    assert grid_measure(~a).exact == 1 - lebesgue_measure(a).exact
