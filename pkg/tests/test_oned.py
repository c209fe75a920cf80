import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from cylproj import Interval, OneDimSet, oned_combine, oned_length
from cylproj.oned import as_fraction
from generators import rand_oned, seeds

GRID = [F(k, 16) for k in range(16)]
MIDS = [F(2 * k + 1, 16) for k in range(8)]


def brute_length(s):
    # breakpoints are multiples of 1/8, so membership is constant on each open eighth
    return sum((F(1, 8) for m in MIDS if m in s), F(0))


def test_complement_of_unit_is_empty():
    assert oned_combine("complement", OneDimSet.full()) == OneDimSet.empty()


def test_point_absorbed_by_interval():
    u = oned_combine("union", OneDimSet.points([F(2, 3)]), OneDimSet.interval(F(1, 2), 1))
    assert u == OneDimSet.interval(F(1, 2), 1)


def test_intersect_intervals():
    got = oned_combine("intersect", OneDimSet.interval(0, F(1, 2)),
                       OneDimSet.interval(F(1, 4), F(3, 4)))
    assert got == OneDimSet.interval(F(1, 4), F(1, 2))


@pytest.mark.parametrize("s, expected", [
    (OneDimSet.full(), 1),
    (OneDimSet.points([F(1, 3)]), 0),
    (OneDimSet.interval(0, F(1, 2)) | OneDimSet.points([F(2, 3)]), F(1, 2)),
])
def test_length_examples(s, expected):
    assert oned_length(s) == expected


def test_to_text():
    s = OneDimSet.interval(0, F(1, 2)) | OneDimSet.points([F(2, 3)])
    assert s.to_text() == "[0,1/2) + {2/3}"
    assert OneDimSet.empty().to_text() == "{}"
    assert OneDimSet.interval(F(1, 4), F(1, 2), closed_left=False, closed_right=True).to_text() \
        == "(1/4,1/2]"


def test_interval_validation_and_fraction_guard():
    with pytest.raises(ValueError):
        Interval(F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        OneDimSet.interval(F(1, 2), F(1, 4))
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("3/4") == F(3, 4)


def test_adjacent_pieces_merge_canonically():
    a = OneDimSet.interval(0, F(1, 4)) | OneDimSet.interval(F(1, 4), F(1, 2))
    assert a == OneDimSet.interval(0, F(1, 2))
    punctured = OneDimSet.interval(0, F(1, 2)) - OneDimSet.points([F(1, 4)])
    assert F(1, 4) not in punctured and punctured.length == F(1, 2)
    assert punctured | OneDimSet.points([F(1, 4)]) == OneDimSet.interval(0, F(1, 2))


@given(seeds)
def test_pointwise_boolean_ops(seed):
    rng = random.Random(seed)
    a, b = rand_oned(rng), rand_oned(rng)
    for x in GRID:
        assert (x in a | b) == (x in a or x in b)
        assert (x in a & b) == (x in a and x in b)
        assert (x in ~a) == (x not in a)
        assert (x in a - b) == (x in a and x not in b)


@given(seeds)
def test_length_matches_grid_count(seed):
    rng = random.Random(seed)
    a, b = rand_oned(rng), rand_oned(rng)
    assert a.length == brute_length(a)
    assert (a | b).length + (a & b).length == a.length + b.length
    assert a.length + (~a).length == 1


@given(seeds)
def test_canonical_equality_is_extensional(seed):
    rng = random.Random(seed)
    a, b = rand_oned(rng), rand_oned(rng)
    same = all((x in a) == (x in b) for x in GRID)
    assert (a == b) == same
    assert (a | b) == (b | a)
    assert ~~a == a
    assert (a & b).issubset(a)
