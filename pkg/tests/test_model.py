import random

import pytest
from hypothesis import given

from cylproj.model import (
    DuplicateName,
    InvalidRational,
    ModelSyntaxError,
    UnknownName,
    format_set,
    parse_model,
)
from cylproj import FinDimSet
from generators import BASE, CHECKER, D1, E1, Z, iv, pt, rand_base, rand_dset, rand_fds, seeds

DEMO = """\
# demo model
base b probs=[1/2, 1/4] tail=1/4
set checkerboard = rect{ y:[0,1/2), z:[0,1/2) } | rect{ y:[1/2,1), z:[1/2,1) }
set e1 = rect{ y:{2/3}, z:[1/2,1) } | rect{ y:{1/3}, z:[0,1/2) }
set mix = !(e1 ∪ checkerboard) & rect{ z:[0,1/4) + {3/4} }
dset d1 = prod(y:{0}, z:{0}) | prod(y:co{0}, z:co{0})
profile diag = cells[(vol=1, q=0)]
"""


def test_parse_demo():
    m = parse_model(DEMO)
    assert m.sets["checkerboard"] == CHECKER
    assert m.sets["e1"] == E1
    assert m.dsets["d1"] == D1
    assert m.bases["b"] == BASE
    assert m.dims == {"y": 0, "z": 1}
    assert [(c.volume, c.q) for c in m.profiles["diag"].cells] == [(1, 0)]
    band = FinDimSet([{Z: iv(0, "1/4") | pt("3/4")}])
    assert m.sets["mix"] == ~(E1 | CHECKER) & band


@pytest.mark.parametrize("text, exc, where", [
    ("set bad = rect{ y:[1/2,1/2) }", InvalidRational, (1, 19)),
    ("set a = unit\nset a = empty", DuplicateName, (2, 5)),
    ("set b = c | unit", UnknownName, (1, 9)),
    ("set b = rect{ y:[0,1/2 }", ModelSyntaxError, (1, 24)),
    ("base b probs=[1/2] tail=1/4", InvalidRational, None),
    ("set x = rect{ y:[0,3/2) }", InvalidRational, None),
    ("frobnicate", ModelSyntaxError, (1, 1)),
])
def test_diagnostics(text, exc, where):
    with pytest.raises(exc) as info:
        parse_model(text)
    if where is not None:
        assert (info.value.line, info.value.col) == where
        assert str(info.value).startswith(f"{where[0]}:{where[1]}: ")


def test_format_examples():
    m = parse_model(DEMO)
    assert format_set(m.sets["e1"].cylindrify(0).complement(), m) == "∅"
    assert format_set(m.sets["e1"].cylindrify(0), m) == "unit"
    assert format_set(m.sets["e1"], m) == "rect{ y:{1/3}, z:[0,1/2) } | rect{ y:{2/3}, z:[1/2,1) }"


@given(seeds)
def test_format_round_trips(seed):
    rng = random.Random(seed)
    a = rand_fds(rng)
    base = rand_base(rng)
    d = rand_dset(rng, base)
    text = f"set a = {format_set(a)}\ndset d = {format_set(d)}\n"
    m = parse_model(text)
    assert m.sets["a"] == a
    assert m.dsets["d"] == d
