"""Line-oriented model files describing sets, bases and raw fiber profiles.

::

    # comments start with '#'
    base b probs=[1/2, 1/4] tail=1/4
    set cb = rect{ y:[0,1/2), z:[0,1/2) } | rect{ y:[1/2,1), z:[1/2,1) }
    set e1 = rect{ y:{2/3}, z:[1/2,1) } | rect{ y:{1/3}, z:[0,1/2) }
    set c  = !cb & (e1 | unit)
    dset d = prod(y:{0}, z:{0}) | prod(y:co{0}, z:co{0})
    profile diag = cells[(vol=1, q=0)]

Components are unions (``+``) of intervals ``[a,b)``, ``(a,b)``, ``[a,b]``,
``(a,b]`` and point sets ``{p, ...}``. Discrete components are ``{i, ...}``
or ``co{i, ...}``. Dimension names are mapped to indices in order of first
appearance; ``_<n>`` names the dimension with index ``n`` directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .discrete import AtomSet, DiscreteBase, DiscreteSet
from .measure import FiberProfile
from .oned import OneDimSet
from .sets import CylSet, FinDimSet, ProductTerm


class ModelError(Exception):
    kind = "ModelError"

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self):
        return f"{self.line}:{self.col}: {self.kind}: {self.message}"


class ModelSyntaxError(ModelError):
    kind = "SyntaxError"


class DuplicateName(ModelError):
    kind = "DuplicateName"


class UnknownName(ModelError):
    kind = "UnknownName"


class InvalidRational(ModelError):
    kind = "InvalidRational"


@dataclass
class ModelFile:
    sets: dict[str, FinDimSet] = field(default_factory=dict)
    dsets: dict[str, DiscreteSet] = field(default_factory=dict)
    bases: dict[str, DiscreteBase] = field(default_factory=dict)
    profiles: dict[str, FiberProfile] = field(default_factory=dict)
    dims: dict[str, int] = field(default_factory=dict)

    def names(self) -> set[str]:
        return set(self.sets) | set(self.dsets) | set(self.bases) | set(self.profiles)

    def dim_index(self, name: str) -> int:
        m = re.fullmatch(r"_(\d+)", name)
        if m:
            return int(m.group(1))
        if name not in self.dims:
            self.dims[name] = len(self.dims)
        return self.dims[name]

    def dim_name(self, index: int) -> str:
        for k, v in self.dims.items():
            if v == index:
                return k
        return f"_{index}"

    def lookup_dim(self, name: str) -> int:
        if name in self.dims or re.fullmatch(r"_(\d+)", name):
            return self.dim_index(name)
        raise UnknownName(f"unknown dimension {name!r}")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<empty>∅)
  | (?P<op>[|&!(){}\[\],:+=]|∪|∩|¬)
""", re.VERBOSE)

_ALIASES = {"∪": "|", "∩": "&", "¬": "!"}


class _Parser:
    def __init__(self, text: str, line: int, col0: int, model: ModelFile):
        self.toks = []
        self.line = line
        self.model = model
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ModelSyntaxError(f"unexpected character {text[pos]!r}", line, col0 + pos + 1)
            kind = m.lastgroup
            if kind != "ws":
                val = _ALIASES.get(m.group(), m.group())
                self.toks.append((kind, val, col0 + pos + 1))
            pos = m.end()
        self.i = 0
        self.end_col = col0 + len(text) + 1

    # token helpers

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", self.end_col)

    def col(self):
        return self.peek()[2]

    def take(self, value=None, kind=None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = "end of line" if tok[0] == "eof" else repr(tok[1])
            raise ModelSyntaxError(f"expected {want}, got {got}", self.line, tok[2])
        self.i += 1
        return tok

    def accept(self, value):
        if self.peek()[1] == value and self.peek()[0] in ("op", "ident"):
            self.i += 1
            return True
        return False

    def done(self):
        if self.peek()[0] != "eof":
            raise ModelSyntaxError(f"unexpected {self.peek()[1]!r}", self.line, self.col())

    def rational(self, lo=Fraction(0), hi=Fraction(1), hi_open=False) -> Fraction:
        kind, val, col = self.peek()
        if kind != "num":
            raise ModelSyntaxError(f"expected a rational, got {val or 'end of line'!r}",
                                   self.line, col)
        self.i += 1
        num, _, den = val.partition("/")
        if den and int(den) == 0:
            raise InvalidRational(f"zero denominator in {val}", self.line, col)
        r = Fraction(int(num), int(den) if den else 1)
        if r < lo or r > hi or (hi_open and r == hi):
            rng = f"[{lo}, {hi}{')' if hi_open else ']'}"
            raise InvalidRational(f"{val} is outside {rng}", self.line, col)
        return r

    # expressions

    def expr(self, atom):
        node = self.conj(atom)
        while self.accept("|"):
            node = node | self.conj(atom)
        return node

    def conj(self, atom):
        node = self.factor(atom)
        while self.accept("&"):
            node = node & self.factor(atom)
        return node

    def factor(self, atom):
        if self.accept("!"):
            return ~self.factor(atom)
        if self.accept("("):
            node = self.expr(atom)
            self.take(")")
            return node
        return atom()

    def _named(self, cls, table, what):
        kind, val, col = self.peek()
        if kind == "empty":
            self.i += 1
            return cls.empty()
        if kind != "ident":
            raise ModelSyntaxError(f"expected a {what}, got {val or 'end of line'!r}",
                                   self.line, col)
        self.i += 1
        if val == "unit":
            return cls.unit()
        if val == "empty":
            return cls.empty()
        if val in table:
            return table[val]
        if val in self.model.names():
            raise UnknownName(f"{val!r} is not a {what}", self.line, col)
        raise UnknownName(f"{val!r} is not defined", self.line, col)

    def set_atom(self):
        if self.peek()[1] == "rect":
            self.take("rect")
            return FinDimSet([self._components("{", "}", self.interval_component)])
        return self._named(FinDimSet, self.model.sets, "set")

    def dset_atom(self):
        if self.peek()[1] == "prod":
            self.take("prod")
            return DiscreteSet([self._components("(", ")", self.atom_component)])
        return self._named(DiscreteSet, self.model.dsets, "dset")

    def _components(self, open_, close, component):
        self.take(open_)
        comps = {}
        while not self.accept(close):
            if comps:
                self.take(",")
            _, name, col = self.take(kind="ident")
            self.take(":")
            dim = self.model.dim_index(name)
            if dim in comps:
                raise DuplicateName(f"dimension {name!r} given twice", self.line, col)
            comps[dim] = component()
        return ProductTerm(comps)

    def interval_component(self) -> OneDimSet:
        acc = self.interval_piece()
        while self.accept("+"):
            acc = acc | self.interval_piece()
        return acc

    def interval_piece(self) -> OneDimSet:
        col = self.col()
        if self.accept("{"):
            pts = []
            while not self.accept("}"):
                if pts:
                    self.take(",")
                pts.append(self.rational(hi_open=True))
            return OneDimSet.points(pts)
        if self.accept("["):
            closed_left = True
        elif self.accept("("):
            closed_left = False
        else:
            raise ModelSyntaxError("expected an interval or a point set", self.line, col)
        lo = self.rational()
        self.take(",")
        hi = self.rational()
        if self.accept("]"):
            closed_right = True
        else:
            self.take(")")
            closed_right = False
        if not lo < hi:
            raise InvalidRational(f"empty interval: lower end {lo} is not below {hi}",
                                  self.line, col)
        if closed_right and hi == 1:
            raise InvalidRational("1 is not a point of [0, 1)", self.line, col)
        return OneDimSet.interval(lo, hi, closed_left, closed_right)

    def atom_component(self) -> AtomSet:
        acc = self.atom_piece()
        while self.accept("+"):
            acc = acc | self.atom_piece()
        return acc

    def atom_piece(self) -> AtomSet:
        co = self.accept("co")
        self.take("{")
        atoms = []
        while not self.accept("}"):
            if atoms:
                self.take(",")
            _, val, col = self.take(kind="num")
            if "/" in val:
                raise InvalidRational(f"atom index must be an integer, got {val}", self.line, col)
            atoms.append(int(val))
        return AtomSet.cofinite(atoms) if co else AtomSet.finite(atoms)

    def base(self) -> DiscreteBase:
        probs, tail = [], Fraction(0)
        seen = set()
        while self.peek()[0] != "eof":
            _, key, col = self.take(kind="ident")
            if key in seen:
                raise DuplicateName(f"{key!r} given twice", self.line, col)
            seen.add(key)
            self.take("=")
            if key == "probs":
                self.take("[")
                while not self.accept("]"):
                    if probs:
                        self.take(",")
                    c = self.col()
                    p = self.rational()
                    if p == 0:
                        raise InvalidRational("atom probabilities must be positive", self.line, c)
                    probs.append(p)
            elif key == "tail":
                tail = self.rational()
            else:
                raise ModelSyntaxError(f"unknown base field {key!r}", self.line, col)
        if sum(probs, Fraction(0)) + tail != 1:
            raise InvalidRational(f"probabilities sum to {sum(probs, Fraction(0)) + tail}, not 1",
                                  self.line, self.end_col)
        return DiscreteBase(tuple(probs), tail)

    def profile(self) -> FiberProfile:
        self.take("cells")
        self.take("[")
        cells = []
        while not self.accept("]"):
            if cells:
                self.take(",")
            self.take("(")
            vals = {}
            while not self.accept(")"):
                if vals:
                    self.take(",")
                _, key, col = self.take(kind="ident")
                if key not in ("vol", "q") or key in vals:
                    raise ModelSyntaxError(f"expected vol= or q=, got {key!r}", self.line, col)
                self.take("=")
                vals[key] = self.rational()
            if set(vals) != {"vol", "q"}:
                raise ModelSyntaxError("each cell needs vol= and q=", self.line, self.col())
            cells.append((vals["vol"], vals["q"]))
        if sum((v for v, _ in cells), Fraction(0)) != 1:
            raise InvalidRational("cell volumes must sum to 1", self.line, self.end_col)
        return FiberProfile.raw(cells)


_HEADER = re.compile(r"\s*(base|set|dset|profile)\s+([A-Za-z_][A-Za-z0-9_]*)\s*")


def parse_model(text: str) -> ModelFile:
    model = ModelFile()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise ModelSyntaxError("expected 'base', 'set', 'dset' or 'profile'", lineno, col)
        keyword, name = m.group(1), m.group(2)
        if name in model.names():
            raise DuplicateName(f"{name!r} is already defined", lineno, m.start(2) + 1)
        if name in ("unit", "empty", "rect", "prod", "co", "cells"):
            raise ModelSyntaxError(f"{name!r} is reserved", lineno, m.start(2) + 1)
        rest = line[m.end():]
        col0 = m.end()
        if keyword == "base":
            p = _Parser(rest, lineno, col0, model)
            model.bases[name] = p.base()
            p.done()
            continue
        if not rest.startswith("="):
            raise ModelSyntaxError("expected '='", lineno, col0 + 1)
        p = _Parser(rest[1:], lineno, col0 + 1, model)
        if keyword == "set":
            model.sets[name] = p.expr(p.set_atom)
        elif keyword == "dset":
            model.dsets[name] = p.expr(p.dset_atom)
        else:
            model.profiles[name] = p.profile()
        p.done()
    return model


def format_set(s: CylSet, model: ModelFile | None = None) -> str:
    """Model-file text for a set; parsing it back yields an equal set."""
    if s.is_empty:
        return "∅"
    if s.is_unit:
        return "unit"
    name = model.dim_name if model is not None else (lambda i: f"_{i}")
    out = []
    for t in s.canonical().terms:
        body = ", ".join(f"{name(d)}:{c.to_text()}" for d, c in t.components.items())
        out.append(f"prod({body})" if isinstance(s, DiscreteSet) else f"rect{{ {body} }}")
    return " | ".join(out)
