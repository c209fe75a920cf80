"""Sets over a countable atom base with a discrete probability measure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import UnknownAtom
from .partition import AtomPartition
from .sets import CylSet, DimVar


class AtomSet(AtomPartition):
    """Finite or cofinite set of atoms.

    Atoms are nonnegative indices. A cofinite set contains every atom not
    listed, in particular all unnamed atoms of any base.
    """

    __slots__ = ()

    def __init__(self, entries, rest):
        super().__init__([(a, bool(v)) for a, v in dict(entries).items()], bool(rest))

    @classmethod
    def _raw(cls, entries, rest):
        return cls(entries, rest)

    @classmethod
    def _from(cls, part: AtomPartition) -> "AtomSet":
        return cls(part.entries, part.rest)

    @classmethod
    def finite(cls, members: Iterable[int]) -> "AtomSet":
        return cls([(int(a), True) for a in members], False)

    @classmethod
    def cofinite(cls, excluded: Iterable[int]) -> "AtomSet":
        return cls([(int(a), False) for a in excluded], True)

    @classmethod
    def full(cls) -> "AtomSet":
        return cls((), True)

    @classmethod
    def empty(cls) -> "AtomSet":
        return cls((), False)

    @property
    def kind(self) -> str:
        return "cofinite" if self.rest else "finite"

    @property
    def members(self) -> frozenset[int]:
        """Listed atoms: the members of a finite set, the exclusions of a cofinite one."""
        return frozenset(self.atoms)

    def union(self, other: "AtomSet") -> "AtomSet":
        return self._from(self.combine([other], lambda a, b: a or b))

    def intersect(self, other: "AtomSet") -> "AtomSet":
        return self._from(self.combine([other], lambda a, b: a and b))

    def complement(self) -> "AtomSet":
        return self._from(self.map(lambda a: not a))

    def difference(self, other: "AtomSet") -> "AtomSet":
        return self._from(self.combine([other], lambda a, b: a and not b))

    __or__ = union
    __and__ = intersect
    __invert__ = complement
    __sub__ = difference

    def __contains__(self, atom: int) -> bool:
        return bool(self.at(atom))

    @property
    def is_empty(self) -> bool:
        return not self.rest and not self.entries

    @property
    def is_full(self) -> bool:
        return self.rest and not self.entries

    def to_text(self) -> str:
        body = "{" + ",".join(str(a) for a in self.atoms) + "}"
        return "co" + body if self.rest else body

    def __repr__(self):
        return f"AtomSet({self.to_text()})"


@dataclass(frozen=True)
class DiscreteBase:
    """Probabilities of the named atoms ``0..N-1`` plus the mass of all others."""

    named_probs: tuple[Fraction, ...]
    tail_mass: Fraction = Fraction(0)

    def __post_init__(self):
        probs = tuple(Fraction(p) for p in self.named_probs)
        tail = Fraction(self.tail_mass)
        if any(p <= 0 for p in probs):
            raise ValueError("named atom probabilities must be positive")
        if tail < 0:
            raise ValueError("tail mass must be nonnegative")
        if sum(probs, Fraction(0)) + tail != 1:
            raise ValueError(f"probabilities sum to {sum(probs) + tail}, not 1")
        object.__setattr__(self, "named_probs", probs)
        object.__setattr__(self, "tail_mass", tail)

    @property
    def size(self) -> int:
        return len(self.named_probs)

    def prob(self, atom: int) -> Fraction:
        if not 0 <= atom < self.size:
            raise UnknownAtom(f"atom {atom} is not named by the base (N={self.size})")
        return self.named_probs[atom]

    def mass(self, s: AtomSet) -> Fraction:
        listed = sum((self.prob(a) for a in s.atoms), Fraction(0))
        return 1 - listed if s.rest else listed

    def check(self, d: "DiscreteSet") -> None:
        for node in _nodes(d.diagram):
            for a in node.part.atoms:
                self.prob(a)

    def restrict(self, d: "DiscreteSet") -> "DiscreteSet":
        """The same set on ``T^alpha``, with every free dimension confined to named atoms
        when the base has no tail (so syntactic emptiness matches emptiness in T)."""
        self.check(d)
        if self.tail_mass > 0:
            return d
        named = AtomSet.finite(range(self.size))
        box = DiscreteSet.product({dim: named for dim in d.dim_set()})
        return d & box

    def same(self, a: "DiscreteSet", b: "DiscreteSet") -> bool:
        """Equality as subsets of ``T^alpha``: without a tail, points that use an
        unnamed atom do not exist and are ignored."""
        return self.restrict((a - b) | (b - a)).is_empty


def _nodes(u):
    seen = set()
    stack = [u]
    while stack:
        w = stack.pop()
        if isinstance(w, bool) or id(w) in seen:
            continue
        seen.add(id(w))
        yield w
        stack.extend(w.part.labels())


class DiscreteSet(CylSet):
    __slots__ = ()
    component_cls = AtomSet


def dset_combine(op: str, a: DiscreteSet, b: DiscreteSet | None = None) -> DiscreteSet:
    from .sets import fds_combine

    return fds_combine(op, a, b)


def dset_substitute(a: DiscreteSet, frm: DimVar, to: DimVar) -> DiscreteSet:
    return a.substitute(frm, to)


def dset_cylindrify(a: DiscreteSet, dim: DimVar) -> DiscreteSet:
    return a.cylindrify(dim)


def dset_co_cylindrify(a: DiscreteSet, dim: DimVar) -> DiscreteSet:
    return a.co_cylindrify(dim)

