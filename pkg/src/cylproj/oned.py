"""Exact subsets of [0, 1) with rational breakpoints."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .partition import ONE, ZERO, IntervalPartition


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class Interval:
    """The half-open interval ``[lo, hi)``; ``lo < hi`` is required."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_fraction(self.lo), as_fraction(self.hi)
        if not (0 <= lo < hi <= 1):
            raise ValueError(f"need 0 <= lo < hi <= 1, got [{lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def to_set(self) -> "OneDimSet":
        return OneDimSet.interval(self.lo, self.hi)


class OneDimSet(IntervalPartition):
    """A subset of ``[0, 1)`` stored as a flagged partition.

    ``breakpoints`` run from 0 to 1, ``open_flags[i]`` tells whether the open
    interval ``(b_i, b_{i+1})`` belongs to the set and ``point_flags[i]``
    whether ``b_i`` does.
    """

    __slots__ = ()

    def __init__(self, breakpoints, open_flags, point_flags):
        super().__init__(breakpoints, [bool(f) for f in open_flags],
                         [bool(f) for f in point_flags])

    @classmethod
    def _raw(cls, breakpoints, open_flags, point_flags):
        return cls(breakpoints, open_flags, point_flags)

    @classmethod
    def _from(cls, part: IntervalPartition) -> "OneDimSet":
        return cls(part.breakpoints, part.open_labels, part.point_labels)

    @property
    def open_flags(self) -> tuple[bool, ...]:
        return self.open_labels

    @property
    def point_flags(self) -> tuple[bool, ...]:
        return self.point_labels

    # constructors

    @classmethod
    def full(cls) -> "OneDimSet":
        return cls((ZERO, ONE), (True,), (True,))

    @classmethod
    def empty(cls) -> "OneDimSet":
        return cls((ZERO, ONE), (False,), (False,))

    @classmethod
    def interval(cls, lo, hi, closed_left=True, closed_right=False) -> "OneDimSet":
        lo, hi = as_fraction(lo), as_fraction(hi)
        if not (0 <= lo < hi <= 1):
            raise ValueError(f"empty or out-of-range interval ({lo}, {hi})")
        if closed_right and hi == 1:
            raise ValueError("1 is not a point of [0, 1)")
        bps = sorted({ZERO, lo, hi, ONE})
        opens, points = [], []
        for b in bps[:-1]:
            opens.append(lo <= b < hi)
            points.append((lo < b < hi) or (b == lo and closed_left)
                          or (b == hi and closed_right))
        return cls(bps, opens, points)

    @classmethod
    def open_interval(cls, lo, hi) -> "OneDimSet":
        return cls.interval(lo, hi, closed_left=False)

    @classmethod
    def points(cls, pts: Iterable) -> "OneDimSet":
        pts = {as_fraction(p) for p in pts}
        for p in pts:
            if not 0 <= p < 1:
                raise ValueError(f"point {p} is outside [0, 1)")
        bps = sorted(pts | {ZERO, ONE})
        return cls(bps, [False] * (len(bps) - 1), [b in pts for b in bps[:-1]])

    # algebra

    def union(self, other: "OneDimSet") -> "OneDimSet":
        return self._from(self.combine([other], lambda a, b: a or b))

    def intersect(self, other: "OneDimSet") -> "OneDimSet":
        return self._from(self.combine([other], lambda a, b: a and b))

    def complement(self) -> "OneDimSet":
        return self._from(self.map(lambda a: not a))

    def difference(self, other: "OneDimSet") -> "OneDimSet":
        return self._from(self.combine([other], lambda a, b: a and not b))

    __or__ = union
    __and__ = intersect
    __invert__ = complement
    __sub__ = difference

    def __contains__(self, x) -> bool:
        return bool(self.at(as_fraction(x)))

    def issubset(self, other: "OneDimSet") -> bool:
        return self.difference(other).is_empty

    __le__ = issubset

    @property
    def is_empty(self) -> bool:
        return not any(self.open_flags) and not any(self.point_flags)

    @property
    def is_full(self) -> bool:
        return self.is_constant and self.open_flags[0]

    @property
    def length(self) -> Fraction:
        bps = self.breakpoints
        return sum((bps[i + 1] - bps[i] for i, f in enumerate(self.open_flags) if f), ZERO)

    def runs(self):
        """Maximal connected pieces as ``(lo, hi, closed_left, closed_right)``.

        Degenerate runs ``lo == hi`` are isolated points.
        """
        out = []
        cur = None
        for kind, lo, hi, flag in self.pieces():
            if flag:
                if cur is None:
                    cur = [lo, hi, kind == "point", kind == "point"]
                else:
                    cur[1] = hi
                    cur[3] = kind == "point"
            elif cur is not None:
                out.append(tuple(cur))
                cur = None
        if cur is not None:
            out.append(tuple(cur))
        return out

    def to_text(self) -> str:
        if self.is_empty:
            return "{}"
        parts, pts = [], []
        for lo, hi, cl, cr in self.runs():
            if lo == hi:
                pts.append(str(lo))
                continue
            if pts:
                parts.append("{" + ", ".join(pts) + "}")
                pts = []
            parts.append(f"{'[' if cl else '('}{lo},{hi}{']' if cr else ')'}")
        if pts:
            parts.append("{" + ", ".join(pts) + "}")
        return " + ".join(parts)

    def __repr__(self):
        return f"OneDimSet({self.to_text()})"


def oned_combine(op: str, a: OneDimSet, b: OneDimSet | None = None) -> OneDimSet:
    if op == "complement":
        if b is not None:
            raise TypeError("complement takes a single argument")
        return a.complement()
    if b is None:
        raise TypeError(f"{op} needs two arguments")
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersect(b)
    raise ValueError(f"unknown operation {op!r}")


def oned_length(a: OneDimSet) -> Fraction:
    return a.length
