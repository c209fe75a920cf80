"""Piecewise-constant labellings of a one-dimensional base.

Two bases are supported:

* ``IntervalPartition`` labels ``[0, 1)`` through rational breakpoints
  ``0 = b_0 < b_1 < ... < b_k = 1``. Every open interval ``(b_i, b_{i+1})``
  and every point ``b_i`` (``i < k``) carries its own label.
* ``AtomPartition`` labels a countable atom space: finitely many atoms are
  labelled explicitly and every remaining atom shares the ``rest`` label.

Labels are compared with ``==``. Partitions are kept in canonical form (no
removable breakpoint, no explicit atom labelled like the rest), so two
partitions describe the same function iff their ``key`` tuples are equal.

Boolean-labelled partitions are the one-dimensional sets; the diagram module
uses partitions labelled with sub-diagrams as branching nodes.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterator, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class IntervalPartition:
    __slots__ = ("breakpoints", "open_labels", "point_labels", "_hash")

    def __init__(self, breakpoints: Sequence[Fraction], open_labels: Sequence[Any],
                 point_labels: Sequence[Any]):
        bps, ivs, pts = _canonical_intervals(tuple(breakpoints), tuple(open_labels),
                                             tuple(point_labels))
        self.breakpoints: tuple[Fraction, ...] = bps
        self.open_labels: tuple[Any, ...] = ivs
        self.point_labels: tuple[Any, ...] = pts
        self._hash = None

    @classmethod
    def constant(cls, label):
        return cls((ZERO, ONE), (label,), (label,))

    def key(self) -> tuple:
        return ("I", self.breakpoints, self.open_labels, self.point_labels)

    def __eq__(self, other):
        if not isinstance(other, IntervalPartition):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    @property
    def is_constant(self) -> bool:
        return len(self.breakpoints) == 2 and self.open_labels[0] == self.point_labels[0]

    def labels(self) -> list:
        """Distinct labels in order of first appearance."""
        seen: list = []
        for i in range(len(self.open_labels)):
            for lab in (self.point_labels[i], self.open_labels[i]):
                if not any(lab is s or lab == s for s in seen):
                    seen.append(lab)
        return seen

    def at(self, x: Fraction):
        if not 0 <= x < 1:
            raise ValueError(f"{x} is outside [0, 1)")
        i = bisect_right(self.breakpoints, x) - 1
        if self.breakpoints[i] == x:
            return self.point_labels[i]
        return self.open_labels[i]

    def _open_at(self, lo: Fraction):
        # label of the open piece starting at grid point lo
        return self.open_labels[bisect_right(self.breakpoints, lo) - 1]

    def map(self, fn: Callable[[Any], Any]):
        cache: dict = {}

        def f(lab):
            k = _label_key(lab)
            if k not in cache:
                cache[k] = fn(lab)
            return cache[k]

        return self._make(self.breakpoints, [f(v) for v in self.open_labels],
                          [f(v) for v in self.point_labels])

    def _make(self, bps, ivs, pts):
        return IntervalPartition(bps, ivs, pts)

    def indicator(self, label) -> "OneDimLike":
        """Boolean partition marking the pieces carrying ``label``."""
        from .oned import OneDimSet

        return OneDimSet._raw(
            self.breakpoints,
            [v is label or v == label for v in self.open_labels],
            [v is label or v == label for v in self.point_labels],
        )

    def combine(self, others: Sequence["IntervalPartition"], fn: Callable[..., Any]):
        parts = (self, *others)
        grid = sorted(set().union(*(p.breakpoints for p in parts)))
        ivs, pts = [], []
        memo: dict = {}

        def f(labs):
            k = tuple(_label_key(v) for v in labs)
            if k not in memo:
                memo[k] = fn(*labs)
            return memo[k]

        for g in grid[:-1]:
            pts.append(f([p.at(g) for p in parts]))
            ivs.append(f([p._open_at(g) for p in parts]))
        return self._make(grid, ivs, pts)

    def pieces(self) -> Iterator[tuple[str, Fraction, Fraction, Any]]:
        """Yield ``("point", b, b, label)`` and ``("open", lo, hi, label)`` pieces."""
        bps = self.breakpoints
        for i in range(len(bps) - 1):
            yield "point", bps[i], bps[i], self.point_labels[i]
            yield "open", bps[i], bps[i + 1], self.open_labels[i]

    @staticmethod
    def refine_cells(components: Sequence["IntervalPartition | None"]):
        """Split ``[0, 1)`` into cells on which every component is constant.

        ``None`` stands for the full set. Cells are half-open ``[b_i, b_{i+1})``
        unless some component separates the left endpoint from the open
        interval, in which case the point and the open part become two cells.
        Returns ``(cell, memberships)`` pairs where ``cell`` is a ``OneDimSet``.
        """
        from .oned import OneDimSet

        grid = sorted(set().union(*(c.breakpoints for c in components if c is not None),
                                  {ZERO, ONE}))
        out = []
        for lo, hi in zip(grid, grid[1:]):
            at_pt = [True if c is None else bool(c.at(lo)) for c in components]
            on_iv = [True if c is None else bool(c._open_at(lo)) for c in components]
            if at_pt == on_iv:
                out.append((OneDimSet.interval(lo, hi), at_pt))
            else:
                out.append((OneDimSet.points([lo]), at_pt))
                out.append((OneDimSet.open_interval(lo, hi), on_iv))
        return out

    def __repr__(self):
        return f"{type(self).__name__}({list(self.pieces())!r})"


class AtomPartition:
    __slots__ = ("entries", "rest", "_hash")

    def __init__(self, entries, rest):
        items = dict(entries)
        self.entries: tuple[tuple[int, Any], ...] = tuple(
            sorted(((a, v) for a, v in items.items() if not (v is rest or v == rest)),
                   key=lambda t: t[0]))
        for a, _ in self.entries:
            if a < 0:
                raise ValueError(f"atom index must be nonnegative, got {a}")
        self.rest = rest
        self._hash = None

    @classmethod
    def constant(cls, label):
        return cls((), label)

    def key(self) -> tuple:
        return ("A", self.entries, self.rest)

    def __eq__(self, other):
        if not isinstance(other, AtomPartition):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    @property
    def is_constant(self) -> bool:
        return not self.entries

    @property
    def atoms(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.entries)

    def labels(self) -> list:
        seen: list = []
        for lab in (*(v for _, v in self.entries), self.rest):
            if not any(lab is s or lab == s for s in seen):
                seen.append(lab)
        return seen

    def at(self, atom: int):
        for a, v in self.entries:
            if a == atom:
                return v
        return self.rest

    def map(self, fn):
        cache: dict = {}

        def f(lab):
            k = _label_key(lab)
            if k not in cache:
                cache[k] = fn(lab)
            return cache[k]

        return self._make([(a, f(v)) for a, v in self.entries], f(self.rest))

    def _make(self, entries, rest):
        return AtomPartition(entries, rest)

    def indicator(self, label):
        from .discrete import AtomSet

        hit = lambda v: v is label or v == label  # noqa: E731
        return AtomSet._raw([(a, hit(v)) for a, v in self.entries], hit(self.rest))

    def combine(self, others, fn):
        parts = (self, *others)
        atoms = sorted(set().union(*(p.atoms for p in parts)))
        return self._make([(a, fn(*(p.at(a) for p in parts))) for a in atoms],
                          fn(*(p.rest for p in parts)))

    @staticmethod
    def refine_cells(components):
        """Atom classes: one cell per mentioned atom plus the class of all others."""
        from .discrete import AtomSet

        atoms = sorted(set().union(*(c.atoms for c in components if c is not None)))
        out = []
        for a in atoms:
            out.append((AtomSet.finite([a]),
                        [True if c is None else bool(c.at(a)) for c in components]))
        out.append((AtomSet.cofinite(atoms),
                    [True if c is None else bool(c.rest) for c in components]))
        return out

    def __repr__(self):
        return f"{type(self).__name__}({self.entries!r}, rest={self.rest!r})"


OneDimLike = Any


def _label_key(lab) -> Hashable:
    # bools compare by value; diagram nodes are interned so identity is exact
    if isinstance(lab, bool):
        return lab
    return id(lab)


def _canonical_intervals(bps, ivs, pts):
    if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
        raise ValueError("breakpoints must start at 0 and end at 1")
    if len(ivs) != len(bps) - 1 or len(pts) != len(bps) - 1:
        raise ValueError("need one open label and one point label per interval")
    bps = tuple(Fraction(b) for b in bps)
    for a, b in zip(bps, bps[1:]):
        if not a < b:
            raise ValueError("breakpoints must be strictly increasing")
    keep_b = [bps[0]]
    keep_i = [ivs[0]]
    keep_p = [pts[0]]
    for i in range(1, len(bps) - 1):
        prev = keep_i[-1]
        if _same(prev, pts[i]) and _same(pts[i], ivs[i]):
            continue
        keep_b.append(bps[i])
        keep_i.append(ivs[i])
        keep_p.append(pts[i])
    keep_b.append(ONE)
    return tuple(keep_b), tuple(keep_i), tuple(keep_p)


def _same(u, v) -> bool:
    return u is v or u == v
