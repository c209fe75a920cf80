"""Reduced ordered decision diagrams over products of one-dimensional bases.

A diagram is either a leaf (``True``/``False``) or a :class:`Node` that splits
on one dimension with a partition (see :mod:`cylproj.partition`) whose labels
are sub-diagrams over strictly larger dimensions. Nodes are hash-consed, so
two diagrams denote the same set iff they are the same object. Dimensions
never mentioned by a diagram are unconstrained.
"""

from __future__ import annotations

import weakref
from fractions import Fraction
from typing import Callable, Iterator, Union

Diagram = Union[bool, "Node"]


class Node:
    __slots__ = ("dim", "part", "__weakref__")

    def __init__(self, dim: int, part):
        self.dim = dim
        self.part = part

    def __repr__(self):
        return f"Node(dim={self.dim}, part={self.part!r})"


_unique: "weakref.WeakValueDictionary[tuple, Node]" = weakref.WeakValueDictionary()


def mk(dim: int, part) -> Diagram:
    """Return the canonical diagram splitting on ``dim`` with ``part``."""
    if part.is_constant:
        return part.labels()[0]
    key = (dim, part.key())
    node = _unique.get(key)
    if node is None:
        node = _unique.setdefault(key, Node(dim, part))
    return node


def _top(dim: int, u: Diagram, part_cls):
    if isinstance(u, Node) and u.dim == dim:
        return u.part
    return part_cls.constant(u)


def _binary(u: Diagram, v: Diagram, leaf: Callable[[bool, bool], bool],
            shortcut: Callable[[Diagram, Diagram], Diagram | None], memo: dict) -> Diagram:
    hit = shortcut(u, v)
    if hit is not None:
        return hit
    if isinstance(u, bool) and isinstance(v, bool):
        return leaf(u, v)
    key = (id(u), id(v))
    if key in memo:
        return memo[key][0]
    nodes = [w for w in (u, v) if isinstance(w, Node)]
    dim = min(w.dim for w in nodes)
    part_cls = _generic(nodes[0].part)
    pu, pv = _top(dim, u, part_cls), _top(dim, v, part_cls)
    res = mk(dim, pu.combine([pv], lambda x, y: _binary(x, y, leaf, shortcut, memo)))
    # keep u, v alive so their ids stay unique for the memo's lifetime
    memo[key] = (res, u, v)
    return res


def _generic(part):
    from .partition import AtomPartition, IntervalPartition

    return IntervalPartition if isinstance(part, IntervalPartition) else AtomPartition


def _or_short(u, v):
    if u is True or v is True:
        return True
    if u is False:
        return v
    if v is False or u is v:
        return u
    return None


def _and_short(u, v):
    if u is False or v is False:
        return False
    if u is True:
        return v
    if v is True or u is v:
        return u
    return None


def union(u: Diagram, v: Diagram) -> Diagram:
    return _binary(u, v, lambda a, b: a or b, _or_short, {})


def intersect(u: Diagram, v: Diagram) -> Diagram:
    return _binary(u, v, lambda a, b: a and b, _and_short, {})


def union_all(items) -> Diagram:
    acc: Diagram = False
    for d in items:
        acc = union(acc, d)
    return acc


def negate(u: Diagram, memo: dict | None = None) -> Diagram:
    if isinstance(u, bool):
        return not u
    if memo is None:
        memo = {}
    if id(u) in memo:
        return memo[id(u)][0]
    res = mk(u.dim, u.part.map(lambda c: negate(c, memo)))
    memo[id(u)] = (res, u)
    return res


def exists(u: Diagram, dim: int, memo: dict | None = None) -> Diagram:
    """Cylindrification: forget the coordinate ``dim``."""
    if isinstance(u, bool) or u.dim > dim:
        return u
    if memo is None:
        memo = {}
    if id(u) in memo:
        return memo[id(u)][0]
    if u.dim == dim:
        res = union_all(u.part.labels())
    else:
        res = mk(u.dim, u.part.map(lambda c: exists(c, dim, memo)))
    memo[id(u)] = (res, u)
    return res


def support(u: Diagram) -> set[int]:
    dims: set[int] = set()
    seen: set[int] = set()
    stack = [u]
    while stack:
        w = stack.pop()
        if isinstance(w, bool) or id(w) in seen:
            continue
        seen.add(id(w))
        dims.add(w.dim)
        stack.extend(w.part.labels())
    return dims


def from_components(components: dict) -> Diagram:
    """Diagram of the product of boolean partitions ``{dim: component}``."""
    acc: Diagram = True
    for dim in sorted(components, reverse=True):
        comp = components[dim]
        child = acc
        acc = mk(dim, comp.map(lambda b, child=child: child if b else False))
    return acc


def paths(u: Diagram) -> Iterator[dict]:
    """Yield pairwise disjoint products ``{dim: component}`` whose union is ``u``."""
    if u is True:
        yield {}
        return
    if u is False:
        return
    for child in u.part.labels():
        if child is False:
            continue
        comp = u.part.indicator(child)
        for sub in paths(child):
            yield {u.dim: comp, **sub}


def measure(u: Diagram, mass: Callable[[object], Fraction], memo: dict | None = None) -> Fraction:
    """Power measure of ``u`` given the mass of a one-dimensional component."""
    if u is True:
        return Fraction(1)
    if u is False:
        return Fraction(0)
    if memo is None:
        memo = {}
    if id(u) in memo:
        return memo[id(u)][0]
    total = Fraction(0)
    for child in u.part.labels():
        if child is False:
            continue
        total += mass(u.part.indicator(child)) * measure(child, mass, memo)
    memo[id(u)] = (total, u)
    return total
