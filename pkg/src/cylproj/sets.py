"""Finite-dimensional sets in the power space: Boolean and cylindric algebra.

A set is a finite union of product terms. Each term constrains finitely many
dimensions (plain ``int`` indices) by one-dimensional components; every other
dimension is unconstrained. Internally each set carries a canonical decision
diagram, which makes equality, complement and cylindrification exact.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from . import diagram as dg
from .errors import TargetDimensionOccupied
from .oned import OneDimSet

DimVar = int


class ProductTerm:
    """Product of one-dimensional components over finitely many dimensions.

    Full components are dropped; a term with an empty component collapses to
    the distinguished empty term (``components is None``).
    """

    __slots__ = ("_components",)

    def __init__(self, components: Mapping[DimVar, object] | None = None):
        comps = {}
        empty = False
        for dim, comp in (components or {}).items():
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
                raise ValueError(f"dimension index must be a nonnegative int, got {dim!r}")
            if comp.is_empty:
                empty = True
            elif not comp.is_full:
                comps[dim] = comp
        self._components = None if empty else dict(sorted(comps.items()))

    @property
    def is_empty(self) -> bool:
        return self._components is None

    @property
    def components(self) -> dict:
        return {} if self._components is None else dict(self._components)

    def get(self, dim: DimVar):
        """The component at ``dim``, or ``None`` when unconstrained."""
        return None if self._components is None else self._components.get(dim)

    @property
    def dims(self) -> tuple[DimVar, ...]:
        return () if self._components is None else tuple(self._components)

    def rename(self, mapping: Mapping[DimVar, DimVar]) -> "ProductTerm":
        if self._components is None:
            return self
        return ProductTerm({mapping.get(d, d): c for d, c in self._components.items()})

    def __eq__(self, other):
        if not isinstance(other, ProductTerm):
            return NotImplemented
        return self._components == other._components

    def __hash__(self):
        if self._components is None:
            return hash(None)
        return hash(tuple(self._components.items()))

    def __repr__(self):
        if self._components is None:
            return "ProductTerm(empty)"
        return f"ProductTerm({self._components!r})"


class CylSet:
    """Shared machinery for continuous and discrete finite-dimensional sets."""

    __slots__ = ("_terms", "_node")
    component_cls: type = OneDimSet

    def __init__(self, terms: Iterable[ProductTerm | Mapping] = ()):
        out = []
        for t in terms:
            if not isinstance(t, ProductTerm):
                t = ProductTerm(t)
            for c in t.components.values():
                if not isinstance(c, self.component_cls):
                    raise TypeError(f"{type(self).__name__} needs {self.component_cls.__name__} "
                                    f"components, got {type(c).__name__}")
            if not t.is_empty:
                out.append(t)
        self._terms: tuple[ProductTerm, ...] | None = tuple(out)
        self._node = None

    @classmethod
    def _wrap(cls, node):
        obj = cls.__new__(cls)
        obj._terms = None
        obj._node = node
        return obj

    @classmethod
    def unit(cls):
        return cls._wrap(True)

    @classmethod
    def empty(cls):
        return cls._wrap(False)

    @classmethod
    def product(cls, components: Mapping[DimVar, object]):
        return cls([ProductTerm(components)])

    @property
    def diagram(self):
        # cache fills are idempotent: every thread computes the same node
        if self._node is None:
            self._node = dg.union_all(dg.from_components(t.components) for t in self._terms)
        return self._node

    @property
    def terms(self) -> tuple[ProductTerm, ...]:
        if self._terms is None:
            self._terms = tuple(ProductTerm(p) for p in dg.paths(self._node))
        return self._terms

    def canonical(self):
        """Equal set whose terms are the canonical disjoint decomposition."""
        out = self._wrap(self.diagram)
        out.terms
        return out

    # Boolean algebra

    def union(self, other):
        self._check(other)
        return self._wrap(dg.union(self.diagram, other.diagram))

    def intersect(self, other):
        self._check(other)
        return self._wrap(dg.intersect(self.diagram, other.diagram))

    def complement(self):
        return self._wrap(dg.negate(self.diagram))

    def difference(self, other):
        return self.intersect(other.complement())

    __or__ = union
    __and__ = intersect
    __invert__ = complement
    __sub__ = difference

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __contains__(self, point: Mapping[DimVar, object]) -> bool:
        """Membership of a point given by its coordinates on the free dimensions."""
        node = self.diagram
        while not isinstance(node, bool):
            if node.dim not in point:
                raise KeyError(f"point has no coordinate for dimension {node.dim}")
            node = node.part.at(point[node.dim])
        return node

    def issubset(self, other) -> bool:
        return self.difference(other).is_empty

    __le__ = issubset

    @property
    def is_empty(self) -> bool:
        return self.diagram is False

    @property
    def is_unit(self) -> bool:
        return self.diagram is True

    def __eq__(self, other):
        if not isinstance(other, CylSet):
            return NotImplemented
        return type(self) is type(other) and self.diagram is other.diagram

    def __hash__(self):
        return hash(id(self.diagram)) if not isinstance(self.diagram, bool) else hash(self.diagram)

    # cylindric operations

    def dim_set(self) -> set[DimVar]:
        return dg.support(self.diagram)

    def cylindrify(self, dim: DimVar):
        return self._wrap(dg.exists(self.diagram, dim))

    def co_cylindrify(self, dim: DimVar):
        return self.complement().cylindrify(dim).complement()

    def substitute(self, frm: DimVar, to: DimVar):
        """Rename the free dimension ``frm`` to a dimension ``to`` not free here."""
        if frm == to:
            return self
        if to in self.dim_set():
            raise TargetDimensionOccupied(f"dimension {to} is free in the set")
        return type(self)(t.rename({frm: to}) for t in self.canonical().terms)

    def rename(self, mapping: Mapping[DimVar, DimVar]):
        """Simultaneous renaming; targets must be distinct and not otherwise free."""
        free = self.dim_set()
        moved = {f: t for f, t in mapping.items() if f != t and f in free}
        targets = list(moved.values())
        if len(set(targets)) != len(targets):
            raise TargetDimensionOccupied("renaming targets must be distinct")
        for t in targets:
            if t in free and t not in moved:
                raise TargetDimensionOccupied(f"dimension {t} is free in the set")
        return type(self)(t.rename(moved) for t in self.canonical().terms)

    # decompositions

    def disjointify(self):
        """Equal set whose terms are disjoint products of refinement cells.

        Per dimension the cells come from the breakpoints of the terms that are
        still active, so the result is independent of term order and applying
        it twice changes nothing.
        """
        terms = self.terms
        dims = sorted({d for t in terms for d in t.dims})
        out = [ProductTerm(cell) for cell, active in
               decompose(terms, dims, self.component_cls) if active]
        return type(self)(out)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.terms)!r})"


class FinDimSet(CylSet):
    __slots__ = ()
    component_cls = OneDimSet


def decompose(terms, dims, component_cls, keep_empty: bool = False
              ) -> Iterator[tuple[dict, list[int]]]:
    """Split the space spanned by ``dims`` into cells where term membership is fixed.

    Yields ``(cell_components, active_term_indices)``. Cells with no active
    term are yielded (once, unsplit below that dimension) only if
    ``keep_empty``.
    """
    yield from _decompose(terms, list(range(len(terms))), list(dims), 0, {},
                          component_cls, keep_empty)


def _decompose(terms, active, dims, i, acc, component_cls, keep_empty):
    if i == len(dims):
        yield dict(acc), active
        return
    d = dims[i]
    comps = [terms[t].get(d) for t in active]
    if all(c is None for c in comps):
        yield from _decompose(terms, active, dims, i + 1, acc, component_cls, keep_empty)
        return
    for cell, member in component_cls.refine_cells(comps):
        sub = [t for t, m in zip(active, member) if m]
        acc[d] = cell
        if sub:
            yield from _decompose(terms, sub, dims, i + 1, acc, component_cls, keep_empty)
        elif keep_empty:
            yield dict(acc), []
        del acc[d]


# functional surface

def fds_combine(op: str, a: CylSet, b: CylSet | None = None) -> CylSet:
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


def disjointify(a: CylSet) -> CylSet:
    return a.disjointify()


def dim_set(a: CylSet) -> set[DimVar]:
    return a.dim_set()


def substitute(a: CylSet, frm: DimVar, to: DimVar) -> CylSet:
    return a.substitute(frm, to)


def cylindrify(a: CylSet, dim: DimVar) -> CylSet:
    return a.cylindrify(dim)


def co_cylindrify(a: CylSet, dim: DimVar) -> CylSet:
    return a.co_cylindrify(dim)


def set_equal(a: CylSet, b: CylSet) -> bool:
    return a == b

