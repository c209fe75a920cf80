"""Exact power measures, fiber profiles and the n-fold stage measures.

For a set ``a`` and a projection dimension ``y`` the *fiber profile* splits
the space of the remaining free dimensions into cells on which the y-section
of ``a`` is a fixed one-dimensional set. With cell volumes ``v`` and fiber
measures ``q`` (both exact), the stages of the cylindric sum and product are

    mu(intersection of n renamed copies) = sum v * q**n
    mu(union of n renamed copies)        = 1 - sum v * (1 - q)**n

and their limits are the total volume with ``q > 0`` and with ``q == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import reduce
from typing import Sequence

from . import diagram as dg
from .discrete import DiscreteBase, DiscreteSet
from .sets import CylSet, DimVar, FinDimSet, decompose

DECIMAL_DIGITS = 12


def to_decimal(x: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    """Display string for an exact rational: at most ``digits`` significant digits."""
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s


@dataclass(frozen=True)
class MeasureValue:
    exact: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exact", Fraction(self.exact))

    @property
    def decimal(self) -> str:
        return to_decimal(self.exact)

    def __str__(self):
        return f"{self.exact} ({self.decimal})"

    def __eq__(self, other):
        if isinstance(other, MeasureValue):
            return self.exact == other.exact
        if isinstance(other, (int, Fraction)):
            return self.exact == other
        return NotImplemented

    def __hash__(self):
        return hash(self.exact)


@dataclass(frozen=True)
class FiberCell:
    components: dict  # dim -> OneDimSet | AtomSet, unconstrained dims omitted
    volume: Fraction
    q: Fraction


@dataclass(frozen=True)
class FiberProfile:
    projection_dim: DimVar | None
    cells: tuple[FiberCell, ...]
    kind: str = "continuous"  # "continuous", "discrete" or "raw"
    degenerate: bool = False
    base: DiscreteBase | None = field(default=None, compare=False)

    def __post_init__(self):
        if sum((c.volume for c in self.cells), Fraction(0)) != 1:
            raise ValueError("cell volumes must sum to 1")
        for c in self.cells:
            if not 0 <= c.q <= 1 or c.volume < 0:
                raise ValueError(f"invalid cell volume/q: {c.volume}, {c.q}")

    @classmethod
    def raw(cls, cells: Sequence[tuple]) -> "FiberProfile":
        """Profile given directly as ``(volume, q)`` pairs, e.g. for sets outside the algebra."""
        return cls(None, tuple(FiberCell({}, Fraction(v), Fraction(q)) for v, q in cells),
                   kind="raw")

    @property
    def mass(self) -> Fraction:
        return sum((c.volume * c.q for c in self.cells), Fraction(0))


def lebesgue_measure(a: FinDimSet) -> MeasureValue:
    if not isinstance(a, FinDimSet):
        raise TypeError("lebesgue_measure needs a FinDimSet")
    return MeasureValue(dg.measure(a.diagram, lambda comp: comp.length))


def discrete_measure(a: DiscreteSet, base: DiscreteBase) -> MeasureValue:
    if not isinstance(a, DiscreteSet):
        raise TypeError("discrete_measure needs a DiscreteSet")
    base.check(a)
    return MeasureValue(dg.measure(a.diagram, base.mass))


def measure_of(a: CylSet, base: DiscreteBase | None = None) -> MeasureValue:
    if isinstance(a, DiscreteSet):
        if base is None:
            raise TypeError("a discrete set needs a base to be measured")
        return discrete_measure(a, base)
    return lebesgue_measure(a)


def fiber_profile(a: CylSet, y: DimVar, base: DiscreteBase | None = None) -> FiberProfile:
    """Split the other free dimensions of ``a`` into cells of constant y-fiber."""
    if isinstance(a, DiscreteSet):
        if base is None:
            raise TypeError("a discrete set needs a base for its fiber profile")
        a = base.restrict(a)
        mass = base.mass
        kind = "discrete"
    else:
        mass = lambda comp: comp.length  # noqa: E731
        kind = "continuous"
    free = a.dim_set()
    zdims = sorted(free - {y})
    terms = a.canonical().terms
    full = a.component_cls.full()
    cells = []
    for comps, active in decompose(terms, zdims, a.component_cls, keep_empty=True):
        fiber = reduce(lambda f, t: f | (terms[t].get(y) or full), active,
                       a.component_cls.empty())
        volume = reduce(lambda v, c: v * mass(c), comps.values(), Fraction(1))
        cells.append(FiberCell(comps, volume, mass(fiber)))
    return FiberProfile(y, tuple(cells), kind=kind, degenerate=y not in free,
                        base=base if kind == "discrete" else None)


def n_fold_intersection_measure(p: FiberProfile, n: int) -> MeasureValue:
    _check_n(n)
    return MeasureValue(sum((c.volume * c.q ** n for c in p.cells), Fraction(0)))


def n_fold_union_measure(p: FiberProfile, n: int) -> MeasureValue:
    _check_n(n)
    return MeasureValue(1 - sum((c.volume * (1 - c.q) ** n for c in p.cells), Fraction(0)))


def printed_intersection_reading(p: FiberProfile, n: int) -> MeasureValue | None:
    """``sum over atoms c of (p(c) * fiber measure)**n``, the weight raised with the fiber.

    Only computable when every cell is a single atom per dimension, i.e. for
    discrete profiles over bases without tail mass.
    """
    _check_n(n)
    if p.kind != "discrete" or p.base is None or p.base.tail_mass != 0:
        return None
    total = Fraction(0)
    for c in p.cells:
        # expand each cell into its individual atom tuples
        weights = [Fraction(1)]
        for comp in c.components.values():
            atoms = [a for a in range(p.base.size) if a in comp]
            weights = [w * p.base.prob(a) for w in weights for a in atoms]
        total += sum(((w * c.q) ** n for w in weights), Fraction(0))
    return MeasureValue(total)


def profile_limits(p: FiberProfile) -> tuple[MeasureValue, MeasureValue]:
    """(limit of the union stages, limit of the intersection stages)."""
    sup = sum((c.volume for c in p.cells if c.q > 0), Fraction(0))
    inf = sum((c.volume for c in p.cells if c.q == 1), Fraction(0))
    return MeasureValue(sup), MeasureValue(inf)


def gap_bound_at(p: FiberProfile, n: int) -> Fraction:
    """Upper bound on the distance of both n-th stages from their limits."""
    _check_n(n)
    return sum((c.volume * max(c.q, 1 - c.q) ** n for c in p.cells if 0 < c.q < 1),
               Fraction(0))


def stages_needed(p: FiberProfile, target: Fraction) -> int:
    """Smallest ``n >= 1`` with ``gap_bound_at(p, n) <= target``."""
    target = Fraction(target)
    if target <= 0:
        if any(0 < c.q < 1 and c.volume > 0 for c in p.cells):
            raise ValueError("a positive target is needed when some fiber is partial")
        return 1
    if gap_bound_at(p, 1) <= target:
        return 1
    lo, hi = 1, 2
    while gap_bound_at(p, hi) > target:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if gap_bound_at(p, mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
