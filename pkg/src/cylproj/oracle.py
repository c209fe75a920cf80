"""Brute-force reference computations.

Nothing here uses fiber profiles or the closed-form stage formulas, and the
measures are computed by enumerating grid cells rather than by walking the
canonical diagrams.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import reduce

import numpy as np

from .discrete import DiscreteBase, DiscreteSet
from .errors import BoundExceeded, UnknownAtom
from .measure import MeasureValue
from .sets import CylSet, DimVar, FinDimSet

DEFAULT_N_BOUND = 5
DEFAULT_MAX_CELLS = 4_000_000


def max_cells() -> int:
    return int(os.environ.get("CYLPROJ_MAX_CELLS", DEFAULT_MAX_CELLS))


def materialize_n_fold(a: CylSet, y: DimVar, n: int, mode: str,
                       bound: int = DEFAULT_N_BOUND) -> CylSet:
    """Literal union or intersection of ``n`` copies of ``a`` with ``y`` renamed
    to fresh, distinct dimensions."""
    if mode not in ("union", "intersection"):
        raise ValueError(f"mode must be 'union' or 'intersection', got {mode!r}")
    if n < 1:
        raise ValueError("n must be positive")
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the materialization bound {bound}")
    start = max(a.dim_set() | {y}) + 1
    copies = [a.substitute(y, start + i) for i in range(n)]
    if mode == "union":
        return reduce(lambda u, v: u | v, copies)
    return reduce(lambda u, v: u & v, copies)


def _check_cells(shape) -> None:
    cells = math.prod(shape)
    if cells > max_cells():
        raise BoundExceeded(f"grid of {cells} cells exceeds CYLPROJ_MAX_CELLS={max_cells()}")


def _weighted_sum(mask: np.ndarray, weights: list[list[int]]) -> int:
    """Sum over True cells of the product of per-axis integer weights."""
    bound = math.prod(sum(w) for w in weights)
    dtype = np.int64 if bound < 2 ** 62 else object
    arr = mask.astype(dtype)
    for w in reversed(weights):
        arr = arr.dot(np.array(w, dtype=dtype))
    return int(arr)


def _grid_total(term_masks: list[list[np.ndarray]], weights: list[list[int]]) -> int:
    shape = tuple(len(w) for w in weights)
    _check_cells(shape)
    mask = np.zeros(shape, dtype=bool)
    for per_dim in term_masks:
        cell = np.ones(shape, dtype=bool)
        for axis, vec in enumerate(per_dim):
            view = [1] * len(shape)
            view[axis] = len(vec)
            cell &= vec.reshape(view)
        mask |= cell
    if not shape:
        return int(mask.any())
    return _weighted_sum(mask, weights)


def grid_measure(a: FinDimSet) -> MeasureValue:
    """Lebesgue measure by enumerating the open boxes of the breakpoint grid.

    Points and box faces are null sets, so only products of open grid
    intervals are visited; on each of them every term is constant.
    """
    terms = a.terms
    if not terms:
        return MeasureValue(0)
    dims = sorted({d for t in terms for d in t.dims})
    weights, scale, grids = [], 1, []
    for d in dims:
        grid = sorted(set().union(*(t.get(d).breakpoints for t in terms if t.get(d) is not None)))
        den = math.lcm(*(g.denominator for g in grid))
        weights.append([int((hi - lo) * den) for lo, hi in zip(grid, grid[1:])])
        grids.append(grid)
        scale *= den
    term_masks = []
    for t in terms:
        per_dim = []
        for d, grid in zip(dims, grids):
            comp = t.get(d)
            if comp is None:
                per_dim.append(np.ones(len(grid) - 1, dtype=bool))
            else:
                # the midpoint of each open grid interval decides membership
                per_dim.append(np.array([bool(comp.at((lo + hi) / 2))
                                         for lo, hi in zip(grid, grid[1:])]))
        term_masks.append(per_dim)
    return MeasureValue(Fraction(_grid_total(term_masks, weights), scale))


def truncation_measure_discrete(a: DiscreteSet, base: DiscreteBase, y: DimVar | None = None,
                                n: int | None = None, mode: str = "intersection") -> MeasureValue:
    """Discrete power measure by enumerating every named atom plus the tail class.

    With ``y`` and ``n`` given, the n-fold stage of ``a`` is materialized first.
    """
    if n is not None:
        a = materialize_n_fold(a, y, n, mode)
    terms = a.terms
    for t in terms:
        for comp in t.components.values():
            for atom in comp.atoms:
                if atom >= base.size:
                    raise UnknownAtom(f"atom {atom} is not named by the base (N={base.size})")
    if not terms:
        return MeasureValue(0)
    dims = sorted({d for t in terms for d in t.dims})
    classes = list(range(base.size)) + (["tail"] if base.tail_mass > 0 else [])
    probs = list(base.named_probs) + ([base.tail_mass] if base.tail_mass > 0 else [])
    den = math.lcm(*(p.denominator for p in probs))
    w = [int(p * den) for p in probs]
    term_masks = []
    for t in terms:
        per_dim = []
        for d in dims:
            comp = t.get(d)
            if comp is None:
                per_dim.append(np.ones(len(classes), dtype=bool))
            else:
                per_dim.append(np.array([bool(comp.rest) if c == "tail" else c in comp
                                         for c in classes]))
        term_masks.append(per_dim)
    total = _grid_total(term_masks, [w] * len(dims))
    return MeasureValue(Fraction(total, den ** len(dims)))
