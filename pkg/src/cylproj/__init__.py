"""Exact measures of ordinary and strong projections in power measure spaces."""

from .discrete import (
    AtomSet,
    DiscreteBase,
    DiscreteSet,
    dset_co_cylindrify,
    dset_combine,
    dset_cylindrify,
    dset_substitute,
)
from .errors import BoundExceeded, CylprojError, TargetDimensionOccupied, UnknownAtom
from .measure import (
    FiberCell,
    FiberProfile,
    MeasureValue,
    discrete_measure,
    fiber_profile,
    lebesgue_measure,
    n_fold_intersection_measure,
    n_fold_union_measure,
    profile_limits,
)
from .oned import Interval, OneDimSet, oned_combine, oned_length
from .projection import (
    AuditReport,
    ConvergenceReport,
    continuity_check,
    convergence_table,
    infinite_union_measure_discrete,
    lemma1_audit,
    strong_co_project,
    strong_project,
    theorem4_audit,
)
from .sets import (
    DimVar,
    FinDimSet,
    ProductTerm,
    co_cylindrify,
    cylindrify,
    dim_set,
    disjointify,
    fds_combine,
    set_equal,
    substitute,
)

__version__ = "0.1.0"
