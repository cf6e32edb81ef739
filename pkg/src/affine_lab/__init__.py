"""Exact counting for point-line incidences, affine line energy and
sum-product sets."""

__version__ = "0.1.0"

from .affine import IDENTITY, AffLine, compose, inverse, to_planar
from .energy import (
    additive_energy,
    difference_ratio_energy,
    energy,
    energy_naive,
    multiplicative_energy_k,
    quotient_multiset,
    rush_energy_bound_check,
)
from .families import FamilySpec, build_family, family_inverse
from .geometry import (
    LINE_AT_INFINITY,
    PlanarLine,
    Point,
    ProjPoint,
    as_rational,
    collinear,
    intersect,
    line_through,
)
from .incidence import (
    PointSet,
    count_incidences,
    directions,
    fourth_moment,
    line_profile,
    mixed_moment,
    rich_lines,
    trace_on_line,
)
