"""Exact counts of lattice walks confined to alcoves of classical affine Weyl groups."""

from .closed_forms import (
    closed_form_circle_count,
    closed_form_count,
    closed_form_hyperplane_count,
    gambler_absorption,
    gambler_first_passage,
    gambler_position,
)
from .errors import (
    ConsistencyError,
    NotReflectableError,
    PreconditionError,
    ResourceError,
    UnsupportedFamilyError,
    WalkError,
)
from .free_counts import free_count
from .oracle import circle_dp_count, dp_count, exhaustive_count, hyperplane_dp_count
from .reflection import count_alcove, count_circle, count_hyperplane, km_determinant
from .weyl_core import ChamberSpec, Family, LatticePoint, StepKind, StepSet, is_reflectable

__all__ = [
    "ChamberSpec",
    "Family",
    "LatticePoint",
    "StepKind",
    "StepSet",
    "is_reflectable",
    "free_count",
    "count_alcove",
    "count_circle",
    "count_hyperplane",
    "km_determinant",
    "dp_count",
    "circle_dp_count",
    "hyperplane_dp_count",
    "exhaustive_count",
    "closed_form_count",
    "closed_form_circle_count",
    "closed_form_hyperplane_count",
    "gambler_first_passage",
    "gambler_position",
    "gambler_absorption",
    "WalkError",
    "PreconditionError",
    "NotReflectableError",
    "UnsupportedFamilyError",
    "ResourceError",
    "ConsistencyError",
]
