"""tropfan: exact tropical homology, Chow rings and Kahler verification on fans."""

from .fan import (
    Cone,
    Fan,
    FanError,
    Lattice,
    StarFan,
    barycentric_star_subdivision,
    fan_f_vector,
    is_balanced,
    is_unimodular,
    star_fan,
    validate_fan,
)
from .report import Report

__all__ = [
    "Cone",
    "Fan",
    "FanError",
    "Lattice",
    "StarFan",
    "Report",
    "barycentric_star_subdivision",
    "fan_f_vector",
    "is_balanced",
    "is_unimodular",
    "star_fan",
    "validate_fan",
]

__version__ = "0.1.0"
