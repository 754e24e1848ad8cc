"""Obstruction detectors, property combinators, path lemmas and the rank-c tester."""

from __future__ import annotations

from .asteroidal import (
    AW_KINDS,
    AsteroidalWitness,
    at_witness_set,
    has_at,
    is_asteroidal_triple,
    make_aw,
)
from .holes import find_induced_cycle, has_hole, has_odd_antihole, is_hole_sequence
from .paths import even_hole_from_path, odd_hole_from_path, seen_edges, seen_vertices
from .properties import (
    ALMOST_WHEEL,
    AT,
    EVEN_HOLE,
    HOLE4,
    HOLE6,
    INTERVAL,
    ODD_ANTIHOLE,
    ODD_HOLE,
    PERFECT,
    PROPERTIES,
    WHEEL,
    PropertySpec,
    complement_property,
    get_property,
    union_property,
)
from .rankc import COUNTEREXAMPLE, PREMISE_FAILED, REPLACED, RankVerdict, check_rank_c
from .wheels import any_wheel, has_wheel, is_induced_wheel, wheel_not_4

__all__ = [
    "ALMOST_WHEEL", "AT", "AW_KINDS", "AsteroidalWitness", "COUNTEREXAMPLE", "EVEN_HOLE",
    "HOLE4", "HOLE6", "INTERVAL", "ODD_ANTIHOLE", "ODD_HOLE", "PERFECT", "PREMISE_FAILED",
    "PROPERTIES", "PropertySpec", "REPLACED", "RankVerdict", "WHEEL", "any_wheel",
    "at_witness_set", "check_rank_c", "complement_property", "even_hole_from_path",
    "find_induced_cycle", "get_property", "has_at", "has_hole", "has_odd_antihole",
    "has_wheel", "is_asteroidal_triple", "is_hole_sequence", "is_induced_wheel", "make_aw",
    "odd_hole_from_path", "seen_edges", "seen_vertices", "union_property", "wheel_not_4",
]
