"""Chambers, toric arrangements, face posets and their exports."""

from __future__ import annotations

from .chambers import (
    Chamber,
    canonical_In_representatives,
    ceil_signature,
    chamber_of,
    polarization_chambers,
    reduce_to_unit_cube,
    same_chamber_up_to_translation,
    signature_items,
)
from .export import arrangement_to_svg, poset_to_dot, poset_to_text
from .faces import (
    Face,
    FacePoset,
    GradedPoset,
    count_polygons,
    enumerate_faces,
    is_simple,
    polygon_histogram,
)
from .posets import OrbitPoset, euler_check, orbit_poset, poset_isomorphic, strata_poset
from .toric import (
    ToricArrangement,
    normalize_total,
    polarization_for_offsets,
    solve_psi,
    toric_arrangement,
)

__all__ = [
    "Chamber",
    "Face",
    "FacePoset",
    "GradedPoset",
    "OrbitPoset",
    "ToricArrangement",
    "arrangement_to_svg",
    "canonical_In_representatives",
    "ceil_signature",
    "chamber_of",
    "count_polygons",
    "enumerate_faces",
    "euler_check",
    "is_simple",
    "normalize_total",
    "orbit_poset",
    "polarization_chambers",
    "polarization_for_offsets",
    "polygon_histogram",
    "poset_isomorphic",
    "poset_to_dot",
    "poset_to_text",
    "reduce_to_unit_cube",
    "same_chamber_up_to_translation",
    "signature_items",
    "solve_psi",
    "strata_poset",
    "toric_arrangement",
]
