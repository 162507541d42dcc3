from ._conevol import (
    ConevolError,
    cone_volumes,
    example_suite,
    irreducible_partition,
    normalize_to_unit_volume,
    polytope_info,
    pscc_vertices,
    sample_type_cones,
    scc_check,
    solve_inverse,
    trapezoid_membership,
)

__all__ = [
    "ConevolError",
    "cone_volumes",
    "example_suite",
    "irreducible_partition",
    "normalize_to_unit_volume",
    "polytope_info",
    "pscc_vertices",
    "sample_type_cones",
    "scc_check",
    "solve_inverse",
    "trapezoid_membership",
]
