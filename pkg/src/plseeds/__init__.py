"""Wedges, stellar subdivisions and toric colorable seeds on PL spheres."""
from .complex import (
    EMPTY,
    FVector,
    SimplicialComplex,
    are_isomorphic,
    boundary_of_simplex,
    f_vector,
    join,
    link,
    minimal_non_faces,
    star,
    validate_complex,
)
from .operations import (
    assembled_face,
    j_construction,
    stellar_subdivision,
    suspension,
    wedge,
    wedge_via_nonface_duplication,
)

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "FVector",
    "SimplicialComplex",
    "are_isomorphic",
    "assembled_face",
    "boundary_of_simplex",
    "f_vector",
    "j_construction",
    "join",
    "link",
    "minimal_non_faces",
    "star",
    "stellar_subdivision",
    "suspension",
    "validate_complex",
    "wedge",
    "wedge_via_nonface_duplication",
]
