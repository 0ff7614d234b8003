"""Even sets of lines on smooth quartic surfaces.

Combinatorial enumeration, admissibility filters, Picard-lattice bookkeeping
and double-cover Chern numbers for arrangements of at most ten lines.
"""

from evenlines.arrangement import (
    Arrangement,
    ArrangementError,
    AsymmetricMatrix,
    ComponentDecomposition,
    DegreeProfile,
    MalformedGraph6,
    NonBinaryEntry,
    NonzeroDiagonal,
    canonical_form,
    components,
    decode_graph6,
    degree_profile,
    encode_graph6,
    is_isomorphic,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "ArrangementError",
    "AsymmetricMatrix",
    "ComponentDecomposition",
    "DegreeProfile",
    "MalformedGraph6",
    "NonBinaryEntry",
    "NonzeroDiagonal",
    "canonical_form",
    "components",
    "decode_graph6",
    "degree_profile",
    "encode_graph6",
    "is_isomorphic",
    "validate",
    "__version__",
]
