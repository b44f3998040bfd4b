"""Exact orbit arithmetic for symplectic groups acting on flag products.

The package answers four questions about tuples of flags in a symplectic
vector space, all in exact arithmetic:

* **classify** — does the diagonal symplectic group have finitely many
  orbits on the product of flag varieties with the given dimensions?
* **count / enumerate** — if so, how many orbits are there, and what do
  they look like as multisets of indecomposable building blocks?
* **represent** — produce an explicit matrix representative for any orbit.
* **identify** — given two concrete flag tuples, decide whether one can be
  moved to the other by the symplectic group, via Krull–Schmidt
  decomposition of the associated objects.

The command line entry point is ``spflag`` (see :mod:`spflag.cli`).
"""

from __future__ import annotations

from .catalog import (
    CatalogRow,
    IndecompLabel,
    class_representatives,
    expanded_representatives,
    expansions_of_row,
    gl_half_representative,
    mu,
    representative,
    row_for_dims,
    rows,
    table_checksums,
)
from .census import CensusResult, enumerate_symplectic_tuples, orbit_census, symplectic_group_order_formula
from .classifier import (
    ClassificationResult,
    InfiniteWitness,
    KacBound,
    classify,
    kac_bound,
    sp_flag_dim,
    sp_grassmannian_dim,
    sp_group_dim,
    tits_q,
    total_sp_flag_dim,
)
from .compositions import Composition, DimVector
from .decomposer import (
    DecompositionUnknownError,
    EndAlgebra,
    HomBasis,
    SpSummand,
    UnmatchedSummandError,
    are_isomorphic,
    decompose,
    end_algebra,
    find_isomorphism,
    hom_space,
    is_indecomposable,
    sp_decompose,
    sp_orbit_equal,
)
from .enumerator import (
    InfiniteTypeError,
    OrbitFamily,
    enumerate_orbits,
    lagrangian_pair_series,
    orbit_count,
    orbit_families,
    orbit_representative,
    sp_pi,
)
from .exactlin import GF2, GF3, GF5, QQ, Matrix, Subspace, field_for_tag
from .flagobj import (
    Flag,
    FlagObject,
    SymplecticForm,
    compress_object,
    direct_sum,
    dual,
    is_symplectic_object,
    object_from_json,
    object_to_json,
    random_symplectic_matrix,
    realize_at,
    sym_double,
    symplectic_direct_sum,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogRow",
    "CensusResult",
    "ClassificationResult",
    "Composition",
    "DecompositionUnknownError",
    "DimVector",
    "EndAlgebra",
    "Flag",
    "FlagObject",
    "GF2",
    "GF3",
    "GF5",
    "HomBasis",
    "IndecompLabel",
    "InfiniteTypeError",
    "InfiniteWitness",
    "KacBound",
    "Matrix",
    "OrbitFamily",
    "QQ",
    "SpSummand",
    "Subspace",
    "SymplecticForm",
    "UnmatchedSummandError",
    "are_isomorphic",
    "class_representatives",
    "classify",
    "compress_object",
    "decompose",
    "direct_sum",
    "dual",
    "end_algebra",
    "enumerate_orbits",
    "enumerate_symplectic_tuples",
    "expanded_representatives",
    "expansions_of_row",
    "field_for_tag",
    "find_isomorphism",
    "gl_half_representative",
    "hom_space",
    "is_indecomposable",
    "is_symplectic_object",
    "kac_bound",
    "lagrangian_pair_series",
    "mu",
    "object_from_json",
    "object_to_json",
    "orbit_census",
    "orbit_count",
    "orbit_families",
    "orbit_representative",
    "random_symplectic_matrix",
    "realize_at",
    "representative",
    "row_for_dims",
    "rows",
    "sp_decompose",
    "sp_flag_dim",
    "sp_grassmannian_dim",
    "sp_group_dim",
    "sp_orbit_equal",
    "sp_pi",
    "symplectic_direct_sum",
    "symplectic_group_order_formula",
    "sym_double",
    "table_checksums",
    "tits_q",
    "total_sp_flag_dim",
    "__version__",
]
