"""Perfect matchings in k-uniform hypergraphs near the minimum positive codegree threshold."""

from ._backend import BACKEND
from .absorbing import (
    AbsorbParams,
    Absorber,
    AbsorbingStructure,
    absorb,
    absorbing_witness,
    build_absorbing_structure,
    find_absorber_gadget,
    is_absorber,
)
from .almost import greedy_complete, nibble
from .constructions import (
    complete,
    empty,
    extremal_construction,
    extremal_parts,
    from_edges,
    kpartite_restrict,
    planted_extremal,
    random_binomial,
)
from .exact import BudgetExceeded, find_perfect_matching, graph_max_matching, max_matching, max_matching_size
from .extremal import (
    ExtremalWitness,
    default_gamma,
    extremal_perfect_matching,
    find_extremal_set,
    threshold,
    verify_extremal,
)
from .fractional import (
    FarkasCertificate,
    FractionalMatching,
    extremal_set_from_certificate,
    minmax_pair_fractional,
    pair_capped_fractional,
    perfect_fractional_matching,
    spread_fractional,
    uniform_fractional,
    verify_certificate,
)
from .hypergraph import (
    Hypergraph,
    InvalidInput,
    PreconditionError,
    degree,
    degree_lower_bound_check,
    edges_with_two_in,
    extend_candidates,
    isolated_vertices,
    min_codegree,
    min_positive_codegree,
    parse,
    validate_matching,
)
from .pipeline import PipelineConfig, SolveTrace, exhaustive_threshold_check, solve, sweep

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
