"""Unique sink orientations of cubes, seen through their tile sets.

An orientation of the k-cube assigns each edge a direction; it is a
unique sink orientation when every non-empty face has exactly one sink.
Each such orientation corresponds to a set of 2^k pairwise compatible
tiles, words over the digits 0..3, and that tile view is what the
rewriting rules, the transforms, and the samplers in this package
operate on.

The modules split as follows:

- cube: vertices, edges, faces, orientations, the two verifiers
- tiling: tile packing, adjacency, tile sets, the orientation bijection
- rewrite: simple and generalized rewriting rules, validity, application
- transform: products, facets, mirrors, swaps, phases, hypervertices
- enumeration: exhaustive streams, counting, the seeded flip walk
- formats: the line-based text forms used by the command line driver
"""

from .cube import (
    Edge,
    Face,
    Orientation,
    PartialOrientation,
    canonical_orientation,
    combine,
    edge_at,
    flip_edges,
    flippable_edges,
    is_uso,
    neighbor,
    unique_sink,
    vertex_bits,
    vertex_from_bits,
)
from .enumeration import (
    ChainState,
    EnumerationReport,
    MAX_BRUTE_DIM,
    MAX_JOIN_DIM,
    MAX_SAMPLE_DIM,
    RNG_ALGORITHM,
    SplitMix64,
    count_usos,
    enumerate_brute,
    enumerate_join,
    markov_walk,
    sample_markov,
)
from .errors import (
    DimensionError,
    EnumerationLimitError,
    FormatError,
    HypervertexError,
    InvalidRuleError,
    LabellingError,
    NotATilingError,
    NotAnUsoError,
    PhaseSelectionError,
    UsoError,
)
from .formats import (
    read_labels,
    read_orientation,
    read_rule,
    read_tiling,
    write_labels,
    write_orientation,
    write_rule,
    write_tiling,
)
from .rewrite import (
    GeneralizedRule,
    NAMED_RULE_KINDS,
    SimpleRule,
    apply_generalized,
    apply_simple,
    as_generalized,
    frame_tiles,
    named_rule,
    product_labelling,
    product_rule,
    universality_rule,
    validate_generalized,
    validate_simple,
)
from .tiling import (
    PartialTileSet,
    TileSet,
    bow,
    canonical_tiles,
    gk_adjacent,
    is_tiling,
    tile_of,
    tile_pack,
    tile_unpack,
    tiles_from_uso,
    twins,
    uso_from_tiles,
)
from .transform import (
    PHASE_DIM_CAP,
    HypervertexWitness,
    PhasePartition,
    facet,
    flip_dimension,
    hypervertex_check,
    hypervertex_replace,
    inherited,
    mirror,
    partial_swap,
    phase_flip,
    phase_swap,
    phases,
    product,
)

__version__ = "0.1.0"

__all__ = [
    "ChainState",
    "DimensionError",
    "Edge",
    "EnumerationLimitError",
    "EnumerationReport",
    "Face",
    "FormatError",
    "GeneralizedRule",
    "HypervertexError",
    "HypervertexWitness",
    "InvalidRuleError",
    "LabellingError",
    "MAX_BRUTE_DIM",
    "MAX_JOIN_DIM",
    "MAX_SAMPLE_DIM",
    "NAMED_RULE_KINDS",
    "NotATilingError",
    "NotAnUsoError",
    "Orientation",
    "PHASE_DIM_CAP",
    "PartialOrientation",
    "PartialTileSet",
    "PhasePartition",
    "PhaseSelectionError",
    "RNG_ALGORITHM",
    "SimpleRule",
    "SplitMix64",
    "TileSet",
    "UsoError",
    "apply_generalized",
    "apply_simple",
    "as_generalized",
    "bow",
    "canonical_orientation",
    "canonical_tiles",
    "combine",
    "count_usos",
    "edge_at",
    "enumerate_brute",
    "enumerate_join",
    "facet",
    "flip_dimension",
    "flip_edges",
    "flippable_edges",
    "frame_tiles",
    "gk_adjacent",
    "hypervertex_check",
    "hypervertex_replace",
    "inherited",
    "is_tiling",
    "is_uso",
    "markov_walk",
    "mirror",
    "named_rule",
    "neighbor",
    "partial_swap",
    "phase_flip",
    "phase_swap",
    "phases",
    "product",
    "product_labelling",
    "product_rule",
    "read_labels",
    "read_orientation",
    "read_rule",
    "read_tiling",
    "sample_markov",
    "tile_of",
    "tile_pack",
    "tile_unpack",
    "tiles_from_uso",
    "twins",
    "unique_sink",
    "universality_rule",
    "uso_from_tiles",
    "validate_generalized",
    "validate_simple",
    "vertex_bits",
    "vertex_from_bits",
    "write_labels",
    "write_orientation",
    "write_rule",
    "write_tiling",
]
