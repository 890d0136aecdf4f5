"""Tabulation hashing, minwise sketches, and a statistical verification lab."""

from .errors import (
    AlignmentError,
    ConfigError,
    EmptySetError,
    KeyRangeError,
    StateSpaceError,
    TabSketchError,
    VectorFormatError,
)
from .families import Hasher, make_hasher, parse_family, seed_fingerprint
from .shingle import ShingleConfig, normalize_text, shingle_keys, shingles
from .sketch import (
    BottomQSketch,
    KxMinwiseSketch,
    bottomq_jaccard,
    bottomq_merge,
    bottomq_sketch,
    kx_jaccard,
    kx_merge,
    kx_sketch,
    min_hash_of_set,
)
from .tabcore import (
    MERSENNE61,
    PolyHashParams,
    SimpleTables,
    TwistedTables,
    UniverseSpec,
    fill_poly,
    fill_simple,
    fill_twisted,
    hash_to_unit,
    join_key,
    poly_hash,
    simple_hash,
    split_key,
    twist,
    twisted_group_of,
    twisted_hash,
    twisted_internal_hash,
)
from .vectors import (
    merged_table_entry,
    packaged_golden_path,
    parse_vector_file,
    verify_vector_file,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "ConfigError",
    "EmptySetError",
    "KeyRangeError",
    "StateSpaceError",
    "TabSketchError",
    "VectorFormatError",
    "MERSENNE61",
    "PolyHashParams",
    "SimpleTables",
    "TwistedTables",
    "UniverseSpec",
    "fill_poly",
    "fill_simple",
    "fill_twisted",
    "hash_to_unit",
    "join_key",
    "poly_hash",
    "simple_hash",
    "split_key",
    "twist",
    "twisted_group_of",
    "twisted_hash",
    "twisted_internal_hash",
    "Hasher",
    "make_hasher",
    "parse_family",
    "seed_fingerprint",
    "ShingleConfig",
    "normalize_text",
    "shingles",
    "shingle_keys",
    "BottomQSketch",
    "KxMinwiseSketch",
    "bottomq_jaccard",
    "bottomq_merge",
    "bottomq_sketch",
    "kx_jaccard",
    "kx_merge",
    "kx_sketch",
    "min_hash_of_set",
    "merged_table_entry",
    "packaged_golden_path",
    "parse_vector_file",
    "verify_vector_file",
    "__version__",
]
