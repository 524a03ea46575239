"""Multiple-pattern Cartesian tree matching.

Find every position of an integer text whose window has the same Cartesian
tree as one of a set of integer patterns, using fingerprint filtering with
exact verification.  See the README for the CLI surface.
"""

from .analysis import (
    BoundCheck,
    ProbabilityTable,
    check_probability_bound,
    empirical_match_rate,
    probability_table,
)
from .errors import ConfigurationError, InputError
from .fingerprints import (
    DEFAULT_MODULUS,
    EncodingKind,
    FingerprintConfig,
    binary_encode,
    choose_block_size,
    match_probability,
    pd_encode,
    roll_binary,
)
from .harness import (
    ALGORITHMS,
    BenchConfig,
    BenchRecord,
    LengthSpec,
    SearchOptions,
    SearchResult,
    bench,
    extract_patterns,
    generate,
    load_patterns,
    load_sequence,
    run_search,
)
from .matchers import (
    ASTables,
    MatchHit,
    PreparedPatternSet,
    RKTables,
    WMTables,
    as_preprocess,
    as_search,
    naive_search,
    prepare_patterns,
    rk_preprocess,
    rk_search,
    search_chunked,
    wm_preprocess,
    wm_search,
)
from .representations import (
    CartesianTree,
    binary_representation,
    build_cartesian_tree,
    global_parent,
    min_index,
    parent_distance,
    verify_match,
)

__version__ = "0.1.0"
