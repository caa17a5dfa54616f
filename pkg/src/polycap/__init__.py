"""Exact-arithmetic laboratory for ellipsoid embeddings into polydisks P(1, beta)."""

from .exactnum import MixedRadicandError, QuadNum, quad_sqrt, rational_sqrt, square_free_split
from .cfweights import (
    ContinuedFraction,
    EntryUnderflowError,
    NotCoprimeError,
    cf_eval,
    cf_of_quadratic,
    cf_of_rational,
    cf_shift_entries,
    convergents,
    integral_weights,
    weight_expansion,
    weight_prefix,
)
from .bounds import BoundSample
from .ech import (
    CapacityTable,
    ConvexLatticePath,
    InvalidPathError,
    KZeroError,
    TooLargeError,
    ellipsoid_caps,
    lattice_count,
    lattice_count_bruteforce,
    lower_bound_sweep,
    omega_length,
    polydisk_cap,
    polydisk_cap_bruteforce,
    polydisk_cap_table,
    ratio_at,
    sweep_to_csv,
)
from .perfclass import (
    ClassTriple,
    FamilyData,
    QuasiPerfectClass,
    SeedIncompatibleError,
    STEP_MAIN,
    adjacency,
    blocker_class,
    brahmagupta_shift,
    combine,
    ech_index,
    family_n,
    from_pq,
    inner_family,
    mu,
    mu_at_center,
    outer_family,
    qp_check,
    recurse,
    step_class,
    t_compat,
    triple_identities,
    verify_families,
)
from .staircase import (
    MAIN_BETA,
    AccumulationData,
    RadicandExplosionError,
    acc_point,
    accumulation_data,
    corner_points,
    envelope,
    inner_corners,
    is_above_volume,
    is_blocked,
    verify_alternation,
    verify_cf_recursion,
    verify_closed_forms,
    vol_at_acc,
    volume_curve_decimal,
)
from .atf import (
    AmbiguousHitError,
    AtfNode,
    AtfPolygon,
    ConvexityLostError,
    EmbeddingPreconditionError,
    LabelError,
    NoIntersectionError,
    WordParseError,
    apply_word,
    extract_embedding,
    init_polydisk,
    intersect,
    mutate,
    parse_word,
    to_svg,
    verify_formula_suite,
    verify_full_filling,
    verify_rays,
)
from .report import report_ok

__version__ = "0.1.0"
