"""Exact counting of full-shift configurations with a given least period.

For a finite (or finitely generated) group G acting on the functions G -> A
by translation, this package counts the configurations whose stabiliser is
exactly a chosen finite-index subgroup H.  The generic route is Mobius
inversion over the subgroup lattice; closed forms cover cyclic and related
quotients; a brute-force oracle validates everything at small scale.
"""

from .errors import (
    AlphabetTooSmall,
    BudgetExceeded,
    CapExceeded,
    CatalogIncomplete,
    CosetLimitExceeded,
    DivisibilityViolation,
    InputError,
    InvalidPermutation,
    InvalidSubgroup,
    LatticeLimitExceeded,
    LimitError,
    NoIdentity,
    NoInverse,
    NotAChain,
    NotAssociative,
    NotComparable,
    NotLatinSquare,
    NotNormal,
    NotPrime,
    OrderLimitExceeded,
    ParseError,
    PeriodicaError,
    PresentationSyntaxError,
    SingularMatrix,
    UnknownGenerator,
)
from .group_core import (
    FiniteGroup,
    Subgroup,
    SubgroupLattice,
    all_subgroups,
    conjugacy_class_of,
    full_subgroup,
    group_from_cayley_table,
    group_from_permutations,
    interval,
    is_normal,
    make_subgroup,
    mobius,
    normalizer,
    parse_cayley_text,
    parse_permutations_text,
    quotient,
    subgroup_as_group,
    trivial_subgroup,
)
from .counting import (
    AutDescription,
    AutFactor,
    ClassificationHit,
    ClassificationResult,
    CountReport,
    alpha_from_psi,
    aperiodic_necklace_count,
    aut_structure,
    classify_small_alpha,
    fix_count,
    lyndon_words,
    psi,
    psi_chain,
    psi_chain_checked,
    psi_cyclic,
    psi_elementary_p2,
    psi_normal,
    psi_prime_power,
    table_small_values,
)
from .shift_oracle import (
    Configuration,
    ShiftTables,
    brute_orbit_census,
    brute_psi,
    build_shift_tables,
    burnside_orbit_count,
    shift,
    stabilizer,
)
from .fg_groups import (
    CosetTable,
    IntegerMatrix,
    Presentation,
    coset_action_group,
    coset_enumerate,
    hnf_sublattices,
    low_index_subgroups,
    parse_presentation,
    smith_normal_form,
    smith_quotient,
    subgroup_counts_by_index,
)
from .catalog import builtin_group, builtin_names, classification_catalog

__version__ = "0.1.0"
